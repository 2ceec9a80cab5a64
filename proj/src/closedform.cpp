#include "qcayley/closedform.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qcayley/cayley.hpp"
#include "qcayley/error.hpp"

namespace qcayley {

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::IndexOutOfRange, what);
}

void check_sign(int s) {
  if (s != 1 && s != -1) fail(ErrorCode::InvalidArgument, "sign must be +1 or -1");
}

double sqrt_clamped(double x) { return std::sqrt(std::max(0.0, x)); }

}  // namespace

CoeffMatrix fusion_coeffs(int p, int p_prime, const DimSequence& dims, int sign) {
  check_sign(sign);
  need(p >= 0 && p_prime >= 0 && p <= dims.kmax() && p_prime <= dims.kmax(), "fusion_coeffs: p, p' outside [0, kmax]");
  CoeffMatrix A;
  A.p = p;
  A.p_prime = p_prime;
  A.sign = sign;
  A.entries.resize(p + 1, p_prime + 1);
  const double denom = dims.at(p) * dims.at(p_prime);
  for (int l = 0; l <= p; ++l)
    for (int lp = 0; lp <= p_prime; ++lp)
      A.entries(l, lp) = ((l + lp) % 2 ? sign : 1) * dims.at(p - l) * dims.at(p_prime - lp) / denom;
  return A;
}

double polar_norm(int p, int p_prime, int q, const DimSequence& dims) {
  need(p >= 0 && p_prime >= 0, "polar_norm: negative index");
  need(q >= 0 && q <= std::min(p, p_prime), "polar_norm: q outside [0, min(p, p')]");
  need(p + 1 <= dims.kmax() && p_prime <= dims.kmax(), "polar_norm: index beyond kmax");
  const auto& m = dims;
  return (m.at(p + 1) * m.at(p_prime) - m.at(p - q) * m.at(p_prime - q - 1)) / (m.at(p) * m.at(p_prime));
}

double angle1_norm(int k, int l, const DimSequence& dims) {
  need(k >= 1 && l >= 0 && l <= k, "angle1_norm: need 0 <= l <= k, k >= 1");
  need(k <= dims.kmax(), "angle1_norm: k beyond kmax");
  return sqrt_clamped(1.0 - dims.at(l) * dims.at(l - 1) / (dims.at(k) * dims.at(k - 1)));
}

double angle2_norm(int k, int k_prime, const DimSequence& dims) {
  need(k >= 1 && k_prime >= 1, "angle2_norm: need k, k' >= 1");
  need(k + k_prime - 1 <= dims.kmax(), "angle2_norm: k + k' - 1 beyond kmax");
  return sqrt_clamped(1.0 - dims.at(k_prime - 1) / (dims.at(k + k_prime - 1) * dims.at(k)));
}

double theta_block_norm(int k, int l, SignPair eps1, SignPair eps2, const DimSequence& dims) {
  for (int s : {eps1[0], eps1[1], eps2[0], eps2[1]}) check_sign(s);
  if (k < 1 || l < 1 || l > k) return 0.0;
  if (eps2[1] != -eps1[0]) return 0.0;
  need(k <= dims.kmax(), "theta_block_norm: k beyond kmax");
  const double x = dims.at(l) * dims.at(l - 1) / (dims.at(k) * dims.at(k - 1));
  if (eps1[0] * eps1[1] != eps2[0] * eps2[1]) return sqrt_clamped(x);
  return sqrt_clamped(1.0 - x);
}

double target_norm(const FreeProduct& group, const IrrWord& alpha, const IrrWord& beta) {
  std::vector<Direction> letters = alpha.letters;
  letters.insert(letters.end(), beta.letters.begin(), beta.letters.end());
  IrrWord delta = group.reduce_word(letters);
  if (delta.size() != alpha.size() + beta.size())
    fail(ErrorCode::NoLengthAdditiveSubobject,
         format_word(alpha) + " (x) " + format_word(beta) + " has no subobject of length " +
             std::to_string(alpha.size() + beta.size()));
  return std::sqrt(group.quantum_dim(alpha) * group.quantum_dim(beta) / group.quantum_dim(delta));
}

double commutator_angle(int k, const DimSequence& dims) {
  need(k >= 1 && k <= dims.kmax(), "commutator_angle: k outside [1, kmax]");
  return 1.0 / dims.at(k);
}

double commutator_ext_bound(int k, int k_prime, const DimSequence& dims) {
  need(k >= 1 && k_prime >= 1, "commutator_ext_bound: need k, k' >= 1");
  need(k + k_prime - 1 <= dims.kmax(), "commutator_ext_bound: k + k' - 1 beyond kmax");
  return std::sqrt(dims.at(k_prime - 1) / (dims.at(k + k_prime - 1) * dims.at(k)));
}

double f0_norm(const FreeProduct& group, const IrrWord& alpha) {
  const double Ma = group.quantum_dim(alpha);
  double sum = 0.0;
  for (const auto& [b1, b2] : ascending_splittings(alpha))
    sum += group.quantum_dim(b1) * group.quantum_dim(b2) / Ma;
  return sum;
}

std::vector<double> f_sequence(const DimSequence& dims, int kmax) {
  need(kmax >= 0 && kmax <= dims.kmax(), "f_sequence: kmax beyond dimension sequence");
  std::vector<double> f(static_cast<std::size_t>(kmax) + 1);
  for (int i = 0; i <= kmax; ++i) {
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += dims.at(j) * dims.at(i - j);
    f[i] = s / dims.at(i);
  }
  return f;
}

BoundedDiff f_sequence_bounded_diff(const DimSequence& dims, int kmax) {
  if (dims.exceptional) fail(ErrorCode::ExceptionalCase, "f-sequence differences are unbounded when m1 = 2");
  need(kmax >= 1, "f_sequence_bounded_diff: kmax must be at least 1");
  BoundedDiff out;
  out.f = f_sequence(dims, kmax);
  out.max_diff = 0.0;
  out.sup_index = 0;
  for (int i = 0; i < kmax; ++i) {
    double d = out.f[i + 1] - out.f[i];
    out.diffs.push_back(d);
    if (std::abs(d) > out.max_diff) {
      out.max_diff = std::abs(d);
      out.sup_index = i;
    }
  }
  return out;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void NormTable::add(std::vector<int> idx, double value) {
  indices.push_back(std::move(idx));
  values.push_back(value);
}

std::string NormTable::to_csv() const {
  std::ostringstream os;
  for (const auto& name : index_names) os << name << ',';
  os << "value,formula_id\n";
  for (std::size_t r = 0; r < values.size(); ++r) {
    for (int i : indices[r]) os << i << ',';
    os << format_real(values[r]) << ',' << formula_id << '\n';
  }
  return os.str();
}

std::string NormTable::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["formula_id"] = formula_id;
  j["index_names"] = index_names;
  j["rows"] = nlohmann::json::array();
  for (std::size_t r = 0; r < values.size(); ++r)
    j["rows"].push_back({{"indices", indices[r]}, {"value", values[r]}});
  return j.dump(2);
}

}  // namespace qcayley
