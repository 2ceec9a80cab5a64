#include "qcayley/repring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qcayley/error.hpp"

namespace qcayley {

namespace {

constexpr double kExceptionalTol = 1e-12;
constexpr double kStructureTol = 1e-10;

Eigen::MatrixXcd antidiag_q(double q) {
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(2, 2);
  Q(0, 1) = std::sqrt(q);
  Q(1, 0) = -1.0 / std::sqrt(q);
  return Q;
}

Eigen::MatrixXcd diag_q(double q) {
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(2, 2);
  Q(0, 0) = std::sqrt(q);
  Q(1, 1) = 1.0 / std::sqrt(q);
  return Q;
}

void check_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) fail(ErrorCode::InvalidFactor, "q must be a positive real");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "vector dimension exceeds 64 bits");
  return r;
}

}  // namespace

const char* kind_name(FactorKind kind) {
  switch (kind) {
    case FactorKind::Orthogonal: return "orthogonal";
    case FactorKind::Unitary: return "unitary";
    case FactorKind::Cyclic: return "cyclic";
  }
  return "?";
}

std::strong_ordering operator<=>(const IrrWord& a, const IrrWord& b) {
  if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    if (auto c = a.letters[i] <=> b.letters[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

FactorSpec FactorSpec::from_matrix(FactorKind kind, const Eigen::MatrixXcd& Q, int factor_id) {
  if (Q.rows() != Q.cols()) fail(ErrorCode::InvalidFactor, "matrix Q must be square");
  if (Q.rows() < 2) fail(ErrorCode::InvalidFactor, "matrix Q must be at least 2x2");
  if (!Q.allFinite()) fail(ErrorCode::InvalidFactor, "matrix Q has non-finite entries");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Q);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0 || s(s.size() - 1) <= 1e-12 * s(0)) fail(ErrorCode::SingularQ, "matrix Q is not invertible");

  double t1 = 0.0, t2 = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    t1 += s(i) * s(i);
    t2 += 1.0 / (s(i) * s(i));
  }

  FactorSpec f;
  f.kind_ = kind;
  f.factor_id_ = factor_id;
  f.Q_ = Q * std::pow(t2 / t1, 0.25);
  f.m1_ = std::sqrt(t1 * t2);

  if (kind == FactorKind::Orthogonal) {
    Eigen::MatrixXcd P = f.Q_ * f.Q_.conjugate();
    std::complex<double> c = P(0, 0);
    double scale = std::max(1.0, P.norm());
    if ((P - c * Eigen::MatrixXcd::Identity(Q.rows(), Q.rows())).norm() > kStructureTol * scale)
      fail(ErrorCode::InvalidFactor, "Q conj(Q) is not a multiple of the identity");
    if (std::abs(c.imag()) > kStructureTol || std::abs(std::abs(c.real()) - 1.0) > 1e-8)
      fail(ErrorCode::InvalidFactor, "Q conj(Q) is not a real multiple of the identity");
    f.orthogonal_sign_ = c.real() > 0 ? 1 : -1;
  }
  if (is_exceptional_m1(f.m1_)) {
    f.m1_ = 2.0;
    f.exceptional_ = true;
  }
  return f;
}

FactorSpec FactorSpec::orthogonal(const Eigen::MatrixXcd& Q, int factor_id) {
  return from_matrix(FactorKind::Orthogonal, Q, factor_id);
}

FactorSpec FactorSpec::orthogonal_q(double q, int factor_id) {
  check_q(q);
  FactorSpec f = from_matrix(FactorKind::Orthogonal, antidiag_q(q), factor_id);
  f.q_param_ = q;
  f.m1_ = q + 1.0 / q;
  f.exceptional_ = is_exceptional_m1(f.m1_);
  if (f.exceptional_) f.m1_ = 2.0;
  return f;
}

FactorSpec FactorSpec::unitary(const Eigen::MatrixXcd& Q, int factor_id) {
  return from_matrix(FactorKind::Unitary, Q, factor_id);
}

FactorSpec FactorSpec::unitary_q(double q, int factor_id) {
  check_q(q);
  FactorSpec f = from_matrix(FactorKind::Unitary, diag_q(q), factor_id);
  f.q_param_ = q;
  f.m1_ = q + 1.0 / q;
  f.exceptional_ = is_exceptional_m1(f.m1_);
  if (f.exceptional_) f.m1_ = 2.0;
  return f;
}

FactorSpec FactorSpec::cyclic(int order, int factor_id) {
  if (order < 0) fail(ErrorCode::InvalidFactor, "cyclic order must be nonnegative");
  if (order == 1) fail(ErrorCode::InvalidFactor, "cyclic order 1 is the trivial group");
  FactorSpec f;
  f.kind_ = FactorKind::Cyclic;
  f.factor_id_ = factor_id;
  f.cyclic_order_ = order;
  f.m1_ = 1.0;
  return f;
}

FactorSpec FactorSpec::with_id(int factor_id) const {
  FactorSpec f = *this;
  f.factor_id_ = factor_id;
  return f;
}

std::vector<Direction> FactorSpec::directions() const {
  std::vector<Direction> out;
  out.push_back({factor_id_, Letter::g, n()});
  if (kind_ == FactorKind::Unitary || (kind_ == FactorKind::Cyclic && cyclic_order_ != 2))
    out.push_back({factor_id_, Letter::g_bar, n()});
  return out;
}

double DimSequence::at(int k) const {
  if (k == -1) return 0.0;
  if (k < -1 || k > kmax()) fail(ErrorCode::IndexOutOfRange, "dimension index " + std::to_string(k) + " outside [-1, " + std::to_string(kmax()) + "]");
  return m[static_cast<std::size_t>(k)];
}

bool is_exceptional_m1(double m1) { return std::abs(m1 - 2.0) <= kExceptionalTol; }

double growth_rate(double m1) {
  if (is_exceptional_m1(m1)) return 1.0;
  if (m1 < 2.0) fail(ErrorCode::InvalidArgument, "m1 must be at least 2");
  return 0.5 * (m1 + std::sqrt((m1 - 2.0) * (m1 + 2.0)));
}

DimSequence dim_sequence_from_m1(double m1, int kmax, int n) {
  if (kmax < 0) fail(ErrorCode::InvalidArgument, "kmax must be nonnegative");
  if (!std::isfinite(m1) || m1 < 2.0 - kExceptionalTol) fail(ErrorCode::InvalidArgument, "m1 must be finite and at least 2");
  DimSequence ds;
  ds.exceptional = is_exceptional_m1(m1);
  ds.m1 = ds.exceptional ? 2.0 : m1;
  ds.growth_rate_a = growth_rate(ds.m1);
  ds.n = n;
  ds.m.resize(static_cast<std::size_t>(kmax) + 1);
  ds.m[0] = 1.0;
  if (kmax >= 1) ds.m[1] = ds.m1;
  for (int k = 1; k < kmax; ++k) {
    ds.m[k + 1] = ds.exceptional ? static_cast<double>(k + 2) : ds.m1 * ds.m[k] - ds.m[k - 1];
  }
  if (n >= 2) {
    ds.d.push_back(1);
    if (kmax >= 1) ds.d.push_back(static_cast<std::uint64_t>(n));
    for (int k = 1; k < kmax; ++k) {
      std::uint64_t next = 0;
      if (__builtin_mul_overflow(static_cast<std::uint64_t>(n), ds.d[k], &next)) break;
      ds.d.push_back(next - ds.d[k - 1]);
    }
  }
  return ds;
}

DimSequence dim_sequence(const FactorSpec& factor, int kmax) {
  if (factor.kind() == FactorKind::Cyclic)
    fail(ErrorCode::InvalidArgument, "cyclic factors have no alternating dimension sequence");
  return dim_sequence_from_m1(factor.m1(), kmax, factor.n());
}

FreeProduct::FreeProduct(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) fail(ErrorCode::InvalidArgument, "factor list is empty");
  std::vector<int> ids;
  for (const auto& f : factors_) ids.push_back(f.factor_id());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    fail(ErrorCode::InvalidArgument, "duplicate factor id");
  std::sort(factors_.begin(), factors_.end(),
            [](const FactorSpec& a, const FactorSpec& b) { return a.factor_id() < b.factor_id(); });
}

std::size_t FreeProduct::index_of(int factor_id) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].factor_id() == factor_id) return i;
  fail(ErrorCode::UnknownDirection, "no factor with id " + std::to_string(factor_id));
}

const FactorSpec& FreeProduct::factor(int factor_id) const { return factors_[index_of(factor_id)]; }

bool FreeProduct::all_dimension_one() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const FactorSpec& f) { return f.kind() == FactorKind::Cyclic; });
}

std::vector<Direction> FreeProduct::directions() const {
  std::vector<Direction> out;
  for (const auto& f : factors_) {
    auto ds = f.directions();
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

Direction FreeProduct::direction(int factor_id, Letter letter) const {
  return canonical({factor_id, letter, 0});
}

Direction FreeProduct::canonical(const Direction& d) const {
  const FactorSpec& f = factor(d.factor_id);
  Direction out{d.factor_id, d.letter, f.n()};
  if (f.kind() == FactorKind::Orthogonal) out.letter = Letter::g;
  if (f.kind() == FactorKind::Cyclic && f.cyclic_order() == 2) out.letter = Letter::g;
  return out;
}

Direction FreeProduct::conjugate(const Direction& d) const {
  Direction c = canonical(d);
  const FactorSpec& f = factor(d.factor_id);
  if (f.kind() == FactorKind::Orthogonal) return c;
  if (f.kind() == FactorKind::Cyclic && f.cyclic_order() == 2) return c;
  c.letter = c.letter == Letter::g ? Letter::g_bar : Letter::g;
  return c;
}

IrrWord FreeProduct::reduce_word(const std::vector<Direction>& letters) const {
  // Cyclic runs are collected as exponents, other letters pass through.
  struct Item {
    Direction dir;
    bool cyclic;
    long long exponent;
  };
  std::vector<Item> stack;
  for (const auto& raw : letters) {
    Direction d = canonical(raw);
    const FactorSpec& f = factor(d.factor_id);
    if (f.kind() != FactorKind::Cyclic) {
      stack.push_back({d, false, 0});
      continue;
    }
    long long step = d.letter == Letter::g ? 1 : -1;
    if (!stack.empty() && stack.back().cyclic && stack.back().dir.factor_id == d.factor_id) {
      stack.back().exponent += step;
    } else {
      stack.push_back({d, true, step});
    }
    long long N = f.cyclic_order();
    Item& top = stack.back();
    if (N > 0) top.exponent = ((top.exponent % N) + N) % N;
    if (top.exponent == 0) stack.pop_back();
  }

  IrrWord out;
  for (const auto& item : stack) {
    if (!item.cyclic) {
      out.letters.push_back(item.dir);
      continue;
    }
    long long N = factor(item.dir.factor_id).cyclic_order();
    long long e = item.exponent;
    Letter letter = Letter::g;
    long long count = e;
    if (N == 0) {
      if (e < 0) {
        letter = Letter::g_bar;
        count = -e;
      }
    } else if (2 * e > N) {
      letter = Letter::g_bar;
      count = N - e;
    }
    for (long long i = 0; i < count; ++i) out.letters.push_back({item.dir.factor_id, letter, 1});
  }
  return out;
}

Decomposition FreeProduct::fuse_generator(const IrrWord& alpha, const Direction& gamma) const {
  Direction g = canonical(gamma);
  Decomposition out;
  if (g.vector_dim > 1) {
    IrrWord plus = alpha;
    plus.letters.push_back(g);
    out.plus_part = std::move(plus);
    if (!alpha.empty() && alpha.back() == conjugate(g)) {
      IrrWord minus = alpha;
      minus.letters.pop_back();
      out.minus_part = std::move(minus);
    }
    return out;
  }
  std::vector<Direction> letters = alpha.letters;
  letters.push_back(g);
  IrrWord w = reduce_word(letters);
  if (w.size() == alpha.size() + 1)
    out.plus_part = std::move(w);
  else
    out.minus_part = std::move(w);
  return out;
}

IrrWord FreeProduct::conjugate(const IrrWord& alpha) const {
  std::vector<Direction> letters;
  letters.reserve(alpha.size());
  for (auto it = alpha.letters.rbegin(); it != alpha.letters.rend(); ++it) letters.push_back(conjugate(*it));
  return reduce_word(letters);
}

std::vector<Run> FreeProduct::runs(const IrrWord& alpha) const {
  std::vector<Run> out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const Direction& d = alpha.letters[i];
    const FactorSpec& f = factor(d.factor_id);
    bool extend = false;
    if (!out.empty() && out.back().factor_id == d.factor_id && i > 0) {
      const Direction& prev = alpha.letters[i - 1];
      switch (f.kind()) {
        case FactorKind::Orthogonal: extend = true; break;
        case FactorKind::Unitary: extend = prev.letter != d.letter; break;
        case FactorKind::Cyclic: extend = true; break;
      }
    }
    if (extend)
      ++out.back().length;
    else
      out.push_back({d.factor_id, i, 1});
  }
  return out;
}

double FreeProduct::quantum_dim(const IrrWord& alpha) const {
  double M = 1.0;
  for (const Run& r : runs(alpha)) {
    const FactorSpec& f = factor(r.factor_id);
    if (f.kind() == FactorKind::Cyclic) continue;
    M *= dim_sequence_from_m1(f.m1(), static_cast<int>(r.length)).m.back();
  }
  return M;
}

std::uint64_t FreeProduct::vector_dim(const IrrWord& alpha) const {
  std::uint64_t D = 1;
  for (const Run& r : runs(alpha)) {
    const FactorSpec& f = factor(r.factor_id);
    if (f.kind() == FactorKind::Cyclic) continue;
    auto ds = dim_sequence_from_m1(f.m1(), static_cast<int>(r.length), f.n());
    if (ds.d.size() <= r.length) fail(ErrorCode::Overflow, "vector dimension exceeds 64 bits");
    D = checked_mul(D, ds.d[r.length]);
  }
  return D;
}

std::string format_direction(const Direction& d) {
  return "f" + std::to_string(d.factor_id) + (d.letter == Letter::g ? ":g" : ":G");
}

std::string format_word(const IrrWord& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += format_direction(w.letters[i]);
  }
  return out;
}

IrrWord FreeProduct::parse_word(std::string_view text) const {
  if (text == "e" || text.empty()) return {};
  std::vector<Direction> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string_view tok = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    std::size_t colon = tok.find(':');
    if (tok.size() < 4 || tok[0] != 'f' || colon == std::string_view::npos || colon + 2 != tok.size())
      fail(ErrorCode::ParseError, "bad letter '" + std::string(tok) + "'");
    std::string id_text(tok.substr(1, colon - 1));
    char* end = nullptr;
    long id = std::strtol(id_text.c_str(), &end, 10);
    if (id_text.empty() || *end != '\0') fail(ErrorCode::ParseError, "bad factor id in '" + std::string(tok) + "'");
    char l = tok[colon + 1];
    if (l != 'g' && l != 'G') fail(ErrorCode::ParseError, "bad letter in '" + std::string(tok) + "'");
    letters.push_back(canonical({static_cast<int>(id), l == 'g' ? Letter::g : Letter::g_bar, 0}));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  IrrWord w = reduce_word(letters);
  if (w.letters != letters) fail(ErrorCode::ParseError, "word '" + std::string(text) + "' is not reduced");
  return w;
}

}  // namespace qcayley
