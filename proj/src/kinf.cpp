#include "qcayley/kinf.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "qcayley/closedform.hpp"
#include "qcayley/error.hpp"

namespace qcayley {

namespace {

constexpr long kProductTermCap = 10000000;
constexpr long kExceptionalTerms = 4096;

// log m_i for any i >= 0: forward recursion while finite, closed form past that.
class LogDims {
 public:
  explicit LogDims(double m1) : m1_(m1), exceptional_(is_exceptional_m1(m1)) {
    if (!exceptional_) {
      a_ = growth_rate(m1);
      log_a_ = std::log(a_);
      log_gap_ = 0.5 * std::log((m1 - 2.0) * (m1 + 2.0));  // log(a - 1/a)
    }
    prev_ = 1.0;
    cur_ = m1;
    logs_ = {0.0, std::log(m1)};
  }

  double operator()(int i) {
    if (i < 0) return -std::numeric_limits<double>::infinity();
    if (exceptional_) return std::log(static_cast<double>(i) + 1.0);
    while (static_cast<int>(logs_.size()) <= i) {
      int j = static_cast<int>(logs_.size());
      if (recursing_) {
        double next = m1_ * cur_ - prev_;
        if (next < 1e300) {
          prev_ = cur_;
          cur_ = next;
          logs_.push_back(std::log(next));
          continue;
        }
        recursing_ = false;
      }
      logs_.push_back((j + 1) * log_a_ + std::log1p(-std::exp(-2.0 * (j + 1) * log_a_)) - log_gap_);
    }
    return logs_[static_cast<std::size_t>(i)];
  }

  // x_i = m_l m_{l-1} / (m_{i+1} m_i)
  double x(int i, int l) {
    if (l == 0) return 0.0;
    return std::exp((*this)(l) + (*this)(l - 1) - (*this)(i + 1) - (*this)(i));
  }

  bool exceptional() const { return exceptional_; }
  double a() const { return exceptional_ ? 1.0 : a_; }

 private:
  double m1_;
  bool exceptional_;
  double a_ = 1.0, log_a_ = 0.0, log_gap_ = 0.0;
  double prev_, cur_;
  bool recursing_ = true;
  std::vector<double> logs_;
};

// log of prod_{i >= N} (1 - x_i) for m1 = 2, by telescoping.
double exceptional_log_tail(long N, int l) {
  double n = static_cast<double>(N);
  return std::lgamma(n + 1) + std::lgamma(n + 2) - std::lgamma(n - l + 1) - std::lgamma(n + l + 2);
}

void check_kl(int k, int l) {
  if (l < 1 || k < l) fail(ErrorCode::IndexOutOfRange, "need 1 <= l <= k");
}

}  // namespace

RkNorm rk_norm(int k, int l, const DimSequence& dims, double tol) {
  check_kl(k, l);
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  LogDims lm(dims.m1);
  RkNorm out;
  double log_sum = 0.0;  // sum of log(1 - x_i)
  long i = k;
  if (lm.exceptional()) {
    for (; i < static_cast<long>(k) + kExceptionalTerms; ++i) {
      double x = lm.x(static_cast<int>(i), l);
      if (x < tol) break;
      log_sum += std::log1p(-x);
    }
    log_sum += exceptional_log_tail(i, l);
    out.terms = i - k;
    out.tail_bound = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(out.terms + 1);
    out.value = std::exp(0.5 * log_sum);
    return out;
  }
  const double shrink = 1.0 - 1.0 / (lm.a() * lm.a());
  for (;; ++i) {
    if (i - k > kProductTermCap)
      fail(ErrorCode::TolTooSmall, "rk_norm needs more than " + std::to_string(kProductTermCap) + " terms");
    double x = lm.x(static_cast<int>(i), l);
    double bound = 0.5 * x / ((1.0 - x) * shrink);
    if (bound < tol) {
      out.tail_bound = bound;
      break;
    }
    log_sum += std::log1p(-x);
  }
  out.terms = i - k;
  out.value = std::exp(0.5 * log_sum);
  return out;
}

double rk_norm_exceptional_closed(int k, int l) {
  check_kl(k, l);
  return std::exp(0.5 * exceptional_log_tail(k, l));
}

ShiftModel ShiftModel::build(const DimSequence& dims, int l, int kmax) {
  if (l < 1) fail(ErrorCode::IndexOutOfRange, "l must be positive");
  if (kmax > dims.kmax()) fail(ErrorCode::IndexOutOfRange, "kmax beyond dimension sequence");
  ShiftModel s;
  s.dims = dims;
  s.l = l;
  s.r_weights.assign(static_cast<std::size_t>(std::max(kmax, 0)) + 1, 0.0);
  s.s_weights = s.r_weights;
  for (int k = l; k <= kmax; ++k) {
    s.r_weights[k] = theta_block_norm(k, l, {1, -1}, {1, -1}, dims);
    s.s_weights[k] = theta_block_norm(k, l, {1, 1}, {1, -1}, dims);
  }
  return s;
}

double LambdaMatrix::at(int i, int j) const {
  if (i < l || j < l || i > N || j > N) fail(ErrorCode::IndexOutOfRange, "Lambda index outside [l, N]");
  return entries(i - l, j - l);
}

std::vector<double> lambda_weights(int l, const DimSequence& dims, int N, double tol) {
  if (l < 1 || N < l) fail(ErrorCode::IndexOutOfRange, "need 1 <= l <= N");
  LogDims lm(dims.m1);
  // rk(j+1) = rk(j+2) sqrt(1 - x_{j+1}), downward from rk(N+1).
  std::vector<double> out(static_cast<std::size_t>(N - l) + 1);
  double log_rk = std::log(rk_norm(N + 1, l, dims, tol).value);
  for (int j = N; j >= l; --j) {
    out[j - l] = std::exp(log_rk + 0.5 * std::log(lm.x(j, l)));
    log_rk += 0.5 * std::log1p(-lm.x(j, l));
  }
  return out;
}

LambdaMatrix lambda_matrix(int l, const DimSequence& dims, int N, double tol) {
  LambdaMatrix lm;
  lm.l = l;
  lm.N = N;
  lm.lambda = lambda_weights(l, dims, N, tol);
  const int n = N - l + 1;
  lm.entries = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) lm.entries(i, j) = lm.lambda[j];
  return lm;
}

double lambda_norm(const LambdaMatrix& lm, double tol, long max_iter) {
  const auto& lam = lm.lambda;
  const std::size_t n = lam.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty Lambda matrix");
  // (Lambda x)_i = sum_{j >= i} lambda_j x_j, (Lambda^T y)_j = lambda_j sum_{i <= j} y_i
  Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)).normalized();
  Eigen::VectorXd y(x.size()), z(x.size());
  double prev = 0.0;
  for (long it = 0; it < max_iter; ++it) {
    double acc = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      acc += lam[i] * x(i);
      y(i) = acc;
    }
    acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += y(j);
      z(j) = lam[j] * acc;
    }
    double rayleigh = x.dot(z);  // ||Lambda x||^2
    double zn = z.norm();
    if (zn == 0.0) return 0.0;
    x = z / zn;
    double est = std::sqrt(rayleigh);
    if (it > 0 && std::abs(est - prev) <= tol * est) return est;
    prev = est;
  }
  fail(ErrorCode::NoConvergence, "power iteration for Lambda did not converge");
}

double hilbert_norm(int N, double tol, long max_iter) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "N must be positive");
  Eigen::MatrixXd H(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) H(i, j) = 1.0 / (i + j + 1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(N).normalized();
  double prev = 0.0;
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd y = H * x;
    double est = x.dot(y);
    x = y.normalized();
    if (it > 0 && std::abs(est - prev) <= tol * est) {
      // one more Rayleigh quotient with the refined vector
      return x.dot(H * x);
    }
    prev = est;
  }
  fail(ErrorCode::NoConvergence, "power iteration for the Hilbert matrix did not converge");
}

const char* criterion_name(KerRsCriterion c) {
  switch (c) {
    case KerRsCriterion::Closed: return "Closed";
    case KerRsCriterion::DenseStrict: return "DenseStrict";
    case KerRsCriterion::Classical: return "Classical";
  }
  return "?";
}

KerRsCriterion ker_rs_criterion(const FreeProduct& group) {
  if (group.all_dimension_one()) return KerRsCriterion::Classical;
  for (const auto& f : group.factors()) {
    if (f.kind() == FactorKind::Cyclic) continue;
    if (f.exceptional()) return KerRsCriterion::DenseStrict;
  }
  return KerRsCriterion::Closed;
}

EdgeCoefficients parse_edge_coefficients(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("edge coefficients: ") + e.what());
  }
  EdgeCoefficients z;
  try {
    z.l = j.at("l").get<int>();
    if (j.contains("block")) z.block_id = j.at("block").get<int>();
    for (const auto& entry : j.at("support")) {
      if (!entry.is_array() || entry.size() != 2) fail(ErrorCode::ParseError, "support entries must be [k, value]");
      z.support.emplace_back(entry[0].get<int>(), entry[1].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("edge coefficients: ") + e.what());
  }
  return z;
}

MembershipResult membership_test(const EdgeCoefficients& zeta, const ShiftModel& model, int kmax, double tol) {
  const int l = model.l;
  if (zeta.l != l) fail(ErrorCode::InvalidArgument, "edge coefficients and shift model disagree on l");
  if (kmax < l) fail(ErrorCode::IndexOutOfRange, "kmax below l");
  std::vector<double> z(static_cast<std::size_t>(kmax - l) + 1, 0.0);
  for (const auto& [k, v] : zeta.support) {
    if (k > kmax) fail(ErrorCode::SupportExceedsKmax, "support index " + std::to_string(k) + " exceeds kmax");
    if (k < l) fail(ErrorCode::IndexOutOfRange, "support index " + std::to_string(k) + " below l");
    z[k - l] += v;
  }
  const auto lam = lambda_weights(l, model.dims, kmax, tol);

  MembershipResult out;
  out.partial_norms.assign(z.size(), 0.0);
  double tail = 0.0, scale = 0.0;
  for (std::size_t i = z.size(); i-- > 0;) {
    tail += lam[i] * z[i];
    scale += std::abs(lam[i] * z[i]);
    out.partial_norms[i] = tail;
  }
  out.rs_value = tail;
  out.in_ker_rs = std::abs(tail) <= tol * std::max(1.0, scale);
  for (std::size_t i = 0; i < z.size(); ++i) {
    double p = out.partial_norms[i];
    out.partial_norms[i] =
        std::abs(p) <= tol * std::max(1.0, scale) ? 0.0 : std::abs(p) / rk_norm(l + static_cast<int>(i), l, model.dims, tol).value;
  }
  return out;
}

double co_isometry_check(const ShiftModel& model, int N, double tol) {
  const int l = model.l;
  if (N < l) fail(ErrorCode::IndexOutOfRange, "N below l");
  const auto lam = lambda_weights(l, model.dims, N, tol);
  const double base = std::pow(rk_norm(l, l, model.dims, tol).value, 2);
  double partial = 0.0, worst = 0.0;
  for (int k = l; k <= N; ++k) {
    double rk = rk_norm(k, l, model.dims, tol).value;
    worst = std::max(worst, std::abs(partial + base - rk * rk));
    partial += lam[k - l] * lam[k - l];
  }
  return worst;
}

}  // namespace qcayley
