#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcayley/repring.hpp"

namespace qcayley {

inline constexpr double kDefaultTolProduct = 1e-10;
inline constexpr double kDefaultTolSpectral = 1e-8;

struct RkNorm {
  double value = 1.0;
  double tail_bound = 0.0;  // bound on |log(true) - log(value)|
  long terms = 0;
};

// prod_{i >= k} sqrt(1 - m_l m_{l-1} / (m_{i+1} m_i)).
RkNorm rk_norm(int k, int l, const DimSequence& dims, double tol = kDefaultTolProduct);

// Closed form for m1 = 2: sqrt(k!(k+1)! / ((k-l)!(k+l+1)!)).
double rk_norm_exceptional_closed(int k, int l);

struct ShiftModel {
  DimSequence dims;
  int l = 1;
  std::vector<double> r_weights;  // indexed by k, zero below l
  std::vector<double> s_weights;

  static ShiftModel build(const DimSequence& dims, int l, int kmax);
};

struct LambdaMatrix {
  int l = 1;
  int N = 1;
  std::vector<double> lambda;  // lambda_{j,l} for j = l..N
  Eigen::MatrixXd entries;     // rows/cols i, j in [l, N]

  double at(int i, int j) const;
};

// lambda_{j,l} = rk_norm(j+1, l) sqrt(m_l m_{l-1} / (m_{j+1} m_j)) for j = l..N.
std::vector<double> lambda_weights(int l, const DimSequence& dims, int N, double tol = kDefaultTolProduct);
LambdaMatrix lambda_matrix(int l, const DimSequence& dims, int N, double tol = kDefaultTolProduct);

inline constexpr long kPowerIterationCap = 200000;
double lambda_norm(const LambdaMatrix& lm, double tol = kDefaultTolProduct, long max_iter = kPowerIterationCap);
double hilbert_norm(int N, double tol = kDefaultTolSpectral, long max_iter = kPowerIterationCap);

enum class KerRsCriterion { Closed, DenseStrict, Classical };
const char* criterion_name(KerRsCriterion c);
KerRsCriterion ker_rs_criterion(const FreeProduct& group);

struct EdgeCoefficients {
  int l = 1;
  int block_id = 0;
  std::vector<std::pair<int, double>> support;  // (k, value), k >= l
};
EdgeCoefficients parse_edge_coefficients(std::string_view json_text);

struct MembershipResult {
  bool in_ker_rs = true;
  double rs_value = 0.0;
  std::vector<double> partial_norms;  // k = l..kmax
};
MembershipResult membership_test(const EdgeCoefficients& zeta, const ShiftModel& model, int kmax,
                                 double tol = kDefaultTolProduct);

// max_k |sum_{i=l}^{k-1} lambda_i^2 + rk(l,l)^2 - rk(k,l)^2| over k in [l, N].
double co_isometry_check(const ShiftModel& model, int N, double tol = kDefaultTolProduct);

}  // namespace qcayley
