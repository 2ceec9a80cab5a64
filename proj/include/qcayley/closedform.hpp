#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcayley/repring.hpp"

namespace qcayley {

struct CoeffMatrix {
  int p = 0;
  int p_prime = 0;
  int sign = -1;
  Eigen::MatrixXd entries;  // (p+1) x (p'+1)
};

// a_{l,l'} = sign^{l+l'} m_{p-l} m_{p'-l'} / (m_p m_{p'}).
CoeffMatrix fusion_coeffs(int p, int p_prime, const DimSequence& dims, int sign);

// Squared norm of T restricted to the alpha_{p+p'-2q} component.
double polar_norm(int p, int p_prime, int q, const DimSequence& dims);

double angle1_norm(int k, int l, const DimSequence& dims);
double angle2_norm(int k, int k_prime, const DimSequence& dims);

using SignPair = std::array<int, 2>;
double theta_block_norm(int k, int l, SignPair eps1, SignPair eps2, const DimSequence& dims);

// Requires concatenation of alpha and beta to be reduced and length additive.
double target_norm(const FreeProduct& group, const IrrWord& alpha, const IrrWord& beta);

double commutator_angle(int k, const DimSequence& dims);
double commutator_ext_bound(int k, int k_prime, const DimSequence& dims);

double f0_norm(const FreeProduct& group, const IrrWord& alpha);
// f_i for the alternating words alpha_i of one factor, i = 0..kmax.
std::vector<double> f_sequence(const DimSequence& dims, int kmax);

struct BoundedDiff {
  double max_diff;
  int sup_index;  // i with |f_{i+1} - f_i| maximal
  std::vector<double> f;
  std::vector<double> diffs;
};
BoundedDiff f_sequence_bounded_diff(const DimSequence& dims, int kmax);

struct NormTable {
  std::string label;
  std::string formula_id;
  std::vector<std::string> index_names;
  std::vector<std::vector<int>> indices;
  std::vector<double> values;

  void add(std::vector<int> idx, double value);
  std::string to_csv() const;
  std::string to_json() const;
};

// %.15g
std::string format_real(double x);

}  // namespace qcayley
