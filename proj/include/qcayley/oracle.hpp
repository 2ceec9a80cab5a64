#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcayley/repring.hpp"

namespace qcayley {

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr double kEpsRank = 1e-9;
inline constexpr std::size_t kDefaultAmbientCap = 300000;
inline constexpr double kCoeffTol = 1e-8;

struct SubspaceBasis {
  std::size_t ambient_dim = 1;
  DenseMatrix basis;  // orthonormal columns

  Eigen::Index dim() const { return basis.cols(); }
};

// Column span of `vectors`, singular values below eps_rank * max dropped.
SubspaceBasis orthonormalize(const DenseMatrix& vectors, double eps_rank = kEpsRank);

// Largest singular value of B2^* B1.
double subspace_angle(const SubspaceBasis& g1, const SubspaceBasis& g2);

// t for the given leg as an n x n matrix T with t = sum T_ij e_i (x) e_j.
// sigma is the sign of (id (x) conj(t)^*)(t (x) id); orthogonal factors force it.
DenseMatrix conjugation_tensor(const FactorSpec& factor, Letter leg, int sigma);

struct PolarCheck {
  double closed_form = 0.0;
  double measured = 0.0;      // largest ||T x||^2 over unit x in G
  double rel_deviation = 0.0; // max over the spectrum of T^*T on G
  double spread = 0.0;        // s_max - s_min of T on G
  Eigen::Index g_dim = 0;
};

struct AngleCheck {
  double closed_form = 0.0;
  double measured = 0.0;
  double deviation = 0.0;
};

// Finite model of one factor inside tensor powers of C^n, legs alternating g, g_bar, ...
// Caches highest-weight spaces; one instance per thread.
class Oracle {
 public:
  // sign is the coefficient convention; sigma = -sign. For orthogonal factors
  // the sign is not free and a wrong one surfaces as SignMismatch in verify_coeffs.
  Oracle(const FactorSpec& factor, int sign, std::size_t ambient_cap = kDefaultAmbientCap);

  const FactorSpec& factor() const { return factor_; }
  int n() const { return n_; }
  int sign() const { return sign_; }
  int sigma() const { return sigma_; }
  std::size_t ambient_cap() const { return cap_; }
  std::size_t ambient_dim(int legs) const;  // AmbientTooLarge past the cap

  // max |(id (x) conj(t)^*)(t (x) id) - sigma id| over both legs.
  double conjugation_identity_deviation() const;

  const SubspaceBasis& highest_weight_space(int k, Letter start = Letter::g);

  // Matrix of T from H_{p,p'} to H_{p+1,p'+1} in the cached bases.
  DenseMatrix numeric_T(int p, int p_prime);

  // max |t_A - sigma T| on H_{p,p'}; SignMismatch when the configured sign fails.
  double verify_coeffs(int p, int p_prime);
  // Same comparison for an explicit sign, without the mismatch check.
  double coeff_deviation(int p, int p_prime, int sign);

  PolarCheck verify_polar(int p, int p_prime, int q);
  AngleCheck verify_angles1(int k, int l);
  AngleCheck verify_angles2(int k, int k_prime);

  // Tensor primitives on batches of ambient vectors (one per column).
  DenseMatrix insert_t(const DenseMatrix& v, int pos, int legs) const;
  DenseMatrix contract_t(const DenseMatrix& v, int pos, int legs) const;
  // Orthogonal projection onto H_{b1} (x) H_{b2} (x) ...; a block with project=false is left alone.
  DenseMatrix project_blocks(const DenseMatrix& v, const std::vector<std::pair<int, bool>>& blocks);
  // Coordinates in the tensor product of the cached bases.
  DenseMatrix block_coords(const DenseMatrix& v, const std::vector<int>& blocks);
  DenseMatrix block_embed(const DenseMatrix& c, const std::vector<int>& blocks);
  // T_{(p,p')} = projected insertion, on ambient vectors.
  DenseMatrix apply_T(const DenseMatrix& v, int p, int p_prime);

 private:
  const DenseMatrix& t_at(int pos) const { return pos % 2 == 0 ? t_g_ : t_gbar_; }
  int parity(Letter start) const;
  DenseMatrix basis_pp(int p, int p_prime);
  // H_{a+b} as a subspace of H_{a,b}, pushed through T q times.
  DenseMatrix chain_from_top(int a, int b, int q);

  FactorSpec factor_;
  int n_;
  int sign_;
  int sigma_;
  std::size_t cap_;
  DenseMatrix t_g_, t_gbar_;
  std::map<std::pair<int, int>, SubspaceBasis> hw_cache_;
};

}  // namespace qcayley
