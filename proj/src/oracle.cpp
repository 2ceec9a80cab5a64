#include "qcayley/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qcayley/closedform.hpp"
#include "qcayley/error.hpp"

namespace qcayley {

namespace {

using cplx = std::complex<double>;
using Eigen::Index;

Index ipow(Index base, int e) {
  Index r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Batch data is column-major with one ambient vector per column, so the whole
// buffer reads as a row-major tensor (cols, left, mid, right).
DenseMatrix mode_product(const DenseMatrix& v, Index left, Index mid, Index right, const DenseMatrix& M) {
  const Index cols = v.cols();
  const Index out_mid = M.rows();
  DenseMatrix out(left * out_mid * right, cols);
  const DenseMatrix Mt = M.transpose();
  for (Index c = 0; c < cols; ++c) {
    const cplx* src = v.data() + c * v.rows();
    cplx* dst = out.data() + c * out.rows();
    for (Index L = 0; L < left; ++L) {
      Eigen::Map<const DenseMatrix> X(src + L * mid * right, right, mid);
      Eigen::Map<DenseMatrix> Y(dst + L * out_mid * right, right, out_mid);
      Y.noalias() = X * Mt;
    }
  }
  return out;
}

}  // namespace

SubspaceBasis orthonormalize(const DenseMatrix& vectors, double eps_rank) {
  SubspaceBasis out;
  out.ambient_dim = static_cast<std::size_t>(vectors.rows());
  if (vectors.cols() == 0 || vectors.cwiseAbs().maxCoeff() == 0.0) {
    out.basis = DenseMatrix(vectors.rows(), 0);
    return out;
  }
  // pivoted QR: rank decided on |R_ii| relative to the first pivot
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(vectors);
  qr.setThreshold(eps_rank);
  const Index r = qr.rank();
  out.basis = qr.householderQ() * DenseMatrix::Identity(vectors.rows(), r);
  return out;
}

double subspace_angle(const SubspaceBasis& g1, const SubspaceBasis& g2) {
  if (g1.ambient_dim != g2.ambient_dim) fail(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
  if (g1.dim() == 0 || g2.dim() == 0) return 0.0;
  const DenseMatrix P = g2.basis.adjoint() * g1.basis;
  const DenseMatrix S = P.rows() < P.cols() ? DenseMatrix(P * P.adjoint()) : DenseMatrix(P.adjoint() * P);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(S, Eigen::EigenvaluesOnly);
  return std::clamp(std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())), 0.0, 1.0);
}

DenseMatrix conjugation_tensor(const FactorSpec& factor, Letter leg, int sigma) {
  switch (factor.kind()) {
    case FactorKind::Cyclic:
      fail(ErrorCode::InvalidArgument, "cyclic factors have no conjugation tensor");
    case FactorKind::Orthogonal:
      return factor.matrix_Q();
    case FactorKind::Unitary:
      if (sigma != 1 && sigma != -1) fail(ErrorCode::InvalidArgument, "sigma must be +1 or -1");
      if (leg == Letter::g) return factor.matrix_Q();
      return static_cast<double>(sigma) * factor.matrix_Q().conjugate().inverse();
  }
  fail(ErrorCode::Internal, "unknown factor kind");
}

Oracle::Oracle(const FactorSpec& factor, int sign, std::size_t ambient_cap)
    : factor_(factor), n_(factor.n()), sign_(sign), cap_(ambient_cap) {
  if (factor.kind() == FactorKind::Cyclic) fail(ErrorCode::InvalidArgument, "oracle needs an orthogonal or unitary factor");
  if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  sigma_ = factor.kind() == FactorKind::Orthogonal ? factor.orthogonal_sign() : -sign;
  t_g_ = conjugation_tensor(factor, Letter::g, sigma_);
  t_gbar_ = conjugation_tensor(factor, Letter::g_bar, sigma_);
}

std::size_t Oracle::ambient_dim(int legs) const {
  std::size_t d = 1;
  for (int i = 0; i < legs; ++i) {
    d *= static_cast<std::size_t>(n_);
    if (d > cap_)
      fail(ErrorCode::AmbientTooLarge, std::to_string(n_) + "^" + std::to_string(legs) + " exceeds ambient cap " + std::to_string(cap_));
  }
  return d;
}

double Oracle::conjugation_identity_deviation() const {
  const DenseMatrix I = DenseMatrix::Identity(n_, n_);
  double a = (t_g_ * t_gbar_.conjugate() - static_cast<double>(sigma_) * I).cwiseAbs().maxCoeff();
  double b = (t_gbar_ * t_g_.conjugate() - static_cast<double>(sigma_) * I).cwiseAbs().maxCoeff();
  return std::max(a, b);
}

int Oracle::parity(Letter start) const {
  if (factor_.kind() == FactorKind::Orthogonal) return 0;
  return start == Letter::g ? 0 : 1;
}

const SubspaceBasis& Oracle::highest_weight_space(int k, Letter start) {
  if (k < 0) fail(ErrorCode::IndexOutOfRange, "negative number of legs");
  const int par = parity(start);
  auto key = std::make_pair(k, par);
  if (auto it = hw_cache_.find(key); it != hw_cache_.end()) return it->second;
  const std::size_t amb = ambient_dim(k);

  SubspaceBasis out;
  out.ambient_dim = amb;
  if (k == 0) {
    out.basis = DenseMatrix::Ones(1, 1);
  } else if (k == 1) {
    out.basis = DenseMatrix::Identity(n_, n_);
  } else {
    const DenseMatrix Bp = highest_weight_space(k - 1, start).basis;
    const Index d = Bp.cols();
    const Index nk2 = ipow(n_, k - 2);
    const DenseMatrix tc = t_at(par + k - 2).conjugate();
    // contraction of the last two legs on H_{k-1} (x) C^n, column c*n + i
    DenseMatrix C(nk2, d * n_);
    for (Index c = 0; c < d; ++c) {
      Eigen::Map<const DenseMatrix> Mt(Bp.col(c).data(), n_, nk2);
      C.middleCols(c * n_, n_) = Mt.transpose() * tc;
    }
    // BDCSVD loses small singular values on these shapes; Jacobi on the tall adjoint does not
    Eigen::JacobiSVD<DenseMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(C.adjoint(), Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    Index r = 0;
    if (s.size() > 0 && s(0) > 0.0)
      while (r < s.size() && s(r) > kEpsRank * s(0)) ++r;
    const DenseMatrix K = svd.matrixU().rightCols(d * n_ - r);
    out.basis.resize(static_cast<Index>(amb), K.cols());
    for (Index i = 0; i < n_; ++i) {
      const DenseMatrix Ki = K(Eigen::seqN(i, d, n_), Eigen::all);
      out.basis(Eigen::seqN(i, Bp.rows(), n_), Eigen::all) = Bp * Ki;
    }
  }
  return hw_cache_.emplace(key, std::move(out)).first->second;
}

DenseMatrix Oracle::insert_t(const DenseMatrix& v, int pos, int legs) const {
  if (pos < 0 || pos > legs) fail(ErrorCode::IndexOutOfRange, "insertion position outside the tensor");
  const Index X = ipow(n_, pos);
  const Index Y = ipow(n_, legs - pos);
  if (v.rows() != X * Y) fail(ErrorCode::AmbientMismatch, "vector length does not match leg count");
  const Index nn = static_cast<Index>(n_) * n_;
  DenseMatrix out(static_cast<Index>(ambient_dim(legs + 2)), v.cols());
  const DenseMatrix& t = t_at(pos);
  const Index groups = X * v.cols();
  for (Index g = 0; g < groups; ++g) {
    const cplx* src = v.data() + g * Y;
    cplx* dst = out.data() + g * nn * Y;
    Eigen::Map<const Eigen::VectorXcd> in(src, Y);
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        Eigen::Map<Eigen::VectorXcd>(dst + (i * n_ + j) * Y, Y) = t(i, j) * in;
  }
  return out;
}

DenseMatrix Oracle::contract_t(const DenseMatrix& v, int pos, int legs) const {
  if (pos < 0 || pos + 2 > legs) fail(ErrorCode::IndexOutOfRange, "contraction position outside the tensor");
  const Index X = ipow(n_, pos);
  const Index Y = ipow(n_, legs - pos - 2);
  const Index nn = static_cast<Index>(n_) * n_;
  if (v.rows() != X * nn * Y) fail(ErrorCode::AmbientMismatch, "vector length does not match leg count");
  DenseMatrix out = DenseMatrix::Zero(X * Y, v.cols());
  const DenseMatrix& t = t_at(pos);
  const Index groups = X * v.cols();
  for (Index g = 0; g < groups; ++g) {
    const cplx* src = v.data() + g * nn * Y;
    Eigen::Map<Eigen::VectorXcd> dst(out.data() + g * Y, Y);
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        dst += std::conj(t(i, j)) * Eigen::Map<const Eigen::VectorXcd>(src + (i * n_ + j) * Y, Y);
  }
  return out;
}

DenseMatrix Oracle::project_blocks(const DenseMatrix& v, const std::vector<std::pair<int, bool>>& blocks) {
  int legs = 0;
  for (const auto& b : blocks) legs += b.first;
  if (v.rows() != static_cast<Index>(ambient_dim(legs))) fail(ErrorCode::AmbientMismatch, "block layout does not match vector length");
  DenseMatrix cur = v;
  int offset = 0;
  for (const auto& [len, project] : blocks) {
    if (project && len >= 2) {
      const DenseMatrix& B = highest_weight_space(len, offset % 2 == 0 ? Letter::g : Letter::g_bar).basis;
      const Index left = ipow(n_, offset);
      const Index right = ipow(n_, legs - offset - len);
      DenseMatrix coords = mode_product(cur, left, B.rows(), right, B.adjoint());
      cur = mode_product(coords, left, B.cols(), right, B);
    }
    offset += len;
  }
  return cur;
}

DenseMatrix Oracle::block_coords(const DenseMatrix& v, const std::vector<int>& blocks) {
  int legs = 0;
  for (int b : blocks) legs += b;
  if (v.rows() != static_cast<Index>(ambient_dim(legs))) fail(ErrorCode::AmbientMismatch, "block layout does not match vector length");
  DenseMatrix cur = v;
  Index left = 1;
  int offset = 0;
  for (int len : blocks) {
    const DenseMatrix& B = highest_weight_space(len, offset % 2 == 0 ? Letter::g : Letter::g_bar).basis;
    const Index right = ipow(n_, legs - offset - len);
    cur = mode_product(cur, left, B.rows(), right, B.adjoint());
    left *= B.cols();
    offset += len;
  }
  return cur;
}

DenseMatrix Oracle::block_embed(const DenseMatrix& c, const std::vector<int>& blocks) {
  int legs = 0;
  for (int b : blocks) legs += b;
  ambient_dim(legs);
  Index right = 1;
  for (int len : blocks) right *= highest_weight_space(len).basis.cols();  // dimension is parity-free
  if (c.rows() != right) fail(ErrorCode::AmbientMismatch, "coordinate length does not match blocks");
  DenseMatrix cur = c;
  Index left = 1;
  int offset = 0;
  for (int len : blocks) {
    const DenseMatrix& B = highest_weight_space(len, offset % 2 == 0 ? Letter::g : Letter::g_bar).basis;
    right /= B.cols();
    cur = mode_product(cur, left, B.cols(), right, B);
    left *= B.rows();
    offset += len;
  }
  return cur;
}

DenseMatrix Oracle::apply_T(const DenseMatrix& v, int p, int p_prime) {
  return project_blocks(insert_t(v, p, p + p_prime), {{p + 1, true}, {p_prime + 1, true}});
}

DenseMatrix Oracle::basis_pp(int p, int p_prime) {
  const Index dim = highest_weight_space(p).basis.cols() *
                    highest_weight_space(p_prime, p % 2 == 0 ? Letter::g : Letter::g_bar).basis.cols();
  return block_embed(DenseMatrix::Identity(dim, dim), {p, p_prime});
}

DenseMatrix Oracle::numeric_T(int p, int p_prime) {
  if (p < 0 || p_prime < 0) fail(ErrorCode::IndexOutOfRange, "negative block length");
  ambient_dim(p + p_prime + 2);
  return block_coords(insert_t(basis_pp(p, p_prime), p, p + p_prime), {p + 1, p_prime + 1});
}

double Oracle::coeff_deviation(int p, int p_prime, int sign) {
  if (p < 0 || p_prime < 0) fail(ErrorCode::IndexOutOfRange, "negative block length");
  const int legs = p + p_prime;
  ambient_dim(legs + 4);
  const DenseMatrix X = basis_pp(p, p_prime);
  const DenseMatrix T = apply_T(X, p, p_prime);
  const CoeffMatrix A = fusion_coeffs(p, p_prime, dim_sequence(factor_, std::max(p, p_prime) + 1), sign);
  DenseMatrix tA = DenseMatrix::Zero(T.rows(), T.cols());
  for (int l = 0; l <= p; ++l) {
    DenseMatrix once = insert_t(X, p - l, legs);
    for (int lp = 0; lp <= p_prime; ++lp) {
      DenseMatrix W = contract_t(insert_t(once, p + lp + 2, legs + 2), p + 1, legs + 4);
      tA += A.entries(l, lp) * W;
    }
  }
  return (tA - static_cast<double>(sigma_) * T).cwiseAbs().maxCoeff();
}

double Oracle::verify_coeffs(int p, int p_prime) {
  const double dev = coeff_deviation(p, p_prime, sign_);
  if (dev > kCoeffTol) {
    const double other = coeff_deviation(p, p_prime, -sign_);
    fail(ErrorCode::SignMismatch,
         "coefficient check (" + std::to_string(p) + "," + std::to_string(p_prime) + ") deviates by " + format_real(dev) +
             " with sign " + std::to_string(sign_) + (other <= kCoeffTol ? "; the opposite sign passes" : "; both signs fail"));
  }
  return dev;
}

DenseMatrix Oracle::chain_from_top(int a, int b, int q) {
  DenseMatrix X = highest_weight_space(a + b).basis;
  for (int s = 0; s < q; ++s) X = apply_T(X, a + s, b + s);
  return X;
}

PolarCheck Oracle::verify_polar(int p, int p_prime, int q) {
  if (q < 0 || q > std::min(p, p_prime)) fail(ErrorCode::IndexOutOfRange, "q outside [0, min(p, p')]");
  ambient_dim(p + p_prime + 2);
  const int top = p + p_prime - 2 * q;
  const SubspaceBasis G = orthonormalize(chain_from_top(p - q, p_prime - q, q));
  const Index expected = highest_weight_space(top).dim();
  if (G.dim() != expected)
    fail(ErrorCode::DegenerateG, "G has dimension " + std::to_string(G.dim()) + ", expected " + std::to_string(expected));
  const DenseMatrix Y = apply_T(G.basis, p, p_prime);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(Y.adjoint() * Y, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();

  PolarCheck out;
  out.g_dim = G.dim();
  out.closed_form = polar_norm(p, p_prime, q, dim_sequence(factor_, std::max(p, p_prime) + 1));
  out.measured = ev.maxCoeff();
  for (Index i = 0; i < ev.size(); ++i)
    out.rel_deviation = std::max(out.rel_deviation, std::abs(ev(i) - out.closed_form) / out.closed_form);
  out.spread = std::sqrt(std::max(0.0, ev.maxCoeff())) - std::sqrt(std::max(0.0, ev.minCoeff()));
  return out;
}

AngleCheck Oracle::verify_angles1(int k, int l) {
  if (k < 2 || l < 1 || l > k - 1) fail(ErrorCode::IndexOutOfRange, "angles1 needs k >= 2 and 1 <= l <= k-1");
  ambient_dim(2 * k);
  const DenseMatrix X = chain_from_top(l - 1, l + 1, k - 1 - l);
  const DenseMatrix G1 = project_blocks(insert_t(X, k - 2, 2 * k - 2), {{k - 1, true}, {1, false}, {k, false}});
  const DenseMatrix G2 = apply_T(X, k - 2, k);
  AngleCheck out;
  out.measured = subspace_angle(orthonormalize(G1), orthonormalize(G2));
  out.closed_form = angle1_norm(k, l, dim_sequence(factor_, k));
  out.deviation = std::abs(out.measured - out.closed_form);
  return out;
}

AngleCheck Oracle::verify_angles2(int k, int k_prime) {
  if (k < 1 || k_prime < 1) fail(ErrorCode::IndexOutOfRange, "angles2 needs k, k' >= 1");
  const int legs = k + k_prime - 1;
  ambient_dim(legs + 2);
  const DenseMatrix W = insert_t(highest_weight_space(legs).basis, 0, legs);
  const DenseMatrix G1 = project_blocks(W, {{1, true}, {k, true}, {k_prime, false}});
  const DenseMatrix G2 = project_blocks(W, {{1, true}, {k + k_prime, true}});
  AngleCheck out;
  out.measured = subspace_angle(orthonormalize(G1), orthonormalize(G2));
  out.closed_form = angle2_norm(k, k_prime, dim_sequence(factor_, k + k_prime));
  out.deviation = std::abs(out.measured - out.closed_form);
  return out;
}

}  // namespace qcayley
