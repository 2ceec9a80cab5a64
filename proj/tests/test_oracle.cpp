#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "qcayley/closedform.hpp"
#include "qcayley/error.hpp"
#include "qcayley/oracle.hpp"

using namespace qcayley;

namespace {

const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
const Eigen::MatrixXcd I3 = Eigen::MatrixXcd::Identity(3, 3);

Eigen::MatrixXcd random_invertible(int n) {
  Eigen::MatrixXcd Q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Q(i, j) = {gen::real_in(-0.5, 0.5), gen::real_in(-0.5, 0.5)};
  return Q + 1.5 * Eigen::MatrixXcd::Identity(n, n);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}

}  // namespace

TEST_CASE("conjugation tensor") {
  auto T = conjugation_tensor(FactorSpec::orthogonal(I3), Letter::g, 1);
  CHECK((T - DenseMatrix(I3)).norm() < 1e-15);
  CHECK(T.squaredNorm() == doctest::Approx(3.0));

  const double q = 2.0;
  auto Tq = conjugation_tensor(FactorSpec::orthogonal_q(q), Letter::g, -1);
  CHECK(std::abs(Tq(0, 1) - std::sqrt(q)) < 1e-14);
  CHECK(std::abs(Tq(1, 0) + 1 / std::sqrt(q)) < 1e-14);
  CHECK(std::abs(Tq(0, 0)) < 1e-15);
  CHECK(Tq.squaredNorm() == doctest::Approx(q + 1 / q));

  gen::forall(20, [](int) {
    auto f = FactorSpec::unitary(random_invertible(gen::int_in(2, 4)));
    for (Letter leg : {Letter::g, Letter::g_bar})
      for (int s : {1, -1}) CHECK(conjugation_tensor(f, leg, s).squaredNorm() == doctest::Approx(f.m1()).epsilon(1e-10));
  });
  CHECK_THROWS_AS(conjugation_tensor(FactorSpec::cyclic(0), Letter::g, 1), Error);
}

TEST_CASE("conjugation identity") {
  CHECK(Oracle(FactorSpec::orthogonal(I3), -1).conjugation_identity_deviation() < 1e-12);
  CHECK(Oracle(FactorSpec::orthogonal_q(2.0), 1).conjugation_identity_deviation() < 1e-12);
  gen::forall(20, [](int) {
    auto f = FactorSpec::unitary(random_invertible(gen::int_in(2, 3)));
    CHECK(Oracle(f, gen::coin() ? 1 : -1).conjugation_identity_deviation() < 1e-10);
  });
}

TEST_CASE("highest weight dimensions follow the d recursion") {
  struct Case {
    FactorSpec f;
    int sign;
    int kmax;
  };
  std::vector<Case> cases{{FactorSpec::orthogonal(I3), -1, 6},
                          {FactorSpec::orthogonal_q(2.0), 1, 9},
                          {FactorSpec::unitary(I2), -1, 9},
                          {FactorSpec::unitary(random_invertible(2)), 1, 8},
                          {FactorSpec::unitary(random_invertible(3)), -1, 6}};
  for (auto& c : cases) {
    Oracle o(c.f, c.sign);
    auto d = dim_sequence(c.f, c.kmax);
    for (int k = 0; k <= c.kmax; ++k)
      for (Letter s : {Letter::g, Letter::g_bar}) {
        const auto& H = o.highest_weight_space(k, s);
        CHECK(static_cast<std::uint64_t>(H.dim()) == d.d[k]);
        CHECK((H.basis.adjoint() * H.basis - DenseMatrix::Identity(H.dim(), H.dim())).cwiseAbs().maxCoeff() < 1e-12);
      }
  }
  Oracle u(FactorSpec::unitary(I2), -1);
  CHECK(u.highest_weight_space(3).dim() == 4);
  CHECK(u.highest_weight_space(3).ambient_dim == 8);
  Oracle o(FactorSpec::orthogonal(I3), -1);
  CHECK(o.highest_weight_space(2).dim() == 8);
  CHECK(o.highest_weight_space(0).dim() == 1);
}

TEST_CASE("highest weight space is killed by every contraction") {
  Oracle o(FactorSpec::unitary(random_invertible(2)), 1);
  for (int k = 2; k <= 7; ++k) {
    const auto& B = o.highest_weight_space(k).basis;
    for (int pos = 0; pos + 2 <= k; ++pos) CHECK(o.contract_t(B, pos, k).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("numeric T") {
  Oracle o(FactorSpec::orthogonal(I3), -1);
  auto T = o.numeric_T(0, 0);
  CHECK(T.rows() == 9);
  CHECK(T.cols() == 1);
  CHECK(T.norm() == doctest::Approx(std::sqrt(3.0)));
  // injective: rank equals dim H_{p,p'}
  for (auto [p, pp] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
    auto M = o.numeric_T(p, pp);
    Eigen::FullPivLU<DenseMatrix> lu(M);
    CHECK(lu.rank() == M.cols());
  }
}

TEST_CASE("coefficient checks") {
  Oracle o(FactorSpec::orthogonal(I3), -1);
  CHECK(o.verify_coeffs(0, 0) == 0.0);
  CHECK(o.verify_coeffs(1, 1) < 1e-9);
  Oracle u(FactorSpec::unitary(I2), -1);
  CHECK(u.verify_coeffs(2, 1) < 1e-9);
  gen::forall(6, [](int) {
    auto f = FactorSpec::unitary(random_invertible(2));
    int s = gen::coin() ? 1 : -1;
    Oracle r(f, s);
    for (int p = 0; p <= 3; ++p)
      for (int pp = 0; p + pp <= 4; ++pp) CHECK(r.verify_coeffs(p, pp) < 1e-8);
  });
}

TEST_CASE("wrong sign is reported") {
  // orthogonal factors carry a forced sign; the opposite convention fails
  Oracle o(FactorSpec::orthogonal(I3), 1);
  CHECK(code_of([&] { o.verify_coeffs(1, 1); }) == ErrorCode::SignMismatch);
  CHECK(o.coeff_deviation(1, 1, -1) < 1e-9);
  CHECK(o.coeff_deviation(1, 1, 1) > 1e-3);
  Oracle q(FactorSpec::orthogonal_q(2.0), -1);
  CHECK(code_of([&] { q.verify_coeffs(1, 0); }) == ErrorCode::SignMismatch);
  CHECK_THROWS_AS(Oracle(FactorSpec::orthogonal(I3), 0), Error);
  CHECK_THROWS_AS(Oracle(FactorSpec::cyclic(0), 1), Error);
}

TEST_CASE("polar checks") {
  Oracle o(FactorSpec::orthogonal(I3), -1);
  auto c = o.verify_polar(1, 1, 1);
  CHECK(c.closed_form == doctest::Approx(8.0 / 3));
  CHECK(c.measured == doctest::Approx(8.0 / 3).epsilon(1e-8));
  CHECK(c.g_dim == 1);
  c = o.verify_polar(2, 2, 1);
  CHECK(c.measured == doctest::Approx(165.0 / 64).epsilon(1e-8));
  c = o.verify_polar(0, 0, 0);
  CHECK(c.measured == doctest::Approx(3.0));
  for (int p = 0; p <= 3; ++p)
    for (int pp = 0; p + pp <= 4; ++pp)
      for (int q = 0; q <= std::min(p, pp); ++q) {
        auto r = o.verify_polar(p, pp, q);
        CHECK(r.rel_deviation < 1e-8);
        CHECK(r.spread < 1e-8);
      }
  Oracle u(FactorSpec::unitary(random_invertible(2)), 1);
  for (int p = 0; p <= 3; ++p)
    for (int pp = 0; p + pp <= 5; ++pp)
      for (int q = 0; q <= std::min(p, pp); ++q) CHECK(u.verify_polar(p, pp, q).rel_deviation < 1e-8);
  CHECK_THROWS_AS(o.verify_polar(1, 1, 2), Error);
}

TEST_CASE("subspace angle") {
  SubspaceBasis a{4, DenseMatrix::Identity(4, 2)};
  CHECK(subspace_angle(a, a) == doctest::Approx(1.0));
  SubspaceBasis b{4, DenseMatrix::Identity(4, 4).rightCols(2)};
  CHECK(subspace_angle(a, b) == doctest::Approx(0.0));
  SubspaceBasis c{5, DenseMatrix::Identity(5, 1)};
  CHECK(code_of([&] { subspace_angle(a, c); }) == ErrorCode::AmbientMismatch);

  // angle between two lines at a known angle
  gen::forall(20, [](int) {
    double th = gen::real_in(0.0, 1.5);
    DenseMatrix u = DenseMatrix::Zero(3, 1), v = DenseMatrix::Zero(3, 1);
    u(0, 0) = 1;
    v(0, 0) = std::cos(th);
    v(1, 0) = std::sin(th);
    CHECK(subspace_angle(orthonormalize(u), orthonormalize(v)) == doctest::Approx(std::cos(th)).epsilon(1e-12));
  });
  DenseMatrix dep(3, 2);
  dep << 1, 2, 1, 2, 0, 0;
  CHECK(orthonormalize(dep).dim() == 1);
}

TEST_CASE("angle checks") {
  Oracle o(FactorSpec::orthogonal(I3), -1);
  auto a = o.verify_angles1(2, 1);
  CHECK(a.measured == doctest::Approx(std::sqrt(7.0 / 8)).epsilon(1e-8));
  a = o.verify_angles2(1, 1);
  CHECK(a.measured == doctest::Approx(std::sqrt(8.0 / 9)).epsilon(1e-8));
  auto d = dim_sequence_from_m1(3.0, 10);
  for (int k = 1; k <= 4; ++k) {
    auto r = o.verify_angles2(k, 1);
    CHECK(std::sqrt(1 - r.measured * r.measured) == doctest::Approx(commutator_angle(k, d)).epsilon(1e-7));
  }
  Oracle u(FactorSpec::unitary(I2), -1);
  for (int k = 2; k <= 4; ++k)
    for (int l = 1; l < k; ++l) CHECK(u.verify_angles1(k, l).deviation < 1e-8);
  for (int k = 1; k <= 3; ++k)
    for (int kp = 1; k + kp <= 5; ++kp) CHECK(u.verify_angles2(k, kp).deviation < 1e-8);
}

TEST_CASE("ambient cap") {
  Oracle o(FactorSpec::orthogonal(I3), -1, 100);
  CHECK(o.ambient_dim(4) == 81);
  CHECK(code_of([&] { o.ambient_dim(5); }) == ErrorCode::AmbientTooLarge);
  CHECK(code_of([&] { o.verify_coeffs(1, 1); }) == ErrorCode::AmbientTooLarge);
  CHECK(code_of([&] { o.highest_weight_space(6); }) == ErrorCode::AmbientTooLarge);
}

TEST_CASE("insertion and contraction are adjoint") {
  Oracle o(FactorSpec::unitary(random_invertible(2)), -1);
  gen::forall(20, [&](int) {
    int legs = gen::int_in(0, 4);
    int pos = gen::int_in(0, legs);
    Eigen::Index n0 = 1 << legs, n2 = 1 << (legs + 2);
    DenseMatrix x = DenseMatrix::Random(n0, 1), y = DenseMatrix::Random(n2, 1);
    auto lhs = (y.adjoint() * o.insert_t(x, pos, legs))(0, 0);
    auto rhs = (o.contract_t(y, pos, legs + 2).adjoint() * x)(0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  });
}
