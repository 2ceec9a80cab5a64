#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "qcayley/closedform.hpp"
#include "qcayley/error.hpp"
#include "qcayley/exact.hpp"

using namespace qcayley;

TEST_CASE("to_rational is exact") {
  CHECK(to_rational(0.5) == Rational(1, 2));
  CHECK(to_rational(2.5) == Rational(5, 2));
  CHECK(to_rational(-3.0) == Rational(-3));
  CHECK(to_rational(0.0) == Rational(0));
  gen::forall(200, [](int) {
    double x = gen::real_in(-1e6, 1e6);
    CHECK(to_double(to_rational(x)) == x);
  });
}

TEST_CASE("exact recursion and cross identity") {
  for (Rational m1 : {Rational(2), Rational(5, 2), Rational(3)}) {
    auto e = exact_dim_sequence(m1, 31);
    CHECK(e.at(-1) == 0);
    CHECK(e.at(0) == 1);
    for (int k = 0; k < 31; ++k) CHECK(m1 * e.at(k) == e.at(k + 1) + e.at(k - 1));
    for (int k = 1; k <= 30; ++k)
      for (int kp = 1; k + kp <= 30; ++kp)
        CHECK(e.at(k + kp - 1) * e.at(k) == e.at(k + kp) * e.at(k - 1) + e.at(kp - 1));
  }
  auto two = exact_dim_sequence(Rational(2), 10);
  for (int k = 0; k <= 10; ++k) CHECK(two.at(k) == k + 1);
  CHECK(exact_dim_sequence(Rational(5, 2), 2).at(2) == Rational(21, 4));
  CHECK_THROWS_AS(exact_dim_sequence(Rational(2), 3).at(4), Error);
}

TEST_CASE("float and exact sequences agree") {
  gen::forall(40, [](int) {
    Rational m1(gen::int_in(200, 700), 100);
    auto e = exact_dim_sequence(m1, 40);
    auto f = dim_sequence_from_m1(to_double(m1), 40);
    auto r = to_dim_sequence(e);
    for (int k = 0; k <= 40; ++k) {
      double x = to_double(e.at(k));
      CHECK(std::abs(f.at(k) - x) <= 1e-10 * x);
      CHECK(r.at(k) == x);
    }
  });
}

TEST_CASE("closed forms are stable under exact evaluation") {
  for (Rational m1 : {Rational(5, 2), Rational(3), Rational(7, 2)}) {
    auto ex = to_dim_sequence(exact_dim_sequence(m1, 20));
    auto fl = dim_sequence_from_m1(to_double(m1), 20);
    for (int k = 1; k <= 12; ++k) {
      for (int l = 0; l <= k; ++l)
        CHECK(angle1_norm(k, l, ex) == doctest::Approx(angle1_norm(k, l, fl)).epsilon(1e-10));
      for (int kp = 1; k + kp <= 13; ++kp)
        CHECK(angle2_norm(k, kp, ex) == doctest::Approx(angle2_norm(k, kp, fl)).epsilon(1e-10));
      for (int p = 0; p + k <= 12; ++p)
        for (int q = 0; q <= std::min(p, k); ++q)
          CHECK(polar_norm(p, k, q, ex) == doctest::Approx(polar_norm(p, k, q, fl)).epsilon(1e-10));
    }
    auto fe = f_sequence(ex, 20), ff = f_sequence(fl, 20);
    for (int i = 0; i <= 20; ++i) CHECK(fe[i] == doctest::Approx(ff[i]).epsilon(1e-10));
  }
}

TEST_CASE("polar norm in exact arithmetic") {
  // (m_{p+1} m_{p'} - m_{p-q} m_{p'-q-1}) / (m_p m_{p'}) evaluated with rationals
  auto e = exact_dim_sequence(Rational(3), 12);
  auto ex = to_dim_sequence(e);
  for (int p = 0; p <= 5; ++p)
    for (int pp = 0; pp <= 5; ++pp)
      for (int q = 0; q <= std::min(p, pp); ++q) {
        Rational v = (e.at(p + 1) * e.at(pp) - e.at(p - q) * e.at(pp - q - 1)) / (e.at(p) * e.at(pp));
        CHECK(polar_norm(p, pp, q, ex) == doctest::Approx(to_double(v)).epsilon(1e-14));
      }
  CHECK(polar_norm(1, 1, 1, ex) == doctest::Approx(8.0 / 3.0));
  CHECK(polar_norm(2, 2, 2, ex) == doctest::Approx(21.0 / 8.0));
  CHECK(polar_norm(2, 2, 1, ex) == doctest::Approx(165.0 / 64.0));
}
