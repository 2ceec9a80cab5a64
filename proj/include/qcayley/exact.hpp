#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcayley/repring.hpp"

namespace qcayley {

using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double.
Rational to_rational(double x);
double to_double(const Rational& x);

struct ExactDimSequence {
  Rational m1;
  std::vector<Rational> m;

  int kmax() const { return static_cast<int>(m.size()) - 1; }
  Rational at(int k) const;
};

ExactDimSequence exact_dim_sequence(const Rational& m1, int kmax);

// Rounds each exact m_k to the nearest double.
DimSequence to_dim_sequence(const ExactDimSequence& exact, int n = 0);

}  // namespace qcayley
