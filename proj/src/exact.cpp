#include "qcayley/exact.hpp"

#include <cmath>

#include "qcayley/error.hpp"

namespace qcayley {

Rational to_rational(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53-bit integer mantissa times a power of two.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(scaled);
  boost::multiprecision::cpp_int two_pow = 1;
  two_pow <<= (exp < 0 ? -exp : exp);
  if (exp < 0)
    r /= Rational(two_pow);
  else
    r *= Rational(two_pow);
  return r;
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

Rational ExactDimSequence::at(int k) const {
  if (k == -1) return Rational(0);
  if (k < -1 || k > kmax()) fail(ErrorCode::IndexOutOfRange, "dimension index " + std::to_string(k));
  return m[static_cast<std::size_t>(k)];
}

ExactDimSequence exact_dim_sequence(const Rational& m1, int kmax) {
  if (kmax < 0) fail(ErrorCode::InvalidArgument, "kmax must be nonnegative");
  if (m1 < 2) fail(ErrorCode::InvalidArgument, "m1 must be at least 2");
  ExactDimSequence ds;
  ds.m1 = m1;
  ds.m.push_back(Rational(1));
  if (kmax >= 1) ds.m.push_back(m1);
  for (int k = 1; k < kmax; ++k) ds.m.push_back(m1 * ds.m[k] - ds.m[k - 1]);
  return ds;
}

DimSequence to_dim_sequence(const ExactDimSequence& exact, int n) {
  DimSequence ds = dim_sequence_from_m1(to_double(exact.m1), exact.kmax(), n);
  for (std::size_t k = 0; k < exact.m.size(); ++k) ds.m[k] = to_double(exact.m[k]);
  return ds;
}

}  // namespace qcayley
