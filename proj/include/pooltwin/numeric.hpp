#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace pooltwin {

// Arbitrary-precision integer for minimal-unit (discretized) quantities and
// exact rational for real-valued trajectories that must conserve invariants
// bit-exactly.
using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(double v) { return v; }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

// Conversion from double is exact for both targets (a finite double is a
// dyadic rational).
template <typename T>
T from_double(double v);
template <>
inline double from_double<double>(double v) { return v; }
template <>
inline Rational from_double<Rational>(double v) { return Rational(v); }

template <typename T>
double div_to_double(const T& num, const T& den);
template <>
inline double div_to_double<double>(const double& num, const double& den) {
  return num / den;
}
template <>
inline double div_to_double<Rational>(const Rational& num, const Rational& den) {
  return to_double(Rational(num / den));
}
template <>
inline double div_to_double<BigInt>(const BigInt& num, const BigInt& den) {
  return to_double(num) / to_double(den);
}

inline BigInt pow10_int(unsigned n) {
  BigInt v = 1;
  for (unsigned i = 0; i < n; ++i) v *= 10;
  return v;
}

inline bool nearly_equal(double a, double b, double rel = 1e-12,
                         double floor_scale = 1.0) {
  const double scale = std::max({std::fabs(a), std::fabs(b), floor_scale});
  return std::fabs(a - b) <= rel * scale;
}

}  // namespace pooltwin
