#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace rtm {

// Exact arbitrary-precision scalars. Every combinatorial and moment value in
// this library is a Rational; floating point only appears at reporting
// boundaries and in the Monte Carlo layer.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline Int int_pow(Int base, unsigned long exp) {
  Int r{1};
  while (exp != 0) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline Rational rational_pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw std::domain_error("rational_pow: zero base, negative exponent");
    return Rational{1} / rational_pow(base, -exp);
  }
  Rational r{1};
  Rational b = base;
  auto e = static_cast<unsigned long>(exp);
  while (e != 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

inline long double to_long_double(const Rational& q) {
  BigFloat n{boost::multiprecision::numerator(q)};
  BigFloat d{boost::multiprecision::denominator(q)};
  return (n / d).convert_to<long double>();
}

inline double to_double(const Rational& q) {
  return static_cast<double>(to_long_double(q));
}

// Exact binary expansion of a finite long double, no rounding.
inline Rational rational_from_long_double(long double v) {
  if (!std::isfinite(v)) throw std::domain_error("rational_from_long_double: non-finite input");
  if (v == 0.0L) return Rational{0};
  const bool neg = v < 0.0L;
  long double mag = neg ? -v : v;
  int exp = 0;
  long double frac = std::frexp(mag, &exp);
  Int mant{0};
  int bits = 0;
  while (frac != 0.0L && bits < 128) {
    frac = std::ldexp(frac, 1);
    const int bit = static_cast<int>(frac);
    frac -= bit;
    mant = (mant << 1) | bit;
    ++bits;
  }
  Rational q{mant};
  const int e = exp - bits;
  if (e >= 0) {
    q *= Rational{int_pow(Int{2}, static_cast<unsigned long>(e))};
  } else {
    q /= Rational{int_pow(Int{2}, static_cast<unsigned long>(-e))};
  }
  return neg ? -q : q;
}

// Partial Taylor sum of exp(t); a strict lower bound for t > 0. Used where an
// inequality with an exponential factor has to be certified in exact
// arithmetic.
inline Rational exp_taylor_lower(const Rational& t, int terms = 24) {
  if (t < 0) throw std::domain_error("exp_taylor_lower: negative argument");
  Rational sum{1};
  Rational term{1};
  for (int i = 1; i <= terms; ++i) {
    term *= t / Rational{i};
    sum += term;
  }
  return sum;
}

// "num/den", or plain "num" for integers.
inline std::string to_fraction_string(const Rational& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// 17 significant digits: lossless round-trip for IEEE doubles.
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string{buf};
}

}  // namespace rtm
