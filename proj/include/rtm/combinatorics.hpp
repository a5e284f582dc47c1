#pragma once

#include <vector>

#include "rtm/rational.hpp"

namespace rtm {

enum class FactorialMode { Falling, Rising };

// Falling: n(n-1)...(n-t+1), which is 0 once t > n.
// Rising:  n(n+1)...(n+t-1).
// t = 0 gives the empty product 1 in both modes.
Int factorial_family(long long n, long long t, FactorialMode mode);

Int factorial(unsigned n);
Int binomial(long long n, long long k);

// Narayana number N(m,l) = (1/m) C(m,l-1) C(m,l), with N(0,0) = 1 and
// N(m,0) = 0 for m >= 1. Out-of-range l is a domain error.
Int narayana(int m, int l);

struct NarayanaRow {
  int m = 0;
  std::vector<Int> values;  // N(m,1..m)
};
NarayanaRow narayana_row(int m);

Int catalan(int m);
Int bell_number(int m);

// beta_m(x) = sum_{l=1}^m N(m,l) x^l; beta_0 = 1.
Rational beta_eval(int m, const Rational& x);
long double beta_eval_real(int m, long double x);

}  // namespace rtm
