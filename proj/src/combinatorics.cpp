#include "rtm/combinatorics.hpp"

#include <stdexcept>

namespace rtm {

Int factorial_family(long long n, long long t, FactorialMode mode) {
  if (n < 0 || t < 0) throw std::domain_error("factorial_family: negative argument");
  Int r{1};
  if (mode == FactorialMode::Falling) {
    if (t > n) return Int{0};
    for (long long i = 0; i < t; ++i) r *= Int{n - i};
  } else {
    for (long long i = 0; i < t; ++i) r *= Int{n + i};
  }
  return r;
}

Int factorial(unsigned n) {
  Int r{1};
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(long long n, long long k) {
  if (k < 0 || k > n) return Int{0};
  if (k > n - k) k = n - k;
  Int r{1};
  for (long long i = 0; i < k; ++i) {
    r *= Int{n - i};
    r /= Int{i + 1};  // exact at every step: r is C(n, i+1) times earlier factors
  }
  return r;
}

Int narayana(int m, int l) {
  if (l < 0 || l > m) throw std::domain_error("narayana: l out of range [0, m]");
  if (m == 0) return Int{1};  // N(0,0)
  if (l == 0) return Int{0};
  Int r = binomial(m, l - 1) * binomial(m, l);
  r /= m;
  return r;
}

NarayanaRow narayana_row(int m) {
  if (m < 1) throw std::domain_error("narayana_row: m must be positive");
  NarayanaRow row;
  row.m = m;
  row.values.reserve(static_cast<size_t>(m));
  for (int l = 1; l <= m; ++l) row.values.push_back(narayana(m, l));
  return row;
}

Int catalan(int m) {
  if (m < 0) throw std::domain_error("catalan: negative index");
  if (m == 0) return Int{1};
  Int r = binomial(2LL * m, m);
  r /= m + 1;
  return r;
}

Int bell_number(int m) {
  if (m < 0) throw std::domain_error("bell_number: negative index");
  // Bell triangle.
  std::vector<Int> row{Int{1}};
  for (int i = 1; i <= m; ++i) {
    std::vector<Int> next;
    next.reserve(static_cast<size_t>(i) + 1);
    next.push_back(row.back());
    for (size_t j = 0; j < row.size(); ++j) next.push_back(next.back() + row[j]);
    row = std::move(next);
  }
  return row.front();
}

Rational beta_eval(int m, const Rational& x) {
  if (m < 0) throw std::domain_error("beta_eval: negative m");
  if (m == 0) return Rational{1};
  Rational sum{0};
  Rational xp{1};
  for (int l = 1; l <= m; ++l) {
    xp *= x;
    sum += Rational{narayana(m, l)} * xp;
  }
  return sum;
}

long double beta_eval_real(int m, long double x) {
  if (m == 0) return 1.0L;
  long double sum = 0.0L;
  long double xp = 1.0L;
  for (int l = 1; l <= m; ++l) {
    xp *= x;
    sum += Int(narayana(m, l)).convert_to<long double>() * xp;
  }
  return sum;
}

}  // namespace rtm
