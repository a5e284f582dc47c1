#include "rtm/sd_bounds.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "rtm/combinatorics.hpp"

namespace rtm {

namespace {

Rational lower_entry(long long p, int m, int d, std::map<std::pair<long long, int>, Rational>& memo) {
  if (m == 0) return Rational{1};
  if (p <= 0) return Rational{0};
  const auto key = std::make_pair(p, m);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Rational sum{0};
  for (int l = 0; l <= m - 2; ++l) {
    sum += lower_entry(p, l, d, memo) * lower_entry(p - m, m - l - 1, d, memo);
  }
  sum += Rational{p, d} * lower_entry(p - 1, m - 1, d, memo);
  Rational value = Rational{d, d + m} * sum;
  memo.emplace(key, value);
  return value;
}

}  // namespace

BoundSeries sd_bounds_k1(long long p, int d, int max_m) {
  if (p < 1 || d < 2 || max_m < 0) throw std::domain_error("sd_bounds_k1: bad parameters");
  BoundSeries s;
  s.upper.assign(static_cast<size_t>(max_m) + 1, Rational{0});
  s.lower.assign(static_cast<size_t>(max_m) + 1, Rational{0});
  s.upper[0] = 1;
  s.lower[0] = 1;
  for (int m = 1; m <= max_m; ++m) {
    Rational u{0};
    for (int l = 0; l <= m - 2; ++l) u += s.upper[static_cast<size_t>(l)] * s.upper[static_cast<size_t>(m - l - 1)];
    u += Rational{p + static_cast<long long>(m) * m * m, d} * s.upper[static_cast<size_t>(m) - 1];
    s.upper[static_cast<size_t>(m)] = u;
  }
  std::map<std::pair<long long, int>, Rational> memo;
  for (int m = 1; m <= max_m; ++m) s.lower[static_cast<size_t>(m)] = lower_entry(p, m, d, memo);
  return s;
}

Rational inverse_root_upper(int d, int k) {
  if (d < 2 || k < 1) throw std::domain_error("inverse_root_upper: bad parameters");
  if (k == 1) return Rational{1, d};
  const long double r = std::pow(static_cast<long double>(d), -1.0L / static_cast<long double>(k));
  // pow is correct to a few ulp; pad well past that so the rational value
  // stays an upper bound.
  return rational_from_long_double(r * (1.0L + 1e-15L));
}

BoundSeries sd_upper_tensor(long long p, int d, int k, int max_m) {
  if (p < 1 || d < 2 || k < 1 || max_m < 0) throw std::domain_error("sd_upper_tensor: bad parameters");
  const Rational r = inverse_root_upper(d, k);
  const Rational x{Int{p}, int_pow(Int{d}, static_cast<unsigned long>(k))};
  BoundSeries s;
  s.upper.assign(static_cast<size_t>(max_m) + 1, Rational{0});
  s.lower.assign(static_cast<size_t>(max_m) + 1, Rational{0});
  s.upper[0] = 1;
  s.lower[0] = 1;  // entry 0 of any bound series is exact
  for (int m = 1; m <= max_m; ++m) {
    const Rational mk{int_pow(Int{m}, static_cast<unsigned long>(k))};
    const Rational mk3{int_pow(Int{m}, static_cast<unsigned long>(k) + 3)};
    Rational conv{0};
    for (int l = 0; l <= m - 2; ++l) conv += s.upper[static_cast<size_t>(l)] * s.upper[static_cast<size_t>(m - l - 1)];
    s.upper[static_cast<size_t>(m)] = (Rational{1} + mk * r) * conv + (x + Rational{3} * mk3 * r) * s.upper[static_cast<size_t>(m) - 1];
    if (m >= 1) s.lower[static_cast<size_t>(m)] = 0;
  }
  return s;
}

std::pair<double, double> trace_theorem_bounds(long long p, int d, int k, int m) {
  if (p < 1 || d < 2 || k < 1 || m < 1) throw std::domain_error("trace_theorem_bounds: bad parameters");
  const long double x = static_cast<long double>(p) / std::pow(static_cast<long double>(d), static_cast<long double>(k));
  const long double beta = beta_eval_real(m, x);
  long double lower = 0.0L;
  if (static_cast<long double>(m) * m < static_cast<long double>(p)) {
    lower = (1.0L - static_cast<long double>(m) * m / static_cast<long double>(p)) * beta;
  }
  long double exponent = 3.0L;
  for (int i = 0; i < k + 4; ++i) exponent *= m;
  exponent /= x * std::pow(static_cast<long double>(d), 1.0L / static_cast<long double>(k));
  const long double upper = std::exp(exponent) * beta;
  return {static_cast<double>(lower), static_cast<double>(upper)};
}

double rainbow_z0(double x) {
  if (x <= 0) throw std::domain_error("rainbow_z0: x must be positive");
  const double s = std::sqrt(x);
  return (1 + s) * (1 + s);
}

double rainbow_closed_form(double x, double z) {
  if (x <= 0 || z <= 0) throw std::domain_error("rainbow_closed_form: x, z must be positive");
  const double zi = 1.0 / z;
  const double b = zi * (1 - x) + 1;
  const double disc = b * b - 4 * zi;
  if (disc < -1e-12) throw std::domain_error("rainbow_closed_form: z below the critical point");
  const double root = std::sqrt(std::max(0.0, disc));
  return (b - root) / (2 * zi);
}

GfState rainbow_gf(double x, double z, long iters, std::vector<double>* trace) {
  if (x <= 0) throw std::domain_error("rainbow_gf: x must be positive");
  const double z0 = rainbow_z0(x);
  if (z < z0 * (1 - 1e-12)) throw std::domain_error("rainbow_gf: z must be >= z0 = (1+sqrt(x))^2");
  GfState st;
  st.x = x;
  st.z = z;
  st.z0 = z0;
  st.g_s = 1;
  st.g_d = 1;
  if (trace) {
    trace->clear();
    trace->reserve(static_cast<size_t>(iters));
  }
  for (long a = 0; a < iters; ++a) {
    const double gs = 1 + (x / z) * st.g_d * st.g_s;
    const double gd = 1 + (1 / z) * st.g_s * st.g_d;
    st.g_s = gs;
    st.g_d = gd;
    if (trace) trace->push_back(gs);
  }
  st.iterations = iters;
  return st;
}

double narayana_gf_closed_form(double x, double y) {
  if (y == 0) return 1;
  const double disc = 1 - 2 * (1 + x) * y + (1 - x) * (1 - x) * y * y;
  if (disc < -1e-12) throw std::domain_error("narayana_gf_closed_form: outside the convergence region");
  return (1 + (1 - x) * y - std::sqrt(std::max(0.0, disc))) / (2 * y);
}

}  // namespace rtm
