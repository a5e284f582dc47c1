#pragma once

#include <utility>
#include <vector>

#include "rtm/rational.hpp"

namespace rtm {

// Per-order bounds on the normalized moments e^m, index 0..max_m.
// Entry 0 is always (1, 1).
struct BoundSeries {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
};

// k = 1 recursion. Upper:
//   u[m] = sum_{l=0}^{m-2} u[l] u[m-l-1] + ((p + m^3)/d) u[m-1].
// Lower, over a table indexed by a reduced letter count (removing a letter
// can strand up to m of them):
//   lo(p,m) = d/(d+m) ( sum_{l=0}^{m-2} lo(p,l) lo(p-m, m-l-1) + (p/d) lo(p-1, m-1) ),
// with lo(p,0) = 1 and lo(p<=0, m>=1) = 0.
BoundSeries sd_bounds_k1(long long p, int d, int max_m);

// Tensor-case upper bound only (lower filled with zeros):
//   u[m] = (1 + m^k r) sum u[l] u[m-l-1] + (p/d^k + 3 m^{k+3} r) u[m-1],
// where r >= d^{-1/k} is rounded outward so the bound stays sound.
BoundSeries sd_upper_tensor(long long p, int d, int k, int max_m);

// ((1 - m^2/p) beta_m(x), exp(3 m^{k+4} / (x d^{1/k})) beta_m(x)) with
// x = p/d^k; the lower entry is 0 when m >= sqrt(p).
std::pair<double, double> trace_theorem_bounds(long long p, int d, int k, int m);

// Rational upper bound on d^{-1/k}: exact 1/d at k = 1, otherwise an
// outward-rounded binary float. Exposed for the bound tests.
Rational inverse_root_upper(int d, int k);

struct GfState {
  double x = 0;
  double z = 0;
  double z0 = 0;
  long iterations = 0;
  double g_s = 1;
  double g_d = 1;
};

double rainbow_z0(double x);
double rainbow_closed_form(double x, double z);

// Iterates the coupled pair from (1,1):
//   G_s <- 1 + x/z G_d G_s,   G_d <- 1 + 1/z G_s G_d.
// Requires z >= z0 = (1+sqrt(x))^2; below that the iteration may diverge.
// When trace is non-null it receives G_s after every step.
GfState rainbow_gf(double x, double z, long iters, std::vector<double>* trace = nullptr);

// F(x,y) = sum N(m,l) x^l y^m in closed form; matches rainbow_closed_form
// under y = 1/z.
double narayana_gf_closed_form(double x, double y);

}  // namespace rtm
