#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "rtm/combinatorics.hpp"
#include "rtm/permutation.hpp"

using namespace rtm;

TEST_CASE("factorial families") {
  CHECK(factorial_family(5, 3, FactorialMode::Falling) == 60);
  CHECK(factorial_family(7, 0, FactorialMode::Falling) == 1);
  CHECK(factorial_family(7, 0, FactorialMode::Rising) == 1);
  CHECK(factorial_family(2, 3, FactorialMode::Rising) == 24);
  CHECK(factorial_family(3, 5, FactorialMode::Falling) == 0);
  CHECK(factorial_family(0, 0, FactorialMode::Falling) == 1);
  CHECK_THROWS_AS(factorial_family(-1, 2, FactorialMode::Falling), std::domain_error);
}

TEST_CASE("narayana values and row sums") {
  CHECK(narayana(4, 2) == 6);
  CHECK(narayana(6, 3) == 50);
  for (int m = 1; m <= 9; ++m) CHECK(narayana(m, 1) == 1);
  CHECK(narayana(0, 0) == 1);
  CHECK(narayana(5, 0) == 0);
  CHECK_THROWS_AS(narayana(4, 5), std::domain_error);
  CHECK_THROWS_AS(narayana(4, -1), std::domain_error);

  for (int m = 1; m <= 20; ++m) {
    Int sum{0};
    for (const auto& v : narayana_row(m).values) sum += v;
    CHECK(sum == catalan(m));
    CHECK(catalan(m) == binomial(2 * m, m) / (m + 1));
  }
}

TEST_CASE("narayana matches the bracketing count") {
  for (int m = 1; m <= 8; ++m) {
    const auto hist = oracle::bracketing_histogram(m);
    for (int l = 1; l <= m; ++l) {
      const auto it = hist.find(l);
      const long long observed = it == hist.end() ? 0 : it->second;
      CHECK(narayana(m, l) == observed);
    }
  }
}

TEST_CASE("narayana recurrence") {
  // N(m,l) = N(m-1,l-1) - N(m-1,l) + sum_{i=1}^m sum_j N(i-1,j) N(m-i,l-j).
  // The inner sum must include the i=1, j=0 corner term N(0,0) N(m-1,l)
  // (which cancels the -N(m-1,l)); this is the identity the generating
  // function F = 1 + xyF + y(F^2 - F) encodes.
  for (int m = 2; m <= 12; ++m) {
    for (int l = 1; l <= m; ++l) {
      Int rhs = (l - 1 <= m - 1 ? narayana(m - 1, l - 1) : Int{0});
      rhs -= (l <= m - 1 ? narayana(m - 1, l) : Int{0});
      for (int i = 1; i <= m; ++i) {
        for (int j = 0; j <= std::min(i - 1, l); ++j) {
          if (l - j <= m - i) rhs += narayana(i - 1, j) * narayana(m - i, l - j);
        }
      }
      CHECK(narayana(m, l) == rhs);
    }
  }
}

TEST_CASE("beta evaluation") {
  const Rational x{3, 7};
  CHECK(beta_eval(1, x) == x);
  CHECK(beta_eval(3, Rational{1}) == 5);
  CHECK(beta_eval(2, Rational{2}) == 6);
  CHECK(beta_eval(0, x) == 1);
}

TEST_CASE("beta envelope, exact at perfect-square ratios") {
  // x (1+s)^{2m} / (2 m^2 (1+s)^3) <= beta_m(x) <= (1+s)^{2m} with s = sqrt(x)
  const std::vector<std::pair<Rational, Rational>> grid = {
      {Rational{1, 4}, Rational{1, 2}}, {Rational{1}, Rational{1}}, {Rational{4}, Rational{2}}, {Rational{9}, Rational{3}}};
  for (const auto& [x, s] : grid) {
    for (int m = 1; m <= 50; ++m) {
      const Rational beta = beta_eval(m, x);
      const Rational edge_pow = rational_pow(Rational{1} + s, 2 * m);
      CHECK(beta <= edge_pow);
      const Rational lower = x * edge_pow / (Rational{2 * m * m} * rational_pow(Rational{1} + s, 3));
      CHECK(lower <= beta);
    }
  }
}

TEST_CASE("beta envelope, floating point away from perfect squares") {
  for (long double x : {0.7L, 2.0L, 5.3L}) {
    const long double s = std::sqrt(x);
    for (int m = 1; m <= 30; ++m) {
      const long double beta = beta_eval_real(m, x);
      const long double upper = std::pow(1 + s, 2.0L * m);
      const long double lower = x * upper / (2.0L * m * m * std::pow(1 + s, 3.0L));
      CHECK(beta <= upper * (1 + 1e-12L));
      CHECK(lower * (1 - 1e-12L) <= beta);
    }
  }
}

TEST_CASE("generating function recurrence through order 12") {
  // F = 1 + x y F + y (F^2 - F) as truncated series with beta_m coefficients
  for (const Rational& x : {Rational{1, 2}, Rational{1}, Rational{3}}) {
    const int order = 12;
    std::vector<Rational> f(order + 1);
    for (int m = 0; m <= order; ++m) f[static_cast<size_t>(m)] = beta_eval(m, x);
    std::vector<Rational> f2(order + 1, Rational{0});
    for (int a = 0; a <= order; ++a) {
      for (int b = 0; a + b <= order; ++b) f2[static_cast<size_t>(a + b)] += f[static_cast<size_t>(a)] * f[static_cast<size_t>(b)];
    }
    for (int m = 0; m <= order; ++m) {
      Rational rhs = m == 0 ? Rational{1} : Rational{0};
      if (m >= 1) rhs += x * f[static_cast<size_t>(m) - 1] + f2[static_cast<size_t>(m) - 1] - f[static_cast<size_t>(m) - 1];
      CHECK(f[static_cast<size_t>(m)] == rhs);
    }
  }
}

TEST_CASE("permutation basics") {
  const auto id4 = Permutation::identity(4);
  CHECK(id4.cycle_count() == 4);
  const auto t = Permutation::transposition(4, 1, 3);
  CHECK(t(1) == 3);
  CHECK(t(3) == 1);
  CHECK(t(2) == 2);
  CHECK(t.cycle_count() == 3);
  CHECK(compose(t, t) == id4);
  CHECK_THROWS_AS(Permutation::from_one_based({1, 1, 2}), std::domain_error);
}

TEST_CASE("shifted cycle count examples") {
  CHECK(shifted_cycle_count(Permutation::identity(4)) == 1);
  CHECK(shifted_cycle_count(Permutation::transposition(4, 1, 3)) == 2);
  const auto both = compose(Permutation::transposition(4, 1, 3), Permutation::transposition(4, 2, 4));
  CHECK(shifted_cycle_count(both) == 1);
  CHECK(shifted_cycle_count(Permutation::identity(1)) == 1);
}

TEST_CASE("cycle-sum bound, exhaustive") {
  // cyc(C_m pi) + cyc(pi) <= m + 1 over all of S_m
  for (int m = 1; m <= 7; ++m) {
    std::vector<int> image(static_cast<size_t>(m));
    std::iota(image.begin(), image.end(), 1);
    do {
      const auto pi = Permutation::from_one_based(image);
      CHECK(shifted_cycle_count(pi) + pi.cycle_count() <= m + 1);
    } while (std::next_permutation(image.begin(), image.end()));
  }
}
