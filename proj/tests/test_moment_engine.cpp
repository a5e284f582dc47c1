#include <doctest.h>

#include <algorithm>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "rtm/errors.hpp"
#include "rtm/moment_engine.hpp"

using namespace rtm;

namespace {

MomentQuery query(long long p, int d, int k, int m, EnsembleKind kind = EnsembleKind::Normalized) {
  MomentQuery q;
  q.p = p;
  q.d = d;
  q.k = k;
  q.m = m;
  q.kind = kind;
  return q;
}

}  // namespace

TEST_CASE("string moment examples") {
  CHECK(string_moment(SetPartitionString::from_rgs({1, 2, 1, 2}), 2, StringWeight::Normalized) == Rational{1, 3});
  for (int d : {2, 3, 5}) {
    CHECK(string_moment(SetPartitionString::from_rgs({1, 2, 1, 2}), d, StringWeight::Normalized) ==
          Rational{2, static_cast<long long>(d) * (d + 1)});
  }
  // all-distinct words keep only the identity, one long cycle
  for (int m = 1; m <= 6; ++m) {
    std::vector<int> w(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) w[static_cast<size_t>(i)] = i + 1;
    for (int d : {2, 3}) {
      CHECK(string_moment(SetPartitionString::from_rgs(w), d, StringWeight::Normalized) ==
            rational_pow(Rational{d}, 1 - m));
    }
  }
  CHECK(string_moment(SetPartitionString::from_rgs({1, 1}), 2, StringWeight::Gaussian) == Rational{3, 2});
  // a run collapses without a 1/d cost: 12122 has the same weight as 1212
  for (int d : {2, 3}) {
    CHECK(string_moment(SetPartitionString::from_rgs({1, 2, 1, 2, 2}), d, StringWeight::Normalized) ==
          Rational{2, static_cast<long long>(d) * (d + 1)});
  }
}

TEST_CASE("string moments are rotation invariant") {
  // trace words are cyclic: rotating a word must not change any weight
  for (int m = 2; m <= 5; ++m) {
    for (const auto& s : enumerate_set_partitions(m)) {
      const Rational norm = string_moment(s, 3, StringWeight::Normalized);
      const Rational gauss = string_moment(s, 3, StringWeight::Gaussian);
      const Rational pt = string_moment_ptrace(s, 3, 2);
      std::vector<int> w = s.word();
      for (int r = 1; r < m; ++r) {
        std::rotate(w.begin(), w.begin() + 1, w.end());
        const auto rotated = SetPartitionString::from_word(w);
        CHECK(string_moment(rotated, 3, StringWeight::Normalized) == norm);
        CHECK(string_moment(rotated, 3, StringWeight::Gaussian) == gauss);
        CHECK(string_moment_ptrace(rotated, 3, 2) == pt);
      }
    }
  }
}

TEST_CASE("string moments match the brute-force stabilizer oracle") {
  for (int m = 1; m <= 5; ++m) {
    for (const auto& s : enumerate_set_partitions(m)) {
      for (int d : {2, 3}) {
        CHECK(string_moment(s, d, StringWeight::Normalized) == oracle::string_moment(s.word(), d, oracle::Weight::Normalized));
        CHECK(string_moment(s, d, StringWeight::Gaussian) == oracle::string_moment(s.word(), d, oracle::Weight::Gaussian));
      }
    }
  }
}

TEST_CASE("partial trace string moments") {
  CHECK(string_moment_ptrace(SetPartitionString::from_rgs({1}), 3, 2) == 1);
  CHECK(string_moment_ptrace(SetPartitionString::from_rgs({1, 1}), 2, 2) == Rational{4, 5});
  for (int m = 1; m <= 5; ++m) {
    std::vector<int> w(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) w[static_cast<size_t>(i)] = i + 1;
    CHECK(string_moment_ptrace(SetPartitionString::from_rgs(w), 3, 2) == rational_pow(Rational{3}, 1 - m));
  }
}

TEST_CASE("ensemble moment examples") {
  CHECK(ensemble_moment(query(3, 2, 1, 2)).total == 6);
  for (int m = 1; m <= 6; ++m) {
    CHECK(ensemble_moment(query(1, 3, 2, m)).total == 1);  // a single state is a projector
  }
  // closed-form evaluation at p=2, d=2, k=2, m=4: 2 + 3 + 2/9
  const Rational e4 = ensemble_moment(query(2, 2, 2, 4)).total;
  CHECK(e4 == Rational{47, 9});
  CHECK(e4 == moment_closed_form(4, 2, 2, 2));
  CHECK(e4 == oracle::ensemble_moment(2, 2, 2, 4, oracle::Weight::Normalized));
}

TEST_CASE("ensemble moments match the brute-force oracle") {
  struct Case {
    long long p;
    int d, k, m;
  };
  for (const auto& c : {Case{2, 2, 1, 4}, Case{3, 2, 2, 3}, Case{4, 3, 1, 3}, Case{2, 3, 3, 4}, Case{3, 4, 2, 4}}) {
    CHECK(ensemble_moment(query(c.p, c.d, c.k, c.m)).total ==
          oracle::ensemble_moment(c.p, c.d, c.k, c.m, oracle::Weight::Normalized));
    CHECK(ensemble_moment(query(c.p, c.d, c.k, c.m, EnsembleKind::Gaussian)).total ==
          oracle::ensemble_moment(c.p, c.d, c.k, c.m, oracle::Weight::Gaussian));
  }
}

TEST_CASE("moment result bookkeeping") {
  const auto r = ensemble_moment(query(3, 2, 2, 4));
  Rational by_blocks{0}, by_class{0};
  for (const auto& [l, v] : r.by_block_count) by_blocks += v;
  for (const auto& [c, v] : r.by_class) by_class += v;
  CHECK(by_blocks == r.total);
  CHECK(by_class == r.total);
  CHECK(r.total > 0);
  CHECK(r.normalized == r.total / 4);
  for (const auto& [l, v] : r.by_block_count) {
    CHECK(l >= 1);
    CHECK(v > 0);
  }
}

TEST_CASE("coefficient tables") {
  for (int d : {2, 3, 4}) {
    const auto t4 = moment_coefficient_table(4, 1, d);
    CHECK(t4.at(2) == Rational{6, d} + Rational{2, static_cast<long long>(d) * (d + 1)});
    const auto t5 = moment_coefficient_table(5, 1, d);
    CHECK(t5.at(2) == Rational{10, d} + Rational{10, static_cast<long long>(d) * (d + 1)});
    const auto t1 = moment_coefficient_table(1, 1, d);
    CHECK(t1.at(1) == 1);
  }
  // E = sum_l c_l (p)_l reconstructs the ensemble moment
  for (long long p : {2LL, 5LL}) {
    const auto table = moment_coefficient_table(4, 2, 3);
    Rational total{0};
    for (const auto& [l, c] : table) total += c * Rational{factorial_family(p, l, FactorialMode::Falling)};
    CHECK(total == ensemble_moment(query(p, 3, 2, 4)).total);
  }
}

TEST_CASE("positivity and merge monotonicity") {
  for (int m = 1; m <= 6; ++m) {
    for (const auto& s : enumerate_set_partitions(m)) {
      for (int d : {2, 3}) {
        const Rational base = string_moment(s, d, StringWeight::Normalized);
        CHECK(base > 0);
        const int blocks = s.block_count();
        for (int a = 1; a <= blocks; ++a) {
          for (int b = a + 1; b <= blocks; ++b) {
            std::vector<int> merged = s.word();
            for (int& v : merged) {
              if (v == b) v = a;
            }
            const Rational after = string_moment(SetPartitionString::from_word(merged), d, StringWeight::Normalized);
            CHECK(after >= base);
          }
        }
      }
    }
  }
}

TEST_CASE("class sums") {
  // no irreducible words of length two
  CHECK(class_sum(query(5, 2, 1, 2), ReductionClass::Irreducible) == 0);
  // at m = 4 the only irreducible word is 1212
  for (int d : {2, 3}) {
    for (int k : {1, 2}) {
      const Rational irr = class_sum(query(5, d, k, 4), ReductionClass::Irreducible);
      const Rational want{int_pow(Int{2}, static_cast<unsigned long>(k)) * factorial_family(5, 2, FactorialMode::Falling),
                          int_pow(Int{d} * Int{d + 1}, static_cast<unsigned long>(k))};
      CHECK(irr == want);
    }
  }
  // the three classes partition the total
  const auto q = query(4, 3, 2, 6);
  const Rational total = ensemble_moment(q).total;
  const Rational sum = class_sum(q, ReductionClass::CompletelyReducible) + class_sum(q, ReductionClass::Irreducible) +
                       class_sum(q, ReductionClass::Mixed);
  CHECK(total == sum);
}

TEST_CASE("gaussian sandwich on a spot grid") {
  for (long long p : {2LL, 4LL}) {
    for (int d : {2, 3}) {
      for (int k : {1, 2}) {
        for (int m = 1; m <= 5; ++m) {
          const Rational e = ensemble_moment(query(p, d, k, m)).total;
          const Rational eg = ensemble_moment(query(p, d, k, m, EnsembleKind::Gaussian)).total;
          CHECK(e <= eg);
          CHECK(gaussian_comparison_factor(m, d, k) * eg <= e);
        }
      }
    }
  }
}

TEST_CASE("repeated ensemble") {
  // k = 1 is the independent ensemble
  for (long long p : {2LL, 3LL, 4LL}) {
    for (int m = 1; m <= 4; ++m) {
      MomentQuery rep = query(p, 2, 1, m, EnsembleKind::Repeated);
      CHECK(repeated_moment(rep) == ensemble_moment(query(p, 2, 1, m)).total);
    }
  }
  // m = 1 is always p
  CHECK(repeated_moment(query(9, 3, 2, 1, EnsembleKind::Repeated)) == 9);
  // hand-expanded value at p=4, k=2, m=2: 4 + 4/d + 8/d^2
  CHECK(repeated_moment(query(4, 2, 2, 2, EnsembleKind::Repeated)) == 8);
  CHECK(repeated_moment(query(4, 3, 2, 2, EnsembleKind::Repeated)) == Rational{4} + Rational{4, 3} + Rational{8, 9});
  // sharing factors merges letters, and merges only increase string weights,
  // so the repeated ensemble dominates the independent one
  for (int d : {2, 3}) {
    for (int m = 1; m <= 4; ++m) {
      CHECK(ensemble_moment(query(4, d, 2, m)).total <= repeated_moment(query(4, d, 2, m, EnsembleKind::Repeated)));
    }
  }
  CHECK_THROWS_AS(repeated_moment(query(3, 2, 2, 2, EnsembleKind::Repeated)), std::domain_error);
  CHECK_THROWS_AS(repeated_moment(query(100, 2, 1, 5, EnsembleKind::Repeated)), ResourceError);
}

TEST_CASE("partial trace ensemble comparison") {
  for (int d_a : {4, 6}) {
    const int d_b = 2;
    for (int k : {1, 2}) {
      for (int m = 1; m <= 4; ++m) {
        Rational qf{1};
        for (int j = 1; j <= m - 1; ++j) qf *= Rational{d_a + j * d_b, d_a};
        qf = rational_pow(qf, k);
        for (long long p : {2LL, 4LL}) {
          MomentQuery pt = query(p, 0, k, m, EnsembleKind::PartialTrace);
          pt.d_a = d_a;
          pt.d_b = d_b;
          const Rational lhs = ensemble_moment(pt).total;
          const Rational rhs = ensemble_moment(query(p, d_a / d_b, k, m)).total * qf *
                               rational_pow(Rational{d_b}, static_cast<long>(k) * (1 - m));
          CHECK(lhs <= rhs);
        }
      }
    }
  }
}

TEST_CASE("string moment cache is safe under concurrent use") {
  std::vector<Rational> results(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&results, t] {
      Rational acc{0};
      for (const auto& s : enumerate_set_partitions(6)) acc += string_moment(s, 5, StringWeight::Normalized);
      results[static_cast<size_t>(t)] = acc;
    });
  }
  for (auto& th : pool) th.join();
  for (int t = 1; t < 4; ++t) CHECK(results[static_cast<size_t>(t)] == results[0]);
}

TEST_CASE("guards and validation") {
  CHECK_THROWS_AS(ensemble_moment(query(3, 2, 1, 9)), ResourceError);
  CHECK_NOTHROW(ensemble_moment(query(3, 2, 1, 9), 9));
  CHECK_THROWS_AS(ensemble_moment(query(3, 1, 1, 2)), std::domain_error);
  CHECK_THROWS_AS(ensemble_moment(query(3, 2, 1, 2, EnsembleKind::Repeated)), std::domain_error);
  CHECK_THROWS_AS(moment_closed_form(7, 2, 2, 1), std::domain_error);
}
