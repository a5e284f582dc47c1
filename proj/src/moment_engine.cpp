#include "rtm/moment_engine.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "rtm/errors.hpp"

namespace rtm {

const char* to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::Normalized: return "normalized";
    case EnsembleKind::Gaussian: return "gaussian";
    case EnsembleKind::PartialTrace: return "ptrace";
    case EnsembleKind::Repeated: return "repeated";
  }
  return "?";
}

Int MomentQuery::dimension() const {
  if (kind == EnsembleKind::PartialTrace) return int_pow(Int{d_a}, static_cast<unsigned long>(k));
  return int_pow(Int{d}, static_cast<unsigned long>(k));
}

Rational MomentQuery::x() const { return Rational{Int{p}, dimension()}; }

namespace {

// Joint histogram over (cycles of C_m∘pi, cycles of pi) for pi ranging over
// the stabilizer of a word. All ensembles evaluate from this one table, so it
// is what gets memoized.
struct StabilizerStats {
  int m = 0;
  std::vector<long long> hist;  // (m+1) x (m+1), row = shifted cycles
  std::vector<int> mults;

  long long& at(int cyc_shifted, int cyc_plain) {
    return hist[static_cast<size_t>(cyc_shifted) * (static_cast<size_t>(m) + 1) + static_cast<size_t>(cyc_plain)];
  }
  long long at(int cyc_shifted, int cyc_plain) const {
    return hist[static_cast<size_t>(cyc_shifted) * (static_cast<size_t>(m) + 1) + static_cast<size_t>(cyc_plain)];
  }
};

int count_cycles(const std::vector<int>& map, int m, std::vector<char>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  int cycles = 0;
  for (int i = 1; i <= m; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    ++cycles;
    for (int j = i; !seen[static_cast<size_t>(j)]; j = map[static_cast<size_t>(j)]) seen[static_cast<size_t>(j)] = 1;
  }
  return cycles;
}

StabilizerStats compute_stats(const SetPartitionString& s) {
  const int m = s.length();
  StabilizerStats st;
  st.m = m;
  st.hist.assign((static_cast<size_t>(m) + 1) * (static_cast<size_t>(m) + 1), 0);
  st.mults = s.multiplicities();

  const auto blocks = s.blocks();
  auto assignment = blocks;  // per-block image positions, permuted in place
  std::vector<int> perm(static_cast<size_t>(m) + 1, 0);
  std::vector<int> shifted(static_cast<size_t>(m) + 1, 0);
  std::vector<char> seen(static_cast<size_t>(m) + 1, 0);

  for (;;) {
    for (size_t b = 0; b < blocks.size(); ++b) {
      for (size_t j = 0; j < blocks[b].size(); ++j) perm[static_cast<size_t>(blocks[b][j])] = assignment[b][j];
    }
    const int cp = count_cycles(perm, m, seen);
    for (int i = 1; i <= m; ++i) shifted[static_cast<size_t>(i)] = perm[static_cast<size_t>(i)] % m + 1;
    const int cc = count_cycles(shifted, m, seen);
    ++st.at(cc, cp);

    // odometer over the direct product of per-block symmetric groups
    size_t b = 0;
    while (b < blocks.size() && !std::next_permutation(assignment[b].begin(), assignment[b].end())) {
      assignment[b] = blocks[b];
      ++b;
    }
    if (b == blocks.size()) break;
  }
  return st;
}

std::shared_mutex g_stats_mutex;
std::unordered_map<std::string, StabilizerStats> g_stats_cache;

const StabilizerStats& stabilizer_stats(const SetPartitionString& s) {
  std::string key = s.key();
  {
    std::shared_lock lock(g_stats_mutex);
    auto it = g_stats_cache.find(key);
    if (it != g_stats_cache.end()) return it->second;
  }
  StabilizerStats st = compute_stats(s);
  std::unique_lock lock(g_stats_mutex);
  // emplace is idempotent under concurrent inserts of the same word
  return g_stats_cache.emplace(std::move(key), std::move(st)).first->second;
}

Int rising_product(int base, const std::vector<int>& mults) {
  Int den{1};
  for (int mu : mults) den *= factorial_family(base, mu, FactorialMode::Rising);
  return den;
}

void validate_common(const MomentQuery& q, int cap) {
  if (q.p < 1) throw std::domain_error("moment query: p must be positive");
  if (q.m < 1) throw std::domain_error("moment query: m must be positive");
  if (q.m > cap) {
    throw ResourceError("moment query: m = " + std::to_string(q.m) + " exceeds cap " + std::to_string(cap) +
                        " (pass a larger cap to override)");
  }
  if (q.kind == EnsembleKind::PartialTrace) {
    if (q.d_a < 2 || q.d_b < 2) throw std::domain_error("moment query: PartialTrace needs d_a, d_b >= 2");
  } else if (q.d < 2) {
    throw std::domain_error("moment query: d must be >= 2");
  }
  if (q.k < 1) throw std::domain_error("moment query: k must be positive");
}

}  // namespace

Rational string_moment(const SetPartitionString& s, int d, StringWeight w) {
  if (d < 2) throw std::domain_error("string_moment: d must be >= 2");
  if (s.empty()) return Rational{d};  // the empty trace word is tr I = d
  const auto& st = stabilizer_stats(s);
  const int m = st.m;
  Int num{0};
  for (int cc = 1; cc <= m; ++cc) {
    long long count = 0;
    for (int cp = 0; cp <= m; ++cp) count += st.at(cc, cp);
    if (count != 0) num += Int{count} * int_pow(Int{d}, static_cast<unsigned long>(cc));
  }
  if (w == StringWeight::Gaussian) return Rational{num, int_pow(Int{d}, static_cast<unsigned long>(m))};
  return Rational{num, rising_product(d, st.mults)};
}

Rational string_moment_ptrace(const SetPartitionString& s, int d_a, int d_b) {
  if (d_a < 2 || d_b < 2) throw std::domain_error("string_moment_ptrace: dimensions must be >= 2");
  if (s.empty()) return Rational{d_a};
  const auto& st = stabilizer_stats(s);
  const int m = st.m;
  Int num{0};
  for (int cc = 1; cc <= m; ++cc) {
    for (int cp = 1; cp <= m; ++cp) {
      const long long count = st.at(cc, cp);
      if (count != 0) {
        num += Int{count} * int_pow(Int{d_a}, static_cast<unsigned long>(cc)) *
               int_pow(Int{d_b}, static_cast<unsigned long>(cp));
      }
    }
  }
  return Rational{num, rising_product(d_a * d_b, st.mults)};
}

MomentResult ensemble_moment(const MomentQuery& q, int cap) {
  validate_common(q, cap);
  if (q.kind == EnsembleKind::Repeated) {
    throw std::domain_error("ensemble_moment: use repeated_moment for the repeated ensemble");
  }
  MomentResult r;
  for (const auto& s : enumerate_set_partitions(q.m, cap)) {
    const int l = s.block_count();
    const Int fall = factorial_family(q.p, l, FactorialMode::Falling);
    if (fall == 0) continue;  // more blocks than letters available
    Rational w;
    if (q.kind == EnsembleKind::PartialTrace) {
      w = string_moment_ptrace(s, q.d_a, q.d_b);
    } else {
      w = string_moment(s, q.d, q.kind == EnsembleKind::Gaussian ? StringWeight::Gaussian : StringWeight::Normalized);
    }
    const Rational term = Rational{fall} * rational_pow(w, q.k);
    r.by_block_count[l] += term;
    r.by_class[classify(s)] += term;
    r.total += term;
  }
  r.normalized = r.total / Rational{q.dimension()};
  return r;
}

std::map<int, Rational> moment_coefficient_table(int m, int k, int d, int cap) {
  MomentQuery q;
  q.m = m;
  q.k = k;
  q.d = d;
  validate_common(q, cap);
  std::map<int, Rational> table;
  for (const auto& s : enumerate_set_partitions(m, cap)) {
    table[s.block_count()] += rational_pow(string_moment(s, d, StringWeight::Normalized), k);
  }
  return table;
}

Rational repeated_moment(const MomentQuery& q) {
  if (q.kind != EnsembleKind::Repeated) throw std::domain_error("repeated_moment: kind must be Repeated");
  if (q.p < 1 || q.m < 1 || q.d < 2 || q.k < 1) throw std::domain_error("repeated_moment: bad parameters");
  // p must be a perfect k-th power
  const auto root = static_cast<long long>(std::llround(std::pow(static_cast<double>(q.p), 1.0 / q.k)));
  long long r = -1;
  for (long long cand = std::max(1LL, root - 2); cand <= root + 2; ++cand) {
    Int powed = int_pow(Int{cand}, static_cast<unsigned long>(q.k));
    if (powed == q.p) {
      r = cand;
      break;
    }
  }
  if (r < 0) throw std::domain_error("repeated_moment: p must be a perfect k-th power");

  double cost = 1.0;
  for (int i = 0; i < q.m; ++i) cost *= static_cast<double>(q.p);
  if (cost > 1e7) throw ResourceError("repeated_moment: p^m exceeds the 10^7 evaluation guard");

  // divisor for letter map j: letters s and s' collide at factor j iff
  // ceil(s / r^{k-j}) agree.
  std::vector<long long> divisor(static_cast<size_t>(q.k) + 1, 1);
  for (int j = 1; j <= q.k; ++j) {
    divisor[static_cast<size_t>(j)] = int_pow(Int{r}, static_cast<unsigned long>(q.k - j)).convert_to<long long>();
  }

  Rational total{0};
  std::vector<long long> letters(static_cast<size_t>(q.m), 1);
  std::vector<int> mapped(static_cast<size_t>(q.m), 0);
  for (;;) {
    Rational prod{1};
    for (int j = 1; j <= q.k; ++j) {
      const long long div = divisor[static_cast<size_t>(j)];
      for (int t = 0; t < q.m; ++t) mapped[static_cast<size_t>(t)] = static_cast<int>((letters[static_cast<size_t>(t)] + div - 1) / div);
      prod *= string_moment(SetPartitionString::from_word(mapped), q.d, StringWeight::Normalized);
    }
    total += prod;

    int t = q.m - 1;
    while (t >= 0 && letters[static_cast<size_t>(t)] == q.p) {
      letters[static_cast<size_t>(t)] = 1;
      --t;
    }
    if (t < 0) break;
    ++letters[static_cast<size_t>(t)];
  }
  return total;
}

Rational class_sum(const MomentQuery& q, ReductionClass cls, int cap) {
  const MomentResult r = ensemble_moment(q, cap);
  auto it = r.by_class.find(cls);
  return it == r.by_class.end() ? Rational{0} : it->second;
}

// Each non-Narayana term below is one family of trace words sharing a block
// count and a weight: the alternating core abab contributes 2/(d(d+1)), each
// unique letter inserted into it another 1/d, ababab gives 6/(d(d+1)(d+2)),
// abcbca-type words (3 of them) give (d+3)/(d^2(d+1)^2) and abcabc gives
// (2/(d(d+1)))^2. Counts were fixed by exhaustive enumeration of the words of
// each length and cross-checked against brute force and Monte Carlo.
Rational moment_closed_form(int m, long long p, int d, int k) {
  if (m < 1 || m > 6) throw std::domain_error("moment_closed_form: tabulated only for 1 <= m <= 6");
  if (p < 1 || d < 2 || k < 1) throw std::domain_error("moment_closed_form: bad parameters");
  const auto ku = static_cast<unsigned long>(k);
  const Int dk = int_pow(Int{d}, ku);
  const Int d1k = int_pow(Int{d + 1}, ku);
  const Int d2k = int_pow(Int{d + 2}, ku);
  const Int two_k = int_pow(Int{2}, ku);
  auto fall = [&](long long t) { return factorial_family(p, t, FactorialMode::Falling); };
  auto over = [&](const Int& num, const Int& den) { return Rational{num, den}; };

  Rational e{p};
  if (m == 1) return e;
  if (m == 2) return e + over(fall(2), dk);
  if (m == 3) return e + over(3 * fall(2), dk) + over(fall(3), dk * dk);
  if (m == 4) {
    return e + over(6 * fall(2), dk) + over(6 * fall(3), dk * dk) + over(fall(4), dk * dk * dk) +
           over(two_k * fall(2), dk * d1k);
  }
  if (m == 5) {
    return e + over(10 * fall(2), dk) + over(20 * fall(3), dk * dk) + over(10 * fall(4), dk * dk * dk) +
           over(fall(5), int_pow(dk, 4)) + over(5 * two_k * fall(2), dk * d1k) +
           over(5 * two_k * fall(3), dk * dk * d1k);
  }
  return e + over(15 * fall(2), dk) + over(50 * fall(3), dk * dk) + over(50 * fall(4), dk * dk * dk) +
         over(15 * fall(5), int_pow(dk, 4)) + over(fall(6), int_pow(dk, 5)) +
         over(15 * two_k * fall(2), dk * d1k) + over(int_pow(Int{6}, ku) * fall(2), dk * d1k * d2k) +
         over(36 * two_k * fall(3), dk * dk * d1k) + over(int_pow(Int{4}, ku) * fall(3), dk * dk * d1k * d1k) +
         over(3 * int_pow(Int{d + 3}, ku) * fall(3), dk * dk * d1k * d1k) +
         over(15 * two_k * fall(4), dk * dk * dk * d1k);
}

Rational gaussian_comparison_factor(int m, int d, int k) {
  if (m < 1 || d < 2 || k < 1) throw std::domain_error("gaussian_comparison_factor: bad parameters");
  Rational f{1};
  for (int j = 1; j <= m - 1; ++j) f *= Rational{d, d + j};
  return rational_pow(f, k);
}

}  // namespace rtm
