#pragma once

#include <map>
#include <vector>

#include "rtm/combinatorics.hpp"
#include "rtm/partition_words.hpp"
#include "rtm/rational.hpp"
#include "rtm/reduction.hpp"

namespace rtm {

enum class EnsembleKind { Normalized, Gaussian, PartialTrace, Repeated };

const char* to_string(EnsembleKind k);

// Weight model for a single trace word: the normalized ensemble divides the
// stabilizer sum by rising factorials per block, the Gaussian (Wishart-type)
// ensemble is the plain Wick sum with d^{cycles - m}.
enum class StringWeight { Normalized, Gaussian };

struct MomentQuery {
  long long p = 1;
  int d = 2;
  int k = 1;
  int m = 1;
  EnsembleKind kind = EnsembleKind::Normalized;
  int d_a = 0;  // PartialTrace only
  int d_b = 0;

  Int dimension() const;  // d^k, or d_a^k for PartialTrace
  Rational x() const;     // p / dimension
};

struct MomentResult {
  Rational total;       // E^m, the expected trace of the m-th power
  Rational normalized;  // e^m = E^m / dimension
  std::map<int, Rational> by_block_count;
  std::map<ReductionClass, Rational> by_class;
};

// Exact expected trace weight of one canonical word. The stabilizer of the
// word is the direct product of the symmetric groups on its blocks; results
// are memoized per word so repeated queries at the same d are cheap.
Rational string_moment(const SetPartitionString& s, int d, StringWeight w);

// One-subsystem weight for the partial-trace model: each factor is a reduced
// operator of a random bipartite pure state on d_a x d_b.
Rational string_moment_ptrace(const SetPartitionString& s, int d_a, int d_b);

// E^m as a sum over canonical set partitions weighted by falling factorials
// of p. Valid for Normalized, Gaussian and PartialTrace queries.
MomentResult ensemble_moment(const MomentQuery& q, int cap = kDefaultPartitionCap);

// Coefficients c_l with E^m = sum_l c_l (p)_l for the normalized ensemble.
std::map<int, Rational> moment_coefficient_table(int m, int k, int d, int cap = kDefaultPartitionCap);

// The repeated-letter ensemble: factor j of state s reuses the pool vector
// ceil(s / p^{1 - j/k}). Requires p to be a perfect k-th power; cost is p^m
// inner evaluations, guarded at 10^7.
Rational repeated_moment(const MomentQuery& q);

Rational class_sum(const MomentQuery& q, ReductionClass cls, int cap = kDefaultPartitionCap);

// Closed forms for E^m, m <= 6, as tabulated for this family of ensembles.
Rational moment_closed_form(int m, long long p, int d, int k);

// Exact rational lower bound on E^m / Ê^m: the product over j < m of
// (d/(d+j))^k. It dominates exp(-m^2 k / 2d), so certifying with it proves
// the exponential form of the sandwich with no floating point.
Rational gaussian_comparison_factor(int m, int d, int k);

}  // namespace rtm
