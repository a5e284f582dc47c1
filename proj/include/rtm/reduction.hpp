#pragma once

#include <vector>

#include "rtm/partition_words.hpp"

namespace rtm {

enum class ReductionClass { CompletelyReducible, Irreducible, Mixed };

const char* to_string(ReductionClass c);

struct ReductionResult {
  SetPartitionString reduced;  // empty word iff completely reducible
  int removed_unique = 0;      // total unique-letter deletions, so E[s] = d^-u E[reduced]
  ReductionClass cls = ReductionClass::CompletelyReducible;
};

enum class RuleOrder { RepeatsFirst, UniquesFirst };

// Alternates the two simplification rules until neither applies:
//   - collapse runs of equal letters, treating the word cyclically,
//   - delete letters that occur exactly once.
// The fixed point is independent of the rule order; the parameter exists so
// tests can assert that.
ReductionResult reduce(const std::vector<int>& word, RuleOrder order = RuleOrder::RepeatsFirst);

ReductionClass classify(const std::vector<int>& word);
ReductionClass classify(const SetPartitionString& s);

// First-occurrence positions a (a_1 = 1, strictly increasing) paired with
// cumulative block multiplicities b (strictly increasing, b_l = m), with
// a_i <= b_i and a_{i+1} <= b_i + 1. The last condition is what makes a pair
// realizable: positions before the first occurrence of letter i+1 hold only
// letters 1..i, so the first occurrences can never outrun the cumulative
// multiplicities. These pairs are in bijection with completely reducible
// words, N(m,l) of them per block count l.
struct ABPair {
  std::vector<int> a;
  std::vector<int> b;
};

void validate_ab_pair(const ABPair& ab, int m);
bool is_valid_ab_pair(const ABPair& ab, int m);

SetPartitionString narayana_decode(const ABPair& ab, int m);
ABPair narayana_encode(const SetPartitionString& s);

}  // namespace rtm
