#include "rtm/reduction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rtm {

const char* to_string(ReductionClass c) {
  switch (c) {
    case ReductionClass::CompletelyReducible: return "completely-reducible";
    case ReductionClass::Irreducible: return "irreducible";
    case ReductionClass::Mixed: return "mixed";
  }
  return "?";
}

namespace {

// Collapse runs of equal letters, cyclically: the last and first positions
// are adjacent. "11332221" becomes a rotation of "321". Returns true if
// anything was removed.
bool collapse_cyclic_repeats(std::vector<int>& w) {
  bool changed = false;
  bool again = true;
  while (again && w.size() >= 2) {
    again = false;
    std::vector<int> out;
    out.reserve(w.size());
    for (int v : w) {
      if (out.empty() || out.back() != v) out.push_back(v);
    }
    if (out.size() != w.size()) changed = true;
    // wrap-around: front and back are cyclic neighbours
    while (out.size() >= 2 && out.front() == out.back()) {
      out.pop_back();
      changed = true;
      again = true;  // removal can expose a new adjacent pair
    }
    w = std::move(out);
  }
  return changed;
}

// Delete every letter occurring exactly once; returns how many were deleted.
int remove_unique_letters(std::vector<int>& w) {
  std::map<int, int> count;
  for (int v : w) ++count[v];
  std::vector<int> out;
  out.reserve(w.size());
  int removed = 0;
  for (int v : w) {
    if (count[v] == 1) {
      ++removed;
    } else {
      out.push_back(v);
    }
  }
  w = std::move(out);
  return removed;
}

bool is_fixed_point(const std::vector<int>& w) {
  if (w.empty()) return true;
  const size_t n = w.size();
  if (n >= 2) {
    for (size_t i = 0; i < n; ++i) {
      if (w[i] == w[(i + 1) % n]) return false;
    }
  }
  std::map<int, int> count;
  for (int v : w) ++count[v];
  for (const auto& [letter, c] : count) {
    (void)letter;
    if (c == 1) return false;
  }
  return n >= 2;
}

}  // namespace

ReductionResult reduce(const std::vector<int>& word, RuleOrder order) {
  if (word.empty()) throw std::domain_error("reduce: empty word");
  std::vector<int> w = word;
  ReductionResult r;
  bool any_change = false;
  for (;;) {
    bool changed = false;
    if (order == RuleOrder::RepeatsFirst) {
      changed |= collapse_cyclic_repeats(w);
      const int u = remove_unique_letters(w);
      r.removed_unique += u;
      changed |= u > 0;
    } else {
      const int u = remove_unique_letters(w);
      r.removed_unique += u;
      changed |= u > 0;
      changed |= collapse_cyclic_repeats(w);
    }
    if (!changed) break;
    any_change = true;
  }
  r.reduced = SetPartitionString::from_word(w);
  if (w.empty()) {
    r.cls = ReductionClass::CompletelyReducible;
  } else if (!any_change) {
    r.cls = ReductionClass::Irreducible;
  } else {
    r.cls = ReductionClass::Mixed;
  }
  return r;
}

ReductionClass classify(const std::vector<int>& word) {
  if (word.empty()) throw std::domain_error("classify: empty word");
  if (is_fixed_point(word)) return ReductionClass::Irreducible;
  return reduce(word).cls;
}

ReductionClass classify(const SetPartitionString& s) { return classify(s.word()); }

void validate_ab_pair(const ABPair& ab, int m) {
  const size_t l = ab.a.size();
  if (l == 0 || ab.b.size() != l) throw std::domain_error("ABPair: a and b must be nonempty, equal length");
  if (ab.a.front() != 1) throw std::domain_error("ABPair: a_1 must be 1");
  if (ab.b.back() != m) throw std::domain_error("ABPair: b_l must be m");
  for (size_t i = 0; i < l; ++i) {
    if (ab.a[i] < 1 || ab.a[i] > m || ab.b[i] < 1 || ab.b[i] > m)
      throw std::domain_error("ABPair: entries out of range");
    if (i > 0 && (ab.a[i] <= ab.a[i - 1] || ab.b[i] <= ab.b[i - 1]))
      throw std::domain_error("ABPair: sequences must be strictly increasing");
    if (ab.a[i] > ab.b[i]) throw std::domain_error("ABPair: requires a_i <= b_i");
    if (i > 0 && ab.a[i] > ab.b[i - 1] + 1)
      throw std::domain_error("ABPair: first occurrences outrun the cumulative multiplicities");
  }
}

bool is_valid_ab_pair(const ABPair& ab, int m) {
  try {
    validate_ab_pair(ab, m);
  } catch (const std::domain_error&) {
    return false;
  }
  return true;
}

SetPartitionString narayana_decode(const ABPair& ab, int m) {
  validate_ab_pair(ab, m);
  const int l = static_cast<int>(ab.a.size());
  std::vector<int> mu(static_cast<size_t>(l) + 1, 0);
  for (int i = 1; i <= l; ++i) mu[static_cast<size_t>(i)] = ab.b[static_cast<size_t>(i) - 1] - (i > 1 ? ab.b[static_cast<size_t>(i) - 2] : 0);
  // Keep placing the current letter until its budget runs out (fall back to
  // the previous letter still available) or the next first-occurrence
  // position starts a new letter.
  std::vector<int> word(static_cast<size_t>(m), 0);
  int s = 0;
  int next_first = 0;  // index into ab.a
  for (int t = 1; t <= m; ++t) {
    if (next_first < l && t == ab.a[static_cast<size_t>(next_first)]) {
      s = next_first + 1;
      ++next_first;
    }
    if (s < 1) throw std::domain_error("narayana_decode: inconsistent pair (ran out of letters)");
    word[static_cast<size_t>(t) - 1] = s;
    --mu[static_cast<size_t>(s)];
    while (s >= 1 && mu[static_cast<size_t>(s)] == 0) --s;
  }
  SetPartitionString out = SetPartitionString::from_rgs(word);
  if (classify(out) != ReductionClass::CompletelyReducible)
    throw std::domain_error("narayana_decode: pair does not decode to a completely reducible word");
  return out;
}

ABPair narayana_encode(const SetPartitionString& s) {
  if (s.empty()) throw std::domain_error("narayana_encode: empty word");
  if (classify(s) != ReductionClass::CompletelyReducible)
    throw std::domain_error("narayana_encode: word is not completely reducible");
  const auto& w = s.word();
  const int l = s.block_count();
  ABPair ab;
  ab.a.resize(static_cast<size_t>(l));
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) ab.a[static_cast<size_t>(w[static_cast<size_t>(i)]) - 1] = i + 1;
  const auto mu = s.multiplicities();
  ab.b.resize(static_cast<size_t>(l));
  int cum = 0;
  for (int i = 0; i < l; ++i) {
    cum += mu[static_cast<size_t>(i)];
    ab.b[static_cast<size_t>(i)] = cum;
  }
  validate_ab_pair(ab, s.length());
  return ab;
}

}  // namespace rtm
