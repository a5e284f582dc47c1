#pragma once

#include <string>
#include <vector>

namespace rtm {

inline constexpr int kDefaultPartitionCap = 8;

// A set partition of trace positions {1..m}, stored as its canonical
// restricted-growth word: word[0] = 1 and each later letter is at most one
// past the running maximum. Letter i marks the positions of block i.
class SetPartitionString {
 public:
  SetPartitionString() = default;

  // Relabels an arbitrary word over positive integers by first occurrence,
  // producing the canonical restricted-growth form of its equality pattern.
  static SetPartitionString from_word(const std::vector<int>& word);

  // Accepts only words already in restricted-growth form.
  static SetPartitionString from_rgs(std::vector<int> word);

  const std::vector<int>& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool empty() const { return word_.empty(); }
  int block_count() const;
  std::vector<int> multiplicities() const;
  // 1-based positions of each block, indexed by letter-1.
  std::vector<std::vector<int>> blocks() const;

  // Compact text form: digits when all letters are single digits, otherwise
  // comma separated. Doubles as the memoization key.
  std::string key() const;

  bool operator==(const SetPartitionString& o) const { return word_ == o.word_; }
  bool operator<(const SetPartitionString& o) const { return word_ < o.word_; }

 private:
  std::vector<int> word_;
};

// All restricted-growth words of length m in lexicographic order. The count
// is the Bell number of m. Callers that need m past the default cap must say
// so explicitly; the guard exists because downstream stabilizer sums grow
// factorially.
std::vector<SetPartitionString> enumerate_set_partitions(int m, int cap = kDefaultPartitionCap);

}  // namespace rtm
