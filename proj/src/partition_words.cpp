#include "rtm/partition_words.hpp"

#include <algorithm>
#include <stdexcept>

#include "rtm/errors.hpp"

namespace rtm {

SetPartitionString SetPartitionString::from_word(const std::vector<int>& word) {
  SetPartitionString s;
  s.word_.reserve(word.size());
  std::vector<int> relabel;  // relabel[original letter] = canonical letter
  for (int v : word) {
    if (v < 1) throw std::domain_error("SetPartitionString: letters must be positive");
    if (static_cast<size_t>(v) >= relabel.size()) relabel.resize(static_cast<size_t>(v) + 1, 0);
    if (relabel[static_cast<size_t>(v)] == 0) {
      int next = 0;
      for (int r : relabel) next = std::max(next, r);
      relabel[static_cast<size_t>(v)] = next + 1;
    }
    s.word_.push_back(relabel[static_cast<size_t>(v)]);
  }
  return s;
}

SetPartitionString SetPartitionString::from_rgs(std::vector<int> word) {
  int maxseen = 0;
  for (int v : word) {
    if (v < 1 || v > maxseen + 1) throw std::domain_error("SetPartitionString: not a restricted-growth word");
    maxseen = std::max(maxseen, v);
  }
  SetPartitionString s;
  s.word_ = std::move(word);
  return s;
}

int SetPartitionString::block_count() const {
  int mx = 0;
  for (int v : word_) mx = std::max(mx, v);
  return mx;
}

std::vector<int> SetPartitionString::multiplicities() const {
  std::vector<int> mu(static_cast<size_t>(block_count()), 0);
  for (int v : word_) ++mu[static_cast<size_t>(v) - 1];
  return mu;
}

std::vector<std::vector<int>> SetPartitionString::blocks() const {
  std::vector<std::vector<int>> b(static_cast<size_t>(block_count()));
  for (int i = 0; i < length(); ++i) b[static_cast<size_t>(word_[static_cast<size_t>(i)]) - 1].push_back(i + 1);
  return b;
}

std::string SetPartitionString::key() const {
  const bool digits = block_count() <= 9;
  std::string k;
  for (size_t i = 0; i < word_.size(); ++i) {
    if (digits) {
      k.push_back(static_cast<char>('0' + word_[i]));
    } else {
      if (i) k.push_back(',');
      k += std::to_string(word_[i]);
    }
  }
  return k;
}

std::vector<SetPartitionString> enumerate_set_partitions(int m, int cap) {
  if (m < 1) throw std::domain_error("enumerate_set_partitions: m must be positive");
  if (m > cap) {
    throw ResourceError("enumerate_set_partitions: m = " + std::to_string(m) + " exceeds cap " +
                        std::to_string(cap) + " (pass a larger cap to override)");
  }
  std::vector<SetPartitionString> out;
  std::vector<int> word(static_cast<size_t>(m), 1);
  // Lexicographic odometer: a position may rise to one past the maximum of
  // the prefix before it.
  for (;;) {
    out.push_back(SetPartitionString::from_rgs(word));
    int t = m - 1;
    for (; t >= 1; --t) {
      int prefix_max = 0;
      for (int i = 0; i < t; ++i) prefix_max = std::max(prefix_max, word[static_cast<size_t>(i)]);
      if (word[static_cast<size_t>(t)] <= prefix_max) break;
    }
    if (t < 1) break;
    ++word[static_cast<size_t>(t)];
    std::fill(word.begin() + t + 1, word.end(), 1);
  }
  return out;
}

}  // namespace rtm
