#pragma once

// Brute-force reference implementations used only by the tests. These follow
// the definitions as directly as possible (recursive enumeration, no falling
// factorial collapse, no memoization) so they stay independent of the code
// paths they check.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rtm/rational.hpp"

namespace oracle {

enum class Weight { Normalized, Gaussian };

// Expected trace weight of one word over positive letters, by enumerating the
// stabilizer recursively (all bijections of each letter's positions).
inline rtm::Rational string_moment(const std::vector<int>& word, int d, Weight w) {
  const int m = static_cast<int>(word.size());
  std::map<int, std::vector<int>> positions;  // letter -> 1-based positions
  for (int i = 0; i < m; ++i) positions[word[static_cast<size_t>(i)]].push_back(i + 1);

  std::vector<int> perm(static_cast<size_t>(m) + 1, 0);
  rtm::Int numerator{0};
  std::function<void(std::map<int, std::vector<int>>::const_iterator)> place =
      [&](std::map<int, std::vector<int>>::const_iterator it) {
        if (it == positions.end()) {
          std::vector<char> seen(static_cast<size_t>(m) + 1, 0);
          int cycles = 0;
          for (int i = 1; i <= m; ++i) {
            if (seen[static_cast<size_t>(i)]) continue;
            ++cycles;
            int j = i;
            while (!seen[static_cast<size_t>(j)]) {
              seen[static_cast<size_t>(j)] = 1;
              j = perm[static_cast<size_t>(j)] % m + 1;
            }
          }
          numerator += rtm::int_pow(rtm::Int{d}, static_cast<unsigned long>(cycles));
          return;
        }
        const auto& pos = it->second;
        std::vector<char> used(pos.size(), 0);
        std::vector<int> image(pos.size(), 0);
        std::function<void(size_t)> assign = [&](size_t idx) {
          if (idx == pos.size()) {
            for (size_t i = 0; i < pos.size(); ++i) perm[static_cast<size_t>(pos[i])] = image[i];
            place(std::next(it));
            return;
          }
          for (size_t c = 0; c < pos.size(); ++c) {
            if (used[c]) continue;
            used[c] = 1;
            image[idx] = pos[c];
            assign(idx + 1);
            used[c] = 0;
          }
        };
        assign(0);
      };
  place(positions.begin());

  if (w == Weight::Gaussian) {
    return rtm::Rational{numerator, rtm::int_pow(rtm::Int{d}, static_cast<unsigned long>(m))};
  }
  rtm::Int den{1};
  for (const auto& [letter, pos] : positions) {
    (void)letter;
    for (size_t j = 0; j < pos.size(); ++j) den *= rtm::Int{d + static_cast<int>(j)};
  }
  return rtm::Rational{numerator, den};
}

// E^m by summing the string weight over every letter string in [p]^m.
inline rtm::Rational ensemble_moment(long long p, int d, int k, int m, Weight w) {
  std::vector<int> word(static_cast<size_t>(m), 1);
  rtm::Rational total{0};
  for (;;) {
    total += rtm::rational_pow(string_moment(word, d, w), k);
    int t = m - 1;
    while (t >= 0 && word[static_cast<size_t>(t)] == p) {
      word[static_cast<size_t>(t)] = 1;
      --t;
    }
    if (t < 0) break;
    ++word[static_cast<size_t>(t)];
  }
  return total;
}

inline rtm::Int bell(int m) {
  std::vector<rtm::Int> row{rtm::Int{1}};
  for (int i = 1; i <= m; ++i) {
    std::vector<rtm::Int> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

// Histogram of balanced bracket strings of m pairs by the number of "()"
// occurrences; the Narayana definition.
inline std::map<int, long long> bracketing_histogram(int m) {
  std::map<int, long long> hist;
  std::string cur;
  std::function<void(int, int)> rec = [&](int open, int close) {
    if (open == m && close == m) {
      int pairs = 0;
      for (size_t i = 0; i + 1 < cur.size(); ++i) {
        if (cur[i] == '(' && cur[i + 1] == ')') ++pairs;
      }
      ++hist[pairs];
      return;
    }
    if (open < m) {
      cur.push_back('(');
      rec(open + 1, close);
      cur.pop_back();
    }
    if (close < open) {
      cur.push_back(')');
      rec(open, close + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return hist;
}

}  // namespace oracle
