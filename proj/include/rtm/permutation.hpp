#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rtm {

// Bijection on {1..m}. Kept 1-indexed throughout so cycle formulas read the
// same as in the standard combinatorial notation.
class Permutation {
 public:
  static Permutation identity(int m) {
    std::vector<int> img(static_cast<size_t>(m));
    std::iota(img.begin(), img.end(), 1);
    return Permutation{std::move(img), Unchecked{}};
  }

  static Permutation transposition(int m, int i, int j) {
    Permutation p = identity(m);
    if (i < 1 || j < 1 || i > m || j > m) throw std::domain_error("transposition: index out of range");
    std::swap(p.image_[static_cast<size_t>(i) - 1], p.image_[static_cast<size_t>(j) - 1]);
    return p;
  }

  // image[i-1] is the image of i; must be a bijection on {1..m}.
  static Permutation from_one_based(std::vector<int> image) {
    const int m = static_cast<int>(image.size());
    std::vector<char> seen(static_cast<size_t>(m) + 1, 0);
    for (int v : image) {
      if (v < 1 || v > m || seen[static_cast<size_t>(v)]) {
        throw std::domain_error("Permutation: image is not a bijection on {1..m}");
      }
      seen[static_cast<size_t>(v)] = 1;
    }
    return Permutation{std::move(image), Unchecked{}};
  }

  int size() const { return static_cast<int>(image_.size()); }

  int operator()(int i) const { return image_[static_cast<size_t>(i) - 1]; }

  // (a.then_apply(b))(i) = b(a(i)) is deliberately not provided; compose(a,b)
  // below is the usual a after b.
  friend Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::domain_error("compose: size mismatch");
    std::vector<int> img(a.image_.size());
    for (int i = 1; i <= a.size(); ++i) img[static_cast<size_t>(i) - 1] = a(b(i));
    return Permutation{std::move(img), Unchecked{}};
  }

  int cycle_count() const {
    const int m = size();
    std::vector<char> seen(static_cast<size_t>(m) + 1, 0);
    int cycles = 0;
    for (int i = 1; i <= m; ++i) {
      if (seen[static_cast<size_t>(i)]) continue;
      ++cycles;
      for (int j = i; !seen[static_cast<size_t>(j)]; j = (*this)(j)) seen[static_cast<size_t>(j)] = 1;
    }
    return cycles;
  }

  bool operator==(const Permutation& o) const { return image_ == o.image_; }

  const std::vector<int>& image() const { return image_; }

 private:
  struct Unchecked {};
  Permutation(std::vector<int> image, Unchecked) : image_(std::move(image)) {}
  std::vector<int> image_;
};

// Number of cycles of C_m ∘ pi, where C_m is the cyclic shift i -> i+1 with
// m wrapping to 1. The composed map is i -> pi(i) mod m + 1.
inline int shifted_cycle_count(const Permutation& pi) {
  const int m = pi.size();
  std::vector<char> seen(static_cast<size_t>(m) + 1, 0);
  int cycles = 0;
  for (int i = 1; i <= m; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    ++cycles;
    int j = i;
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = 1;
      j = pi(j) % m + 1;
    }
  }
  return cycles;
}

}  // namespace rtm
