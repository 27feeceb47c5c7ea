#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sfl {

constexpr int kMaxDegree = 8;

std::uint64_t factorial(int n);

// Element of S_n in one-line notation. Points are 1-based: p(x) is the
// image of x in 1..n. Products follow (s*t)(x) = s(t(x)), so t acts first.
class Permutation {
 public:
  Permutation() = default;
  // images[k] = image of k+1, values 1..n; throws unless a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, int i, int j);
  // Cycle (c1 c2 ... ck): c1 -> c2 -> ... -> ck -> c1.
  static Permutation cycle(int n, const std::vector<int>& points);
  // k-th permutation in lexicographic order of one-line notation.
  static Permutation unrank(std::uint64_t k, int n);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x - 1]; }
  const std::vector<int>& images() const { return images_; }

  std::uint64_t rank() const;
  Permutation inverse() const;
  int sign() const;
  int nfix() const;
  // Cycle lengths sorted in non-increasing order, fixed points included.
  std::vector<int> cycle_type() const;
  bool is_identity() const;
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

Permutation compose(const Permutation& s, const Permutation& t);
inline Permutation operator*(const Permutation& s, const Permutation& t) { return compose(s, t); }

// All of S_n in lexicographic order (index = rank).
const std::vector<Permutation>& all_permutations(int n);

// rank(s * t) for ranks of s and t, from a cached table (n <= 6) or directly.
std::uint64_t compose_rank(int n, std::uint64_t s, std::uint64_t t);
std::uint64_t inverse_rank(int n, std::uint64_t s);

}  // namespace sfl
