#include "sfl/permutation.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "sfl/errors.hpp"

namespace sfl {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int k = 2; k <= n; ++k) r *= static_cast<std::uint64_t>(k);
  return r;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n > kMaxDegree) throw Error("DegreeTooLarge", "degree " + std::to_string(n) + " exceeds " + std::to_string(kMaxDegree));
  std::vector<bool> seen(n + 1, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v]) throw Error("NotAPermutation", "one-line array is not a bijection of 1..n");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  for (int k = 0; k < n; ++k) img[k] = k + 1;
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n) throw Error("IndexOutOfRange", "transposition index outside 1..n");
  Permutation p = identity(n);
  std::swap(p.images_[i - 1], p.images_[j - 1]);
  return p;
}

Permutation Permutation::cycle(int n, const std::vector<int>& points) {
  Permutation p = identity(n);
  for (std::size_t k = 0; k < points.size(); ++k) {
    int from = points[k];
    int to = points[(k + 1) % points.size()];
    if (from < 1 || from > n) throw Error("IndexOutOfRange", "cycle point outside 1..n");
    p.images_[from - 1] = to;
  }
  return Permutation(p.images_);
}

Permutation Permutation::unrank(std::uint64_t k, int n) {
  if (n < 0 || n > kMaxDegree) throw Error("DegreeTooLarge", "degree outside 0.." + std::to_string(kMaxDegree));
  if (k >= factorial(n)) throw Error("IndexOutOfRange", "rank outside 0..n!-1");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  std::vector<int> img;
  img.reserve(n);
  for (int pos = n; pos >= 1; --pos) {
    std::uint64_t f = factorial(pos - 1);
    std::uint64_t idx = k / f;
    k %= f;
    img.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

std::uint64_t Permutation::rank() const {
  const int n = this->n();
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (images_[j] < images_[i]) ++smaller;
    r += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
  }
  return r;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k) inv[images_[k] - 1] = static_cast<int>(k) + 1;
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

int Permutation::sign() const {
  int transpositions = 0;
  const int n = this->n();
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (int x = s; !seen[x]; x = images_[x] - 1) {
      seen[x] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 ? -1 : 1;
}

int Permutation::nfix() const {
  int c = 0;
  for (std::size_t k = 0; k < images_.size(); ++k)
    if (images_[k] == static_cast<int>(k) + 1) ++c;
  return c;
}

std::vector<int> Permutation::cycle_type() const {
  const int n = this->n();
  std::vector<bool> seen(n, false);
  std::vector<int> lengths;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (int x = s; !seen[x]; x = images_[x] - 1) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

bool Permutation::is_identity() const {
  return nfix() == n();
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(images_[k]);
  }
  return s + "]";
}

Permutation compose(const Permutation& s, const Permutation& t) {
  if (s.n() != t.n()) throw Error("DegreeMismatch", "composing permutations of different degrees");
  std::vector<int> img(s.n());
  for (int x = 1; x <= s.n(); ++x) img[x - 1] = s(t(x));
  return Permutation(std::move(img));
}

namespace {

struct GroupTables {
  std::vector<Permutation> elements;
  std::vector<std::uint32_t> product;  // n! x n! table, only for n <= 6
  std::vector<std::uint32_t> inverse;
};

const GroupTables& tables(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GroupTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto t = std::make_unique<GroupTables>();
  const std::uint64_t count = factorial(n);
  t->elements.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) t->elements.push_back(Permutation::unrank(k, n));
  t->inverse.resize(count);
  for (std::uint64_t k = 0; k < count; ++k) t->inverse[k] = static_cast<std::uint32_t>(t->elements[k].inverse().rank());
  if (n <= 6) {
    t->product.resize(count * count);
    for (std::uint64_t a = 0; a < count; ++a)
      for (std::uint64_t b = 0; b < count; ++b)
        t->product[a * count + b] = static_cast<std::uint32_t>(compose(t->elements[a], t->elements[b]).rank());
  }
  return *cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

const std::vector<Permutation>& all_permutations(int n) {
  if (n < 0 || n > kMaxDegree) throw Error("DegreeTooLarge", "degree outside 0.." + std::to_string(kMaxDegree));
  return tables(n).elements;
}

std::uint64_t compose_rank(int n, std::uint64_t s, std::uint64_t t) {
  const GroupTables& g = tables(n);
  if (!g.product.empty()) return g.product[s * g.elements.size() + t];
  return compose(g.elements[s], g.elements[t]).rank();
}

std::uint64_t inverse_rank(int n, std::uint64_t s) {
  return tables(n).inverse[s];
}

}  // namespace sfl
