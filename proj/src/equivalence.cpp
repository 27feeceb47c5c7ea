#include "sfl/equivalence.hpp"

#include <algorithm>
#include <numeric>

namespace sfl {

namespace {

void require_pair(int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n) throw Error("IndexOutOfRange", "indices must lie in 1..n");
  if (i == j) throw Error("IndicesEqual", "equivalence witnesses need distinct indices");
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Partition classes_from(UnionFind& uf, int n) {
  std::vector<std::vector<int>> by_root(n);
  for (int x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x + 1);
  Partition out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

// Permutation u with u(classes[m][r]) = (start of interval m) + r.
Permutation interval_map(const Partition& sorted_classes, int n) {
  std::vector<int> img(n);
  int next = 1;
  for (const auto& c : sorted_classes)
    for (int x : c) img[x - 1] = next++;
  return Permutation(std::move(img));
}

}  // namespace

template <class S>
std::optional<EquivWitness<S>> column_witness(const GroupMap<S>& f, int i, int j) {
  const int n = f.n();
  require_pair(n, i, j);
  const Field& field = f.field();
  // ratio[k][l] = -f(s t_ij) / f(s) on the fiber s(i) = k, s(j) = l.
  std::vector<std::vector<std::optional<S>>> ratio(n + 1, std::vector<std::optional<S>>(n + 1));
  const auto& perms = all_permutations(n);
  const std::uint64_t t = Permutation::transposition(n, i, j).rank();
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    const Permutation& s = perms[k];
    S r = -f.at(compose_rank(n, k, t)) / f.at(k);
    auto& slot = ratio[s(i)][s(j)];
    if (!slot) slot = r;
    else if (!(*slot == r)) return std::nullopt;
  }
  // Anchor z_1 = 1, then z_l = r_{1,l}; every fiber must agree with z_l / z_k.
  std::vector<S> z(n, field.element<S>(1));
  for (int l = 2; l <= n; ++l) z[l - 1] = *ratio[1][l];
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l)
      if (k != l && !(*ratio[k][l] == z[l - 1] / z[k - 1])) return std::nullopt;
  for (S& x : z) x = canonical(x, field);
  return EquivWitness<S>{i, j, Side::column, std::move(z)};
}

template <class S>
std::optional<EquivWitness<S>> row_witness(const GroupMap<S>& f, int i, int j) {
  auto w = column_witness(transpose_map(f), i, j);
  if (w) w->side = Side::row;
  return w;
}

template <class S>
bool verify_witness(const GroupMap<S>& f, const EquivWitness<S>& w) {
  const int n = f.n();
  require_pair(n, w.i, w.j);
  if (static_cast<int>(w.z.size()) != n) return false;
  for (const S& x : w.z)
    if (is_zero(x)) return false;
  const Permutation t = Permutation::transposition(n, w.i, w.j);
  for (const Permutation& s : all_permutations(n)) {
    if (w.side == Side::column) {
      if (!(f(s * t) == -(w.z[s(w.j) - 1] / w.z[s(w.i) - 1]) * f(s))) return false;
    } else {
      const Permutation si = s.inverse();
      if (!(f(t * s) == -(w.z[si(w.j) - 1] / w.z[si(w.i) - 1]) * f(s))) return false;
    }
  }
  return true;
}

template <class S>
Partition column_partition(const GroupMap<S>& f) {
  const int n = f.n();
  UnionFind uf(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (column_witness(f, i, j)) uf.unite(i - 1, j - 1);
  return classes_from(uf, n);
}

std::vector<int> cardinality_list(const Partition& p) {
  std::vector<int> sizes;
  for (const auto& c : p) sizes.push_back(static_cast<int>(c.size()));
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

Partition sorted_for_intervals(const Partition& p) {
  Partition out = p;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

bool is_interval_partition(const Partition& p) {
  int next = 1;
  std::size_t prev_size = ~std::size_t(0);
  for (const auto& c : sorted_for_intervals(p)) {
    if (c.size() > prev_size) return false;
    prev_size = c.size();
    for (int x : c)
      if (x != next++) return false;
  }
  return true;
}

std::vector<int> class_index(const Partition& p, int n) {
  std::vector<int> idx(n + 1, -1);
  for (std::size_t c = 0; c < p.size(); ++c)
    for (int x : p[c]) idx[x] = static_cast<int>(c);
  return idx;
}

template <class S>
PartitionPair partitions(const GroupMap<S>& f) {
  PartitionPair pp;
  pp.column_classes = column_partition(f);
  pp.row_classes = column_partition(transpose_map(f));
  pp.c_list = cardinality_list(pp.column_classes);
  pp.r_list = cardinality_list(pp.row_classes);
  return pp;
}

template <class S>
bool is_rigid(const GroupMap<S>& f) {
  PartitionPair pp = partitions(f);
  return static_cast<int>(pp.column_classes.size()) == f.n() && static_cast<int>(pp.row_classes.size()) == f.n();
}

namespace {

template <class S>
bool column_normalized_against(const GroupMap<S>& f, const Partition& classes) {
  const int n = f.n();
  for (const auto& c : classes)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        const std::uint64_t t = Permutation::transposition(n, c[a], c[b]).rank();
        for (std::uint64_t k = 0; k < f.size(); ++k)
          if (!(f.at(compose_rank(n, k, t)) == -f.at(k))) return false;
      }
  return true;
}

}  // namespace

template <class S>
bool is_normalized(const GroupMap<S>& f) {
  PartitionPair pp = partitions(f);
  return column_normalized_against(f, pp.column_classes) && column_normalized_against(transpose_map(f), pp.row_classes);
}

template <class S>
bool is_fully_normalized(const GroupMap<S>& f) {
  PartitionPair pp = partitions(f);
  return column_normalized_against(f, pp.column_classes) &&
         column_normalized_against(transpose_map(f), pp.row_classes) && is_interval_partition(pp.column_classes) &&
         is_interval_partition(pp.row_classes);
}

namespace {

// Matrix whose column k is the witness vector for (least element of k's class, k),
// and all ones on the class minima.
template <class S>
Mat<S> column_step_matrix(const GroupMap<S>& f, const Partition& classes) {
  const int n = f.n();
  Mat<S> a = ones<S>(n, f.field());
  for (const auto& c : classes)
    for (std::size_t r = 1; r < c.size(); ++r) {
      auto w = column_witness(f, c.front(), c[r]);
      if (!w) throw Error("InternalError", "missing witness inside an equivalence class");
      for (int i = 0; i < n; ++i) a(i, c[r] - 1) = w->z[i];
    }
  return a;
}

}  // namespace

template <class S>
NormalizationWitness<S> normalize(const GroupMap<S>& f) {
  const int n = f.n();
  const Partition col = column_partition(f);
  const Mat<S> a = column_step_matrix(f, col);
  const GroupMap<S> f1 = h_action(f, a);
  // Row step on f1: rows outside the class minima get the row witness vectors.
  const GroupMap<S> f1t = transpose_map(f1);
  const Partition row = column_partition(f1t);
  const Mat<S> b = Mat<S>(column_step_matrix(f1t, row).transpose());
  const Mat<S> ab = hadamard(a, b);
  GroupMap<S> g = h_action(f, ab);
  if (!column_normalized_against(g, col) || !column_normalized_against(transpose_map(g), row))
    throw Error("InternalError", "normalization output failed verification");
  const Permutation id = Permutation::identity(n);
  return NormalizationWitness<S>{ab, id, id, std::move(g)};
}

template <class S>
NormalizationWitness<S> fully_normalize(const GroupMap<S>& f) {
  const int n = f.n();
  NormalizationWitness<S> w = normalize(f);
  const PartitionPair pp = partitions(w.g);
  // g(s) = g0(t s t2^{-1}) has column classes t2^{-1}(classes of g0) and row classes t^{-1}(classes of g0).
  const Permutation t2 = interval_map(sorted_for_intervals(pp.column_classes), n).inverse();
  const Permutation t = interval_map(sorted_for_intervals(pp.row_classes), n).inverse();
  GroupMap<S> g = ph_action(f, w.a, t, t2);
  if (!is_fully_normalized(g)) throw Error("InternalError", "full normalization output failed verification");
  return NormalizationWitness<S>{w.a, t, t2, std::move(g)};
}

#define SFL_INSTANTIATE(S)                                                                   \
  template std::optional<EquivWitness<S>> column_witness<S>(const GroupMap<S>&, int, int); \
  template std::optional<EquivWitness<S>> row_witness<S>(const GroupMap<S>&, int, int);    \
  template bool verify_witness<S>(const GroupMap<S>&, const EquivWitness<S>&);              \
  template Partition column_partition<S>(const GroupMap<S>&);                               \
  template PartitionPair partitions<S>(const GroupMap<S>&);                                 \
  template bool is_rigid<S>(const GroupMap<S>&);                                            \
  template bool is_normalized<S>(const GroupMap<S>&);                                       \
  template bool is_fully_normalized<S>(const GroupMap<S>&);                                 \
  template NormalizationWitness<S> normalize<S>(const GroupMap<S>&);                        \
  template NormalizationWitness<S> fully_normalize<S>(const GroupMap<S>&);

SFL_INSTANTIATE(Fp)
SFL_INSTANTIATE(Rational)

}  // namespace sfl
