#pragma once

#include <optional>
#include <vector>

#include "sfl/group_map.hpp"

namespace sfl {

enum class Side { column, row };

inline const char* side_name(Side s) { return s == Side::column ? "column" : "row"; }

// Witness that i and j (1-based) are column- or row-equivalent for f:
//   column: f(s t_ij) = -(z_{s(j)} / z_{s(i)}) f(s)            for all s,
//   row:    f(t_ij s) = -(z_{s^{-1}(j)} / z_{s^{-1}(i)}) f(s)  for all s.
// z[k-1] holds z_k; z_1 = 1.
template <class S>
struct EquivWitness {
  int i = 0;
  int j = 0;
  Side side = Side::column;
  std::vector<S> z;
};

using Partition = std::vector<std::vector<int>>;  // sorted classes of sorted 1-based indices

struct PartitionPair {
  Partition column_classes;
  Partition row_classes;
  std::vector<int> c_list;  // class sizes, non-increasing
  std::vector<int> r_list;
};

// Replay: g == ph_action(f, a, tau, tau_prime).
template <class S>
struct NormalizationWitness {
  Mat<S> a;
  Permutation tau;
  Permutation tau_prime;
  GroupMap<S> g;
};

template <class S>
std::optional<EquivWitness<S>> column_witness(const GroupMap<S>& f, int i, int j);

template <class S>
std::optional<EquivWitness<S>> row_witness(const GroupMap<S>& f, int i, int j);

// Exhaustive check of the defining identity of a witness.
template <class S>
bool verify_witness(const GroupMap<S>& f, const EquivWitness<S>& w);

template <class S>
Partition column_partition(const GroupMap<S>& f);

template <class S>
PartitionPair partitions(const GroupMap<S>& f);

template <class S>
bool is_rigid(const GroupMap<S>& f);

// f(s t_ij) = -f(s) for column-equivalent i != j and f(t_ij s) = -f(s) for row-equivalent ones.
template <class S>
bool is_normalized(const GroupMap<S>& f);

// Normalized with interval classes in non-increasing size order.
template <class S>
bool is_fully_normalized(const GroupMap<S>& f);

// H-normalization: tau = tau_prime = identity.
template <class S>
NormalizationWitness<S> normalize(const GroupMap<S>& f);

template <class S>
NormalizationWitness<S> fully_normalize(const GroupMap<S>& f);

std::vector<int> cardinality_list(const Partition& p);
// Classes in the order used for full normalization: size descending, then smallest element.
Partition sorted_for_intervals(const Partition& p);
bool is_interval_partition(const Partition& p);
// Class index of every point (0-based classes, 1-based points in the argument).
std::vector<int> class_index(const Partition& p, int n);

}  // namespace sfl
