#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "infodecomp/detail/bitset.hpp"
#include "infodecomp/error.hpp"

namespace infodecomp {

// A finite partially ordered set with a unique minimum element, described
// by its covering relation (the transitive reduction of the order).
//
// Elements are addressed by a dense index in [0, size()).  The indexing is
// a canonical linear extension: whenever s < x in the order, the index of
// s is smaller than the index of x, ties broken by the order in which
// labels were supplied to build_poset.  Index 0 is always the bottom.
// Instances are immutable and shared via shared_ptr<const Poset>.
class Poset {
 public:
  int size() const noexcept { return n_; }

  // The unique minimum element.  Always index 0.
  int bottom() const noexcept { return 0; }

  const std::string& label(int x) const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  // Index lookup by label; throws unknown_label.
  int index_of(std::string_view label) const;

  // Index lookup that reports absence instead of throwing.
  std::optional<int> try_index_of(std::string_view label) const noexcept;

  bool contains(int x) const noexcept { return 0 <= x && x < n_; }

  // Order test s <= x (reflexive).  O(1) after construction.
  bool leq(int s, int x) const;

  bool less(int s, int x) const { return s != x && leq(s, x); }

  // Principal down-set { s : s <= x }, ascending index order.
  std::vector<int> down_set(int x) const;

  // Principal up-set { s : s >= x }, ascending index order.
  std::vector<int> up_set(int x) const;

  std::size_t down_size(int x) const;
  std::size_t up_size(int x) const;

  // Least upper bound if it exists.
  std::optional<int> join(int x, int y) const;

  // Greatest lower bound.  Always exists for the bottom-bounded posets this
  // class admits when x and y have any common lower bound, which they do
  // (the bottom); still optional for symmetry with join.
  std::optional<int> meet(int x, int y) const;

  // Elements covered by x (maximal elements strictly below x).
  const std::vector<int>& cover_children(int x) const;

  // Elements covering x.
  const std::vector<int>& cover_parents(int x) const;

  // All cover pairs (child, parent), sorted ascending.
  const std::vector<std::pair<int, int>>& cover_pairs() const noexcept {
    return cover_pairs_;
  }

  // Structural equality: same labels in canonical order, same covers.
  bool same_structure(const Poset& other) const noexcept;

  const detail::Bitset& down_bits(int x) const;
  const detail::Bitset& up_bits(int x) const;

 private:
  Poset() = default;
  friend std::shared_ptr<const Poset> build_poset(
      const std::vector<std::string>& labels,
      const std::vector<std::pair<std::string, std::string>>& covers);

  void check_element(int x) const;

  int n_ = 0;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::pair<int, int>> cover_pairs_;
  std::vector<detail::Bitset> down_;
  std::vector<detail::Bitset> up_;
};

using PosetPtr = std::shared_ptr<const Poset>;

// Validates and builds a poset from labels and cover pairs (child, parent).
//
// Rejects: duplicate labels, covers naming unknown labels, duplicate or
// self covers, cyclic cover relations, transitively redundant cover edges,
// and cover relations with more than one minimal element.
PosetPtr build_poset(
    const std::vector<std::string>& labels,
    const std::vector<std::pair<std::string, std::string>>& covers);

// The covering graph of a poset: one node per element, one edge per cover
// pair.  Weights are empty until filled in by a caller.
struct CoveringGraph {
  PosetPtr poset;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;
};

CoveringGraph covering_graph(PosetPtr poset);

// Resolves labels to element indices, rejecting unknown labels.
std::vector<int> indices_of(const Poset& poset,
                            const std::vector<std::string>& labels);

}  // namespace infodecomp
