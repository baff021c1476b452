#include "infodecomp/poset.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace infodecomp {

void Poset::check_element(int x) const {
  if (!contains(x)) {
    raise(errc::unknown_element,
          "element index " + std::to_string(x) + " out of range [0, " +
              std::to_string(n_) + ")");
  }
}

const std::string& Poset::label(int x) const {
  check_element(x);
  return labels_[x];
}

int Poset::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    raise(errc::unknown_label, "no element labeled '" + std::string(label) + "'");
  }
  return it->second;
}

std::optional<int> Poset::try_index_of(std::string_view label) const noexcept {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Poset::leq(int s, int x) const {
  check_element(s);
  check_element(x);
  return down_[x].test(static_cast<std::size_t>(s));
}

std::vector<int> Poset::down_set(int x) const {
  check_element(x);
  std::vector<int> out;
  out.reserve(down_[x].count());
  down_[x].for_each([&](std::size_t s) { out.push_back(static_cast<int>(s)); });
  return out;
}

std::vector<int> Poset::up_set(int x) const {
  check_element(x);
  std::vector<int> out;
  out.reserve(up_[x].count());
  up_[x].for_each([&](std::size_t s) { out.push_back(static_cast<int>(s)); });
  return out;
}

std::size_t Poset::down_size(int x) const {
  check_element(x);
  return down_[x].count();
}

std::size_t Poset::up_size(int x) const {
  check_element(x);
  return up_[x].count();
}

std::optional<int> Poset::join(int x, int y) const {
  check_element(x);
  check_element(y);
  // Common upper bounds of x and y.  The join, if any, is the unique
  // minimal one, and minimality in index order finds it first: a smaller
  // index can never be above a larger one.
  detail::Bitset ub = up_[x];
  ub &= up_[y];
  int candidate = -1;
  ub.for_each([&](std::size_t s) {
    if (candidate < 0) candidate = static_cast<int>(s);
  });
  if (candidate < 0) return std::nullopt;
  if (!ub.is_subset_of(up_[candidate])) return std::nullopt;
  return candidate;
}

std::optional<int> Poset::meet(int x, int y) const {
  check_element(x);
  check_element(y);
  detail::Bitset lb = down_[x];
  lb &= down_[y];
  int candidate = -1;
  lb.for_each([&](std::size_t s) { candidate = static_cast<int>(s); });
  if (candidate < 0) return std::nullopt;
  if (!lb.is_subset_of(down_[candidate])) return std::nullopt;
  return candidate;
}

const std::vector<int>& Poset::cover_children(int x) const {
  check_element(x);
  return children_[x];
}

const std::vector<int>& Poset::cover_parents(int x) const {
  check_element(x);
  return parents_[x];
}

bool Poset::same_structure(const Poset& other) const noexcept {
  if (this == &other) return true;
  return labels_ == other.labels_ && cover_pairs_ == other.cover_pairs_;
}

const detail::Bitset& Poset::down_bits(int x) const {
  check_element(x);
  return down_[x];
}

const detail::Bitset& Poset::up_bits(int x) const {
  check_element(x);
  return up_[x];
}

PosetPtr build_poset(
    const std::vector<std::string>& labels,
    const std::vector<std::pair<std::string, std::string>>& covers) {
  if (labels.empty()) {
    raise(errc::invalid_argument, "poset needs at least one element");
  }

  const int n = static_cast<int>(labels.size());
  std::unordered_map<std::string, int> input_index;
  input_index.reserve(labels.size());
  for (int i = 0; i < n; ++i) {
    if (!input_index.emplace(labels[i], i).second) {
      raise(errc::duplicate_label, "label '" + labels[i] + "' appears twice");
    }
  }

  // Cover edges in input-index space, child -> parent.
  std::vector<std::vector<int>> raw_parents(n);
  std::vector<int> indeg(n, 0);
  std::set<std::pair<int, int>> seen;
  for (const auto& [child_label, parent_label] : covers) {
    auto c = input_index.find(child_label);
    if (c == input_index.end()) {
      raise(errc::unknown_label,
            "cover names unknown element '" + child_label + "'");
    }
    auto p = input_index.find(parent_label);
    if (p == input_index.end()) {
      raise(errc::unknown_label,
            "cover names unknown element '" + parent_label + "'");
    }
    if (c->second == p->second) {
      raise(errc::cycle_detected, "self cover on '" + child_label + "'");
    }
    if (!seen.emplace(c->second, p->second).second) {
      raise(errc::redundant_cover_edge,
            "duplicate cover ('" + child_label + "', '" + parent_label + "')");
    }
    raw_parents[c->second].push_back(p->second);
    ++indeg[p->second];
  }

  // Kahn's algorithm over child -> parent edges yields the canonical
  // linear extension; the ready queue is keyed by input index so the
  // extension is deterministic for a given input ordering.
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push(i);
  }
  std::vector<int> order;  // order[k] = input index placed at rank k
  order.reserve(n);
  std::vector<int> remaining = indeg;
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int p : raw_parents[i]) {
      if (--remaining[p] == 0) ready.push(p);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    raise(errc::cycle_detected, "cover relation contains a cycle");
  }

  std::vector<int> minimal;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) minimal.push_back(i);
  }
  if (minimal.size() != 1) {
    std::string msg = "expected a unique minimal element, found";
    for (int i : minimal) msg += " '" + labels[i] + "'";
    raise(errc::multiple_minimal_elements, msg);
  }

  std::vector<int> rank(n);  // input index -> canonical index
  for (int k = 0; k < n; ++k) rank[order[k]] = k;

  auto poset = std::shared_ptr<Poset>(new Poset());
  poset->n_ = n;
  poset->labels_.resize(n);
  poset->children_.assign(n, {});
  poset->parents_.assign(n, {});
  for (int k = 0; k < n; ++k) {
    poset->labels_[k] = labels[order[k]];
    poset->index_.emplace(labels[order[k]], k);
  }
  for (int i = 0; i < n; ++i) {
    for (int p : raw_parents[i]) {
      int child = rank[i];
      int parent = rank[p];
      poset->children_[parent].push_back(child);
      poset->parents_[child].push_back(parent);
      poset->cover_pairs_.emplace_back(child, parent);
    }
  }
  for (int x = 0; x < n; ++x) {
    std::sort(poset->children_[x].begin(), poset->children_[x].end());
    std::sort(poset->parents_[x].begin(), poset->parents_[x].end());
  }
  std::sort(poset->cover_pairs_.begin(), poset->cover_pairs_.end());

  // Transitive closure along the linear extension.
  poset->down_.assign(n, detail::Bitset(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x) {
    poset->down_[x].set(static_cast<std::size_t>(x));
    for (int c : poset->children_[x]) poset->down_[x] |= poset->down_[c];
  }
  poset->up_.assign(n, detail::Bitset(static_cast<std::size_t>(n)));
  for (int x = n - 1; x >= 0; --x) {
    poset->up_[x].set(static_cast<std::size_t>(x));
    for (int p : poset->parents_[x]) poset->up_[x] |= poset->up_[p];
  }

  // A cover edge (c, x) is redundant when c is already below a sibling
  // cover child of x; the input was then not a transitive reduction.
  for (int x = 0; x < n; ++x) {
    for (int c : poset->children_[x]) {
      for (int sibling : poset->children_[x]) {
        if (sibling != c &&
            poset->down_[sibling].test(static_cast<std::size_t>(c))) {
          raise(errc::redundant_cover_edge,
                "cover ('" + poset->labels_[c] + "', '" + poset->labels_[x] +
                    "') is implied by ('" + poset->labels_[sibling] + "', '" +
                    poset->labels_[x] + "')");
        }
      }
    }
  }

  return poset;
}

CoveringGraph covering_graph(PosetPtr poset) {
  CoveringGraph graph;
  graph.edges = poset->cover_pairs();
  graph.poset = std::move(poset);
  return graph;
}

std::vector<int> indices_of(const Poset& poset,
                            const std::vector<std::string>& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& label : labels) out.push_back(poset.index_of(label));
  return out;
}

}  // namespace infodecomp
