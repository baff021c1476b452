#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"

#include "checks.hpp"
#include "fixtures.hpp"
#include "infodecomp/poset.hpp"

using namespace infodecomp;
using namespace infodecomp::testing;

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("diamond order relations") {
  const Poset& d = *diamond();
  CHECK(d.size() == 4);
  CHECK(d.bottom() == 0);
  CHECK(d.label(0) == "bot");
  CHECK(d.label(3) == "top");
  CHECK(d.index_of("x2") == 2);
  CHECK(d.try_index_of("x2") == std::optional<int>(2));
  CHECK(d.try_index_of("nope") == std::nullopt);
  CHECK(d.contains(0));
  CHECK(d.contains(3));
  CHECK(!d.contains(4));
  CHECK(!d.contains(-1));

  for (int x = 0; x < 4; ++x) {
    CHECK(d.leq(x, x));
    CHECK(d.leq(0, x));
    CHECK(!d.less(x, x));
  }
  CHECK(d.leq(1, 3));
  CHECK(d.leq(2, 3));
  CHECK(!d.leq(1, 2));
  CHECK(!d.leq(2, 1));
  CHECK(!d.leq(3, 1));
  CHECK(d.less(0, 3));

  CHECK(d.down_set(3) == std::vector<int>{0, 1, 2, 3});
  CHECK(d.down_set(1) == std::vector<int>{0, 1});
  CHECK(d.down_set(0) == std::vector<int>{0});
  CHECK(d.up_set(1) == std::vector<int>{1, 3});
  CHECK(d.up_set(0) == std::vector<int>{0, 1, 2, 3});
  CHECK(d.up_set(3) == std::vector<int>{3});
  CHECK(d.down_size(3) == 4);
  CHECK(d.down_size(1) == 2);
  CHECK(d.up_size(2) == 2);
  CHECK(d.up_size(0) == 4);
}

TEST_CASE("joins and meets") {
  const Poset& d = *diamond();
  CHECK(d.join(1, 2) == std::optional<int>(3));
  CHECK(d.join(0, 2) == std::optional<int>(2));
  CHECK(d.join(3, 1) == std::optional<int>(3));
  CHECK(d.join(0, 0) == std::optional<int>(0));
  CHECK(d.meet(1, 2) == std::optional<int>(0));
  CHECK(d.meet(1, 3) == std::optional<int>(1));
  CHECK(d.meet(3, 3) == std::optional<int>(3));

  const Poset& v = *vee();
  CHECK(v.join(1, 2) == std::nullopt);
  CHECK(v.meet(1, 2) == std::optional<int>(0));

  const Poset& c = *chain4();
  CHECK(c.join(1, 2) == std::optional<int>(2));
  CHECK(c.meet(1, 2) == std::optional<int>(1));
}

TEST_CASE("cover structure") {
  const Poset& d = *diamond();
  CHECK(sorted(d.cover_children(3)) == std::vector<int>{1, 2});
  CHECK(sorted(d.cover_parents(0)) == std::vector<int>{1, 2});
  CHECK(d.cover_children(0).empty());
  CHECK(d.cover_parents(3).empty());
  std::vector<std::pair<int, int>> expected{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK(d.cover_pairs() == expected);

  CoveringGraph g = covering_graph(diamond());
  CHECK(g.edges == expected);
  CHECK(g.weights.empty());
}

TEST_CASE("canonical indexing is a linear extension") {
  PosetPtr shuffled = build_poset(
      {"top", "x1", "x2", "bot"},
      {{"bot", "x1"}, {"bot", "x2"}, {"x1", "top"}, {"x2", "top"}});
  CHECK(shuffled->labels() ==
        std::vector<std::string>{"bot", "x1", "x2", "top"});
  CHECK(shuffled->bottom() == 0);
  for (auto [child, parent] : shuffled->cover_pairs()) {
    CHECK(child < parent);
  }
  CHECK(shuffled->same_structure(*diamond()));
  CHECK(!shuffled->same_structure(*chain4()));
}

TEST_CASE("label helpers") {
  const Poset& d = *diamond();
  CHECK(indices_of(d, {"x2", "bot"}) == std::vector<int>{2, 0});
  CHECK(error_code_of([&] { indices_of(d, {"zz"}); }) == errc::unknown_label);
  CHECK(error_code_of([&] { d.index_of("zz"); }) == errc::unknown_label);
  CHECK(error_code_of([&] { d.label(9); }) == errc::unknown_element);
  CHECK(error_code_of([&] { d.down_set(-1); }) == errc::unknown_element);
  CHECK(error_code_of([&] { d.up_set(4); }) == errc::unknown_element);
}

TEST_CASE("construction rejects malformed input") {
  using Covers = std::vector<std::pair<std::string, std::string>>;
  CHECK(error_code_of([] { build_poset({}, {}); }) == errc::invalid_argument);
  CHECK(error_code_of([] { build_poset({"a", "a"}, Covers{{"a", "a"}}); }) ==
        errc::duplicate_label);
  CHECK(error_code_of([] { build_poset({"a", "b"}, Covers{{"a", "zz"}}); }) ==
        errc::unknown_label);
  CHECK(error_code_of([] { build_poset({"a", "b"}, Covers{{"zz", "b"}}); }) ==
        errc::unknown_label);
  CHECK(error_code_of([] { build_poset({"a", "b"}, Covers{{"a", "a"}}); }) ==
        errc::cycle_detected);
  CHECK(error_code_of([] {
          build_poset({"a", "b"}, Covers{{"a", "b"}, {"a", "b"}});
        }) == errc::redundant_cover_edge);
  CHECK(error_code_of([] {
          build_poset({"a", "b", "c"},
                      Covers{{"a", "b"}, {"b", "c"}, {"c", "a"}});
        }) == errc::cycle_detected);
  CHECK(error_code_of([] {
          build_poset({"a", "b", "c"}, Covers{{"a", "c"}, {"b", "c"}});
        }) == errc::multiple_minimal_elements);
  CHECK(error_code_of([] { build_poset({"a", "b"}, {}); }) ==
        errc::multiple_minimal_elements);
  // bot < a < b plus the implied edge bot < b is not a reduction.
  CHECK(error_code_of([] {
          build_poset({"bot", "a", "b"},
                      Covers{{"bot", "a"}, {"a", "b"}, {"bot", "b"}});
        }) == errc::redundant_cover_edge);
}

TEST_CASE("single element poset") {
  PosetPtr one = build_poset({"only"}, {});
  CHECK(one->size() == 1);
  CHECK(one->bottom() == 0);
  CHECK(one->down_set(0) == std::vector<int>{0});
  CHECK(one->cover_pairs().empty());
}
