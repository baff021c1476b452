#pragma once

#include <vector>

#include "infodecomp/distribution.hpp"
#include "infodecomp/mutual_information.hpp"
#include "infodecomp/poset.hpp"

namespace infodecomp::testing {

// bot < {x1, x2} < top.
inline const PosetPtr& diamond() {
  static const PosetPtr poset = build_poset(
      {"bot", "x1", "x2", "top"},
      {{"bot", "x1"}, {"bot", "x2"}, {"x1", "top"}, {"x2", "top"}});
  return poset;
}

inline const Distribution& diamond_p() {
  static const Distribution p(diamond(), {0.1, 0.3, 0.2, 0.4});
  return p;
}

// Total order 0 < 1 < 2 < 3.
inline const PosetPtr& chain4() {
  static const PosetPtr poset =
      build_poset({"0", "1", "2", "3"}, {{"0", "1"}, {"1", "2"}, {"2", "3"}});
  return poset;
}

inline const Distribution& chain4_p() {
  static const Distribution p(chain4(), {0.11, 0.43, 0.24, 0.22});
  return p;
}

// 2-outcome joint table over chain4 whose X marginal equals chain4_p.
inline const JointTable& joint_2x4() {
  static const JointTable table = make_joint_table(
      chain4(), {"y0", "y1"},
      {{0.01, 0.30, 0.10, 0.02}, {0.10, 0.13, 0.14, 0.20}});
  return table;
}

// bot < {a, b} with no common upper bound.
inline const PosetPtr& vee() {
  static const PosetPtr poset =
      build_poset({"bot", "a", "b"}, {{"bot", "a"}, {"bot", "b"}});
  return poset;
}

}  // namespace infodecomp::testing
