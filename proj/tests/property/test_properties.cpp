#include <string>

#include "doctest.h"

#include "properties.hpp"

using infodecomp::testing::PropertyResult;
using infodecomp::testing::run_property_suite;

TEST_CASE("randomized property suite") {
  for (const PropertyResult& suite : run_property_suite()) {
    CAPTURE(suite.name);
    std::string detail;
    for (const std::string& note : suite.notes) {
      detail += note;
      detail += '\n';
    }
    CAPTURE(detail);
    CHECK(suite.instances >= 100);
    CHECK(suite.failures == 0);
  }
}
