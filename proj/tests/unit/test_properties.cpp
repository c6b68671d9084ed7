#include <gtest/gtest.h>

#include "property_cases.hpp"

TEST(Properties, RandomizedMasterEquationInstances) {
  const auto s = support::run_property_cases(1000, 0xC0FFEE);
  EXPECT_EQ(s.cases, 1000);
  EXPECT_LE(s.trace_drift, 1e-7);
  EXPECT_LE(s.hermiticity, 1e-8);
  EXPECT_LE(s.sum_rule, 1e-8);
  EXPECT_GE(s.min_eigenvalue, -1e-6);
}
