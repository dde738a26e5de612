#include <gtest/gtest.h>

#include "markovdf/verify.hpp"

using namespace markovdf;

TEST(Verify, SmallSuitesPass) {
  for (const char* name : {"finstoch", "diagram", "lemmas"}) {
    const auto rep = verify::run_suite(name, 25, 11);
    EXPECT_TRUE(rep.passed()) << name << ": " << (rep.messages.empty() ? "" : rep.messages.front());
    EXPECT_FALSE(rep.checks.empty());
    for (const auto& c : rep.checks) EXPECT_GT(c.cases, 0u) << name << "/" << c.name;
  }
}

TEST(Verify, SameSeedSameReport) {
  const auto a = verify::run_suite("finstoch", 40, 3);
  const auto b = verify::run_suite("finstoch", 40, 3);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i)
    EXPECT_EQ(a.checks[i].max_deviation, b.checks[i].max_deviation);
}

TEST(Verify, RecordCountsFailures) {
  verify::SuiteReport r;
  r.record("x", 1e-12);
  r.record("x", 1e-3);
  r.require("y", true);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.check("x").failures, 1u);
  EXPECT_EQ(r.check("x").cases, 2u);
  EXPECT_EQ(r.messages.size(), 1u);
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(verify::run_suite("nope", 1, 0), InvalidArgument); }
