#include <gtest/gtest.h>

#include "qhe/validation.hpp"

namespace {

const qhe::CheckResult* find(const qhe::ValidationSummary& s, std::string_view fragment) {
  for (const auto& c : s.checks)
    if (c.name.find(fragment) != std::string::npos) return &c;
  return nullptr;
}

}  // namespace

TEST(Validation, StockBuildPasses) {
  const auto summary = qhe::validate_all();
  ASSERT_FALSE(summary.checks.empty());
  for (const auto& c : summary.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(summary.ok());
}

TEST(Validation, LiteralVariantsAreFlagged) {
  const auto summary = qhe::validate_all(qhe::Convention::Literal);
  EXPECT_FALSE(summary.ok());
  const auto* completeness = find(summary, "qutrit GAD completeness");
  const auto* noncyclic = find(summary, "non-cyclic populations");
  ASSERT_NE(completeness, nullptr);
  ASSERT_NE(noncyclic, nullptr);
  EXPECT_FALSE(completeness->passed);
  EXPECT_FALSE(noncyclic->passed);
  const auto* qubit = find(summary, "qubit GAD completeness");
  ASSERT_NE(qubit, nullptr);
  EXPECT_TRUE(qubit->passed);
}
