#include <gtest/gtest.h>

#include <vector>

#include "nugrass/ratfunc.hpp"
#include "test_support.hpp"

namespace nugrass {
namespace {

RatFunc x(std::size_t i) { return RatFunc::variable(2, i); }
RatFunc c(long v) { return RatFunc::constant(2, Rat(v)); }

TEST(RatFunc, NormalFormCancelsCommonFactors) {
  const RatFunc r = (x(0) * x(0) - c(1)) / (x(0) - c(1));
  EXPECT_TRUE(r.is_polynomial());
  EXPECT_EQ(r.to_string(), "x1 + 1");
}

TEST(RatFunc, TextWrapsCompoundParts) {
  EXPECT_EQ((c(1) / (x(0) * x(1))).to_string(), "1/(x1*x2)");
  EXPECT_EQ(((x(0) + c(1)) / x(1)).to_string(), "(x1 + 1)/x2");
  EXPECT_EQ((c(-2) / x(1)).to_string(), "-2/x2");
}

TEST(RatFunc, DenominatorIsMonicInLeadingTerm) {
  const RatFunc a = c(1) / x(0).scaled(Rat(4));
  EXPECT_EQ(a.to_string(), "1/4/x1");
  EXPECT_EQ(a * x(0).scaled(Rat(4)), c(1));
}

TEST(RatFunc, ZeroInverseIsRejected) {
  EXPECT_THROW(RatFunc(2).inv(), Error);
}

TEST(RatFunc, EvaluationAtAPoleIsRejected) {
  const std::vector<Rat> pt{Rat(0), Rat(1)};
  EXPECT_THROW((c(1) / x(0)).eval_at(pt), Error);
}

TEST(RatFunc, FieldAxiomsOnRandomInstances) {
  nugrass::testing::Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    const RatFunc a = g.ratfunc(2), b = g.ratfunc(2), d = g.ratfunc(2);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * (b + d), a * b + a * d);
    ASSERT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      ASSERT_TRUE((a * a.inv()).is_one());
    }
  }
}

TEST(RatFunc, QuotientRuleForDerivative) {
  nugrass::testing::Gen g(22);
  for (int i = 0; i < 200; ++i) {
    const RatFunc a = g.ratfunc(2), b = g.ratfunc(2);
    if (b.is_zero()) continue;
    ASSERT_EQ((a * b).derivative(0), a.derivative(0) * b + a * b.derivative(0));
  }
}

}  // namespace
}  // namespace nugrass
