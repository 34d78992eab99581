#include <gtest/gtest.h>

#include <vector>

#include "nugrass/poly.hpp"
#include "nugrass/rational.hpp"
#include "test_support.hpp"

namespace nugrass {
namespace {

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(parse_rat("3/6"), Rat(1, 2));
  EXPECT_EQ(parse_rat("-4"), Rat(-4));
  EXPECT_EQ(to_string(parse_rat("10/-4")), "-5/2");
  EXPECT_THROW(parse_rat("1/0"), Error);
  EXPECT_THROW(parse_rat("abc"), Error);
}

TEST(Poly, CanonicalTextUsesGradedLexOrder) {
  const Poly x1 = Poly::variable(3, 0), x2 = Poly::variable(3, 1), x3 = Poly::variable(3, 2);
  const Poly p = x3 + x1 * x1 * x2.scaled(Rat(3, 2)) + Poly::constant(3, 1) - x1;
  EXPECT_EQ(p.to_string(), "3/2*x1^2*x2 - x1 + x3 + 1");
  EXPECT_EQ(Poly(2).to_string(), "0");
  EXPECT_EQ((x1 - x1).to_string(), "0");
}

TEST(Poly, GradedLexComparesDegreeFirst) {
  EXPECT_TRUE(grlex_greater(Mono::var(1, 2), Mono::var(0)));
  EXPECT_TRUE(grlex_greater(Mono::var(0) * Mono::var(2), Mono::var(1) * Mono::var(2)));
  EXPECT_FALSE(grlex_greater(Mono::var(1), Mono::var(1)));
}

TEST(Poly, ContextMismatchIsRejected) {
  EXPECT_THROW(Poly::variable(2, 0) + Poly::variable(3, 0), Error);
}

TEST(Poly, ExactDivisionRecoversFactor) {
  nugrass::testing::Gen g(7);
  for (int i = 0; i < 200; ++i) {
    const Poly a = g.poly(3, 3), b = g.poly(3, 2);
    if (b.is_zero()) continue;
    auto q = (a * b).exact_div(b);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, a);
  }
  const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  EXPECT_FALSE((x * x + y).exact_div(x).has_value());
}

TEST(Poly, RingAxiomsOnRandomInstances) {
  nugrass::testing::Gen g(11);
  for (int i = 0; i < 1000; ++i) {
    const Poly a = g.poly(3, 3), b = g.poly(3, 3), c = g.poly(3, 2);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(Poly, EvaluationIsARingMap) {
  nugrass::testing::Gen g(13);
  for (int i = 0; i < 1000; ++i) {
    const Poly a = g.poly(3, 3), b = g.poly(3, 3);
    const std::vector<Rat> pt{g.rat(), g.rat(), g.rat()};
    ASSERT_EQ((a * b).eval(pt), a.eval(pt) * b.eval(pt));
    ASSERT_EQ((a - b).eval(pt), a.eval(pt) - b.eval(pt));
  }
}

TEST(Poly, DerivativeMatchesPowerRule) {
  const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  const Poly p = x.pow(3) * y + x.scaled(5);
  EXPECT_EQ(p.derivative(0), (x * x * y).scaled(3) + Poly::constant(2, 5));
  EXPECT_EQ(p.derivative(1), x.pow(3));
}

}  // namespace
}  // namespace nugrass
