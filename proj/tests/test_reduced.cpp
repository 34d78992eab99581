#include <gtest/gtest.h>

#include "nugrass/reduced.hpp"
#include "test_support.hpp"

namespace nugrass {
namespace {

const GrassSpec kSmall{1, 1, 2, 2};
const GrassSpec kG{1, 2, 3, 3};

DenseMatrix<Rat> rat_matrix(std::vector<std::vector<Rat>> rows) {
  DenseMatrix<Rat> m(rows.size(), rows.front().size(), Rat(0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// Odd generators of nG_{1|2}(3|3) pair with quadratic monomials and e1e2e3 with 1,
// so nu'' kills every odd label entry.
NuStructure body_free_pairing() {
  std::vector<std::size_t> perm(16);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::swap(perm[0], perm[5]);
  return NuStructure::with_permutation(kG.beta(), perm);
}

TEST(Reduced, NuDoublePrimeOfStandardLabel) {
  const Atlas atlas(kSmall);
  const auto m = nu_double_prime_matrix(atlas.label(parse_chart("1|1")), kSmall, atlas.nu_ptr());
  const RatFunc z(2), o = RatFunc::constant(2, 1), x1 = RatFunc::variable(2, 0), x2 = RatFunc::variable(2, 1);
  DenseMatrix<RatFunc> expected(2, 4, z);
  expected(0, 0) = o;
  expected(0, 1) = x1;
  expected(1, 1) = o;
  expected(1, 2) = o;
  expected(1, 3) = x2;
  EXPECT_EQ(m, expected);
}

TEST(Reduced, NuDoublePrimeWithBodyFreePairing) {
  const Atlas atlas(kG, body_free_pairing());
  const auto m = nu_double_prime_matrix(atlas.label(parse_chart("2,3|1")), kG, atlas.nu_ptr());
  // x1 1 0 | 0 v(x2) e5 over e1 0 1v | 0 v(e3) x3 over e2 0 0 | 1 v(e4) x4
  EXPECT_EQ(m(0, 0), RatFunc::variable(4, 0));
  EXPECT_EQ(m(0, 4), RatFunc::variable(4, 1));
  EXPECT_TRUE(m(0, 5).is_zero());
  EXPECT_TRUE(m(1, 0).is_zero());
  EXPECT_EQ(m(1, 2), RatFunc::constant(4, 1));
  EXPECT_TRUE(m(1, 4).is_zero());
  EXPECT_EQ(m(2, 5), RatFunc::variable(4, 3));
}

TEST(Reduced, PsiAtAPoint) {
  const Atlas atlas(kSmall);
  const DenseMatrix<Rat> psi =
      psi_at(atlas.label(parse_chart("1|1")), kSmall, BigChartIndex{{2, 4}}, atlas.nu_ptr(), {Rat(2), Rat(3)});
  EXPECT_EQ(psi, rat_matrix({{Rat(1, 2), Rat(0)}, {Rat(-1, 6), Rat(1, 3)}}));
  EXPECT_EQ(render(psi), "[[1/2, 0], [-1/6, 1/3]]");
  EXPECT_THROW(psi_at(atlas.label(parse_chart("1|1")), kSmall, BigChartIndex{{2, 4}}, atlas.nu_ptr(), {Rat(0), Rat(3)}),
               Error);
}

TEST(Reduced, ClassicalChartChangeByHand) {
  const auto t = classical_transition(kSmall, parse_chart("1|1"), parse_chart("2|2"));
  ASSERT_EQ(t.size(), 2u);
  const RatFunc o = RatFunc::constant(2, 1);
  EXPECT_EQ(t[0], o / RatFunc::variable(2, 0));
  EXPECT_EQ(t[1], o / RatFunc::variable(2, 1));
  EXPECT_THROW(classical_transition(kSmall, parse_chart("1,2|"), parse_chart("2|2")), Error);
}

TEST(Reduced, BodyOfTransitionIsTheClassicalChartChange) {
  const Atlas atlas(kG);
  TransitionCache cache(atlas);
  for (auto i : atlas.standard_positions())
    for (auto j : atlas.standard_positions()) {
      const TransitionMap* g = cache.get(i, j);
      ASSERT_NE(g, nullptr);
      const auto defect = gtilde_defect(kG, *g);
      EXPECT_FALSE(defect.has_value()) << *defect;
    }
}

TEST(Reduced, ChiInvertsPsiOnEveryChart) {
  for (const GrassSpec s : {kSmall, kG}) {
    const Atlas atlas(s);
    for (const auto& c : atlas.charts()) {
      const auto defect = chi_psi_defect(atlas, c);
      EXPECT_FALSE(defect.has_value()) << c.to_string() << ": " << *defect;
    }
  }
}

TEST(Reduced, ThetaRoundTrip) {
  nugrass::testing::Gen g(61);
  const auto bigs = enumerate_big_charts(kG);
  ASSERT_EQ(bigs.size(), 20u);
  std::size_t done = 0;
  for (int i = 0; i < 300; ++i) {
    DenseMatrix<Rat> y(3, 3, Rat(0));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) y(r, c) = g.rat();
    const auto& b1 = bigs[g.integer(0, 19)];
    const auto& b2 = bigs[g.integer(0, 19)];
    try {
      const DenseMatrix<Rat> there = theta(b1, b2, y, rat_units());
      EXPECT_EQ(theta(b2, b1, there, rat_units()), y);
      EXPECT_TRUE(same_row_space(complete_big(y, b1, rat_units()), complete_big(there, b2, rat_units())));
      ++done;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::SingularMinor);
    }
  }
  EXPECT_GT(done, 100u);
}

TEST(Reduced, LambdaImageMembership) {
  const DenseMatrix<Rat> p = rat_matrix({{Rat(1), Rat(2), Rat(3)}});
  const DenseMatrix<Rat> q = rat_matrix({{Rat(1), Rat(0), Rat(5)}, {Rat(0), Rat(1), Rat(7)}});
  const DenseMatrix<Rat> full = lambda_embed(p, q);
  EXPECT_TRUE(in_lambda_image(full, 1, 2, 3));
  DenseMatrix<Rat> mixed = full;
  mixed(0, 4) = Rat(1);
  EXPECT_FALSE(in_lambda_image(mixed, 1, 2, 3));
}

TEST(Reduced, SamplerIsDeterministicAndBounded) {
  PointSampler a(7), b(7), c(8);
  const auto pa = a.point(50), pb = b.point(50), pc = c.point(50);
  EXPECT_EQ(pa, pb);
  EXPECT_NE(pa, pc);
  for (const auto& v : pa) {
    EXPECT_LE(abs(v.get_num()), 10);
    EXPECT_LE(v.get_den(), 7);
  }
  EXPECT_NE(mix_seed(42, 1, 2), mix_seed(42, 2, 1));
}

TEST(Reduced, BodyFreePairingCommutesDiagramOnStandardCharts) {
  const Atlas atlas(kG, body_free_pairing());
  TransitionCache cache(atlas);
  const auto standard = atlas.standard_positions();
  for (auto i : standard) {
    const ChartIndex& a = atlas.charts()[i];
    const auto big_a = BigChartIndex::associated(a, kG.m);
    const SampleReport lam = check_lambda_image(atlas, a, big_a, 20, 5 + i);
    EXPECT_TRUE(lam.ok()) << a.to_string() << ": " << lam.witness.value_or("");
    EXPECT_GT(lam.tested, 0u);
    for (auto j : standard) {
      if (i == j) continue;
      const TransitionMap* g = cache.get(i, j);
      ASSERT_NE(g, nullptr);
      const auto big_b = BigChartIndex::associated(atlas.charts()[j], kG.m);
      const SampleReport rep = check_diagram(atlas, *g, big_a, big_b, 10, mix_seed(3, i, j));
      EXPECT_TRUE(rep.ok()) << a.to_string() << " -> " << atlas.charts()[j].to_string() << ": "
                            << rep.witness.value_or("");
      EXPECT_GT(rep.tested, 0u);
    }
  }
}

}  // namespace
}  // namespace nugrass
