#include <gtest/gtest.h>

#include "qasdyn/errors.hpp"
#include "qasdyn/iteration.hpp"
#include "support.hpp"

using namespace qasdyn;
using namespace qasdyn::testing;

namespace {

HomogeneousMap quadratic_collapse() {
  return map_of({"2*t*z - (z^2 + w^2)", "2*t*w - (z^2 + w^2)", "2*t^2 - (z^2 + w^2)"});
}

HomogeneousMap bonifant_fornaess() { return map_of({"z*t", "-t^2", "w*t + z^2"}); }

}  // namespace

TEST(ProjectivePoint, NormalizesSignAndContent) {
  EXPECT_EQ(ProjectivePoint({Integer(-2), Integer(4), Integer(0)}).to_string(), "[1:-2:0]");
  EXPECT_THROW(ProjectivePoint({Integer(0), Integer(0)}), DomainError);
}

TEST(HomogeneousMap, RejectsBadComponents) {
  EXPECT_THROW(HomogeneousMap({P("z^2"), P("w"), P("t^2")}), StructuralError);
  EXPECT_THROW(HomogeneousMap({P("z^2 + w"), P("w^2"), P("t^2")}), StructuralError);
}

TEST(HomogeneousMap, EvaluateAndIndeterminacy) {
  const auto f = quadratic_collapse();
  const ProjectivePoint p({Integer(1), Integer(0), Integer(0)});
  EXPECT_EQ(apply(f, p)->to_string(), "[1:1:1]");
  EXPECT_TRUE(is_indeterminate(f, ProjectivePoint({Integer(1), Integer(1), Integer(1)})));
  EXPECT_FALSE(apply(f, ProjectivePoint({Integer(1), Integer(1), Integer(1)})).has_value());
}

TEST(HomogeneousMap, ComposeAndNormalize) {
  const auto f = quadratic_collapse();
  const auto raw = compose(f, f);
  for (const auto& c : raw) EXPECT_EQ(c.degree(), 4);
  auto [g, stripped] = normalize_lifting(raw);
  EXPECT_EQ(g.degree(), 3u);
  EXPECT_EQ(stripped, P("t"));
  for (std::size_t i = 0; i < 3; ++i) {
    // stripped * g_i equals raw_i up to one common nonzero scalar.
    const Polynomial lhs = stripped * g[i];
    EXPECT_EQ(canonicalize(lhs), canonicalize(raw[i]));
  }
}

TEST(Jacobian, QuadraticCollapseCriticalSet) {
  const Polynomial J = jacobian_determinant(quadratic_collapse());
  const Polynomial expected = P("t*(2*t^2 + w^2 + z^2 - 2*z*t - 2*w*t)");
  EXPECT_EQ(canonicalize(J), expected);
}

TEST(Jacobian, IndependentDeterminantAtPoints) {
  // det of the numeric Jacobian matrix at sample points, from finite
  // differences of the integer map (exact for degree 2: central differences).
  const auto f = quadratic_collapse();
  const Polynomial J = jacobian_determinant(f);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coord(-20, 20);
  for (int k = 0; k < 25; ++k) {
    std::vector<Integer> x{coord(rng), coord(rng), coord(rng)};
    Integer m[3][3];
    for (std::size_t j = 0; j < 3; ++j) {
      auto xp = x;
      auto xm = x;
      xp[j] += 1;
      xm[j] -= 1;
      const auto fp = evaluate(f, xp);
      const auto fm = evaluate(f, xm);
      for (std::size_t i = 0; i < 3; ++i) m[i][j] = (fp[i] - fm[i]) / 2;
    }
    const Integer det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    EXPECT_EQ(evaluate(J, x), det);
  }
}

TEST(PointOrbit, EntersIndeterminacyOrCycles) {
  const auto f = quadratic_collapse();
  const auto orbit = point_orbit(f, ProjectivePoint({Integer(1), Integer(0), Integer(0)}), 5);
  EXPECT_EQ(orbit.end, OrbitRecord::End::entered_indeterminacy);
  EXPECT_EQ(orbit.step, 1u);
  const auto sq = map_of({"z^2", "w^2", "t^2"});
  const auto fixed = point_orbit(sq, ProjectivePoint({Integer(1), Integer(1), Integer(0)}), 5);
  EXPECT_EQ(fixed.end, OrbitRecord::End::cycle);
  EXPECT_EQ(fixed.period, 1u);
}

TEST(Iteration, QuadraticCollapseDegreesAreNPlusOne) {
  const auto ledger = iterate_naive(quadratic_collapse(), 12);
  ASSERT_TRUE(ledger.reached_horizon());
  const auto d = ledger.degrees();
  ASSERT_EQ(d.size(), 13u);
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(d[n], n + 1) << "n=" << n;
}

TEST(Iteration, MatchesModularLineOracle) {
  const std::vector<HomogeneousMap> maps{quadratic_collapse(), bonifant_fornaess(), map_of({"z^2", "w^2", "t^2"}),
                                         map_of({"w*t", "z*t", "z*w"}), map_of({"z^2", "z*w + t^2", "w^2"})};
  for (const auto& f : maps) {
    const auto ledger = iterate_naive(f, 7);
    EXPECT_EQ(ledger.degrees(), oracle_degrees(f, 7, 11)) << to_string(f[0], zwt());
  }
}

TEST(Iteration, CremonaInvolutionHasDegreesOneTwoOne) {
  const auto ledger = iterate_naive(map_of({"w*t", "z*t", "z*w"}), 4);
  EXPECT_EQ(ledger.degrees(), (std::vector<std::uint64_t>{1, 2, 1, 2, 1}));
}

TEST(Iteration, BudgetStops) {
  Budget tight;
  tight.max_degree = 40;
  const auto ledger = iterate_naive(map_of({"z^2", "w^2", "t^2"}), 10, tight);
  EXPECT_EQ(ledger.budget.stop, StopReason::degree_budget);
  EXPECT_EQ(ledger.degrees().back(), 32u);
  Budget few_terms;
  few_terms.max_terms = 10;
  EXPECT_EQ(iterate_naive(quadratic_collapse(), 10, few_terms).budget.stop, StopReason::term_budget);
}

TEST(RecurrentLaw, QuadraticCollapseStrippedFactorsAreComposedH0) {
  const auto f = quadratic_collapse();
  const auto naive = iterate_naive(f, 12);
  const Polynomial h0 = P("t");
  const auto rec = iterate_recurrent(f, h0, 1, 12);
  EXPECT_TRUE(cross_check(naive, rec).agree);
  for (std::size_t n = 2; n <= 12; ++n) {
    // H0 o F_{n-2} is the last component of F_{n-2}.
    const auto& earlier = naive.steps[n - 2].lifting;
    const std::vector<Polynomial> comps(earlier.components().begin(), earlier.components().end());
    EXPECT_EQ(naive.steps[n].stripped, canonicalize(substitute(h0, comps))) << "n=" << n;
    ASSERT_TRUE(rec.steps[n].divisor.has_value());
  }
}

TEST(RecurrentLaw, ViolationAndArgumentChecks) {
  const auto bf = bonifant_fornaess();
  EXPECT_THROW(iterate_recurrent(bf, P("t^2"), 2, 8), RecurrentLawViolation);
  EXPECT_THROW(iterate_recurrent(quadratic_collapse(), P("t"), 0, 5), StructuralError);
  EXPECT_THROW(iterate_recurrent(quadratic_collapse(), P("t"), 1, 1), StructuralError);
  EXPECT_THROW(iterate_recurrent(quadratic_collapse(), P("z + 1"), 1, 5), StructuralError);
  // Wrong h0: the division at step 2 fails.
  EXPECT_THROW(iterate_recurrent(quadratic_collapse(), P("z"), 1, 5), RecurrentLawViolation);
}

TEST(RecurrentLaw, CrossCheckReportsDivergence) {
  const auto f = quadratic_collapse();
  const auto a = iterate_naive(f, 4);
  auto b = a;
  b.steps[3].degree = 99;
  const auto c = cross_check(a, b);
  EXPECT_FALSE(c.agree);
  ASSERT_TRUE(c.first_divergence.has_value());
  EXPECT_EQ(*c.first_divergence, 3u);
}
