#include <gtest/gtest.h>

#include <cmath>

#include "hara_eq/certifier.hpp"
#include "hara_eq/oracle.hpp"
#include "hara_eq/solver.hpp"
#include "test_economies.hpp"

namespace hara_eq {
namespace {

TEST(SignChangeCount, KnownEconomies) {
  EXPECT_EQ(sign_change_count(testing_economies::e_star(), RationalEpsilon{1, 3}), 1);
  EXPECT_EQ(sign_change_count(testing_economies::e_star(), 1.0 / 3.0), 1);
  EXPECT_EQ(sign_change_count(testing_economies::symmetric_crra(), RationalEpsilon{1, 3}), 1);
  EXPECT_EQ(sign_change_count(testing_economies::crra_closed_form(), RationalEpsilon{1, 3}), 1);
}

TEST(SignChangeCount, GridTooCoarseIsRejected) {
  EXPECT_THROW(sign_change_count(testing_economies::e_star(), 1.0 / 3.0, 999), InputError);
}

// (x - 1)(x - 2)(x - 3) in x = p^(1/3): crossings at p = 1, 8, 27.
TEST(SignChangeLocations, CubicInCubeRoot) {
  const Quadrinomial q{1, -6, 11, -6, 3, 1};
  const auto crossings =
      sign_change_locations([&](double p) { return evaluate(q, std::cbrt(p)); }, 1e-6, 1e6, 10'000);
  ASSERT_EQ(crossings.size(), 3u);
  EXPECT_NEAR(crossings[0], 1.0, 1e-9);
  EXPECT_NEAR(crossings[1], 8.0, 1e-8);
  EXPECT_NEAR(crossings[2], 27.0, 1e-8);
}

TEST(SignChangeLocations, TangencyIsNotACrossing) {
  const Quadrinomial q{1, -1, -1, 1, 3, 1};
  EXPECT_EQ(count_sign_changes([&](double p) { return evaluate(q, std::cbrt(p)); }, 1e-6, 1e6, 10'000), 0);
}

TEST(DemandOracle, MatchesClosedFormOnExactExponents) {
  const HARAParams h{3.0, 1.0, 5.0};
  const AgentType agent{1.0, 1.0, 1.0};
  int checked = 0;
  for (double p = 0.05; p < 50.0; p *= 1.5) {
    const Allocation alloc = allocation(h, agent, RationalEpsilon{1, 3}, p);
    if (!alloc.interior) continue;
    EXPECT_NEAR(demand_oracle(h, agent, p), alloc.x, 1e-6 * std::max(1.0, alloc.x)) << p;
    ++checked;
  }
  EXPECT_GE(checked, 3);
}

// Outside the interior the oracle stays on the budget segment.
TEST(DemandOracle, CornerStaysFeasible) {
  const HARAParams h{3.0, 1.0, 5.0};
  const AgentType agent{0.125, 1.0, 1.0};
  const double p = 0.5;
  EXPECT_FALSE(allocation(h, agent, RationalEpsilon{1, 3}, p).interior);
  const double x = demand_oracle(h, agent, p);
  EXPECT_GE(x, 0.0);
  EXPECT_LE(x, (p * agent.e + agent.f) / p);
}

TEST(Solve, ClosedFormPrices) {
  const SolveResult sym = solve_equilibria(testing_economies::symmetric_crra(), RationalEpsilon{1, 3});
  ASSERT_EQ(sym.equilibria.size(), 1u);
  EXPECT_NEAR(sym.equilibria[0].price, 1.0, 1e-12);
  const SolveResult cf = solve_equilibria(testing_economies::crra_closed_form(), RationalEpsilon{1, 3});
  ASSERT_EQ(cf.equilibria.size(), 1u);
  EXPECT_NEAR(cf.equilibria[0].price, 8.0, 1e-10);
}

TEST(Solve, EStarPriceAndAllocations) {
  const Economy econ = testing_economies::e_star();
  const SolveResult r = solve_equilibria(econ, RationalEpsilon{1, 3});
  ASSERT_EQ(r.equilibria.size(), 1u);
  const Equilibrium& eq = r.equilibria[0];
  EXPECT_NEAR(eq.price, 2.6092783987377914, 1e-10);
  EXPECT_LT(std::abs(eq.residual), 1e-10);
  EXPECT_NEAR(eq.agent1.x + eq.agent2.x, 2.0, 1e-10);
  EXPECT_NEAR(eq.agent1.y + eq.agent2.y, 2.0, 1e-10);
}

TEST(Perturbation, KnownEconomiesAgree) {
  const std::vector<double> tols{1e-2, 1e-4, 1e-6};
  EXPECT_TRUE(perturbation_consistency(testing_economies::e_star(), tols).all_agree());
  EXPECT_TRUE(perturbation_consistency(testing_economies::symmetric_crra(), tols).all_agree());
  Economy irrational = testing_economies::e_star();
  irrational.hara.gamma = std::numbers::pi;
  const PerturbationReport rep = perturbation_consistency(irrational, tols);
  EXPECT_TRUE(rep.all_agree());
  EXPECT_EQ(rep.rows[0].epsilon, (RationalEpsilon{5, 16}));
}

TEST(Perturbation, SampledEconomiesAgree) {
  EconomySampler sampler(SamplerConfig{.seed = 41, .b_policy = BPolicy::Free});
  for (int i = 0; i < 40; ++i) {
    const Economy econ = sampler.next();
    const PerturbationReport rep = perturbation_consistency(econ, {1e-3, 1e-6}, SignScanOptions{2000, 1e-6, 1e6});
    for (const auto& row : rep.rows) {
      EXPECT_TRUE(row.agree) << "gamma=" << econ.hara.gamma << " tol=" << row.tol << " roots=" << row.polynomial_roots
                             << " crossings=" << row.sign_changes_true_gamma;
    }
  }
}

// The sampler's unrestricted region: any economy with several crossings is
// reported, and each one must carry an uncertified verdict.
TEST(MultipleEquilibria, AnyFindIsUncertified) {
  EconomySampler sampler(SamplerConfig{.seed = 43, .b_policy = BPolicy::Free, .order_endowments = false});
  const auto found = search_multiple_equilibria(sampler, 200, SignScanOptions{2000, 1e-6, 1e6});
  for (const Economy& econ : found) {
    if (econ.agent1.beta == econ.agent2.beta) continue;
    EXPECT_EQ(certify(econ, approximate_inverse_gamma(econ.hara.gamma)).verdict, Verdict::NotCertified);
  }
  RecordProperty("multiple_equilibrium_economies", static_cast<int>(found.size()));
}

TEST(Sampler, DeterministicAndInDomain) {
  EconomySampler a(SamplerConfig{.seed = 9}), b(SamplerConfig{.seed = 9});
  for (int i = 0; i < 100; ++i) {
    const Economy x = a.next(), y = b.next();
    EXPECT_EQ(x.hara.gamma, y.hara.gamma);
    EXPECT_EQ(x.agent1.e, y.agent1.e);
    EXPECT_GT(x.hara.gamma, 2.0);
    EXPECT_LE(x.hara.gamma, 12.0);
    EXPECT_LT(x.agent1.beta, x.agent2.beta);
    EXPECT_LE(x.agent1.e, x.agent2.e);
    EXPECT_GE(x.agent1.f, x.agent2.f);
    EXPECT_NEAR(x.hara.b, 1.01 * c2_threshold(x), 1e-12 * x.hara.b);
  }
}

}  // namespace
}  // namespace hara_eq
