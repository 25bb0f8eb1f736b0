#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hara_eq/json_io.hpp"
#include "hara_eq/oracle.hpp"
#include "hara_eq/quadrinomial.hpp"
#include "test_economies.hpp"

namespace hara_eq {
namespace {

// Independent route to the coefficients: expand the excess-demand numerator
// N(p, q) with q = p^eps as a polynomial in (p, q), then read off the
// coefficients of p q, p, q^2, q and divide by a eps q. Monomials are kept
// in a small table indexed by (deg_p, deg_q).
Quadrinomial expand_numerator(const Economy& econ, const RationalEpsilon& eps) {
  const double e = eps.value();
  const double a = econ.hara.a, b = econ.hara.b;
  double poly[3][3] = {};  // poly[i][j]: coefficient of p^i q^j
  auto add_product = [&](const double lhs[2][2], const double rhs[2][2], double scale) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) poly[i + k][j + l] += scale * lhs[i][j] * rhs[k][l];
  };
  const AgentType* agents[2] = {&econ.agent1, &econ.agent2};
  double sigma[2];
  for (int i = 0; i < 2; ++i) sigma[i] = std::pow(agents[i]->beta, e);
  for (int i = 0; i < 2; ++i) {
    const AgentType& ag = *agents[i];
    // b - b sigma q + a eps (p e + f)
    const double numer[2][2] = {{b + a * e * ag.f, -b * sigma[i]}, {a * e * ag.e, 0.0}};
    // p + sigma_other q
    const double other[2][2] = {{0.0, sigma[1 - i]}, {1.0, 0.0}};
    add_product(numer, other, 1.0);
  }
  const double d1[2][2] = {{0.0, sigma[0]}, {1.0, 0.0}};
  const double d2[2][2] = {{0.0, sigma[1]}, {1.0, 0.0}};
  add_product(d1, d2, -(econ.agent1.e + econ.agent2.e) * a * e);
  EXPECT_NEAR(poly[2][0], 0.0, 1e-12);
  const double k = a * e;
  return Quadrinomial{poly[1][1] / k, poly[1][0] / k, poly[0][2] / k, poly[0][1] / k, eps.n, eps.m};
}

TEST(FromEconomy, EStarCoefficients) {
  const Quadrinomial q = from_economy(testing_economies::e_star(), RationalEpsilon{1, 3});
  EXPECT_NEAR(q.A, -24.0, 1e-12);
  EXPECT_NEAR(q.B, 32.0, 1e-12);
  EXPECT_NEAR(q.C, -16.0, 1e-12);
  EXPECT_NEAR(q.D, 24.0, 1e-12);
  EXPECT_EQ(q.n, 3);
  EXPECT_EQ(q.m, 1);
  EXPECT_TRUE(sign_pattern(q).ok());
}

TEST(FromEconomy, EStarExactCoefficients) {
  const auto q = exact_from_economy(testing_economies::e_star(), RationalEpsilon{1, 3});
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->A, -24);
  EXPECT_EQ(q->B, 32);
  EXPECT_EQ(q->C, -16);
  EXPECT_EQ(q->D, 24);
  EXPECT_EQ(ad_minus_bc(*q), -64);
}

TEST(FromEconomy, ExactPathUnavailableForIrrationalSigma) {
  Economy econ = testing_economies::e_star();
  econ.agent1.beta = 0.5;  // 0.5^(1/3) is irrational
  EXPECT_FALSE(exact_from_economy(econ, RationalEpsilon{1, 3}).has_value());
}

TEST(FromEconomy, CrraWithoutShift) {
  Economy econ = testing_economies::symmetric_crra();
  const Quadrinomial q = from_economy(econ, RationalEpsilon{1, 3});
  EXPECT_DOUBLE_EQ(q.A, -2.0);
  EXPECT_DOUBLE_EQ(q.B, 2.0);
  EXPECT_DOUBLE_EQ(q.C, -2.0);
  EXPECT_DOUBLE_EQ(q.D, 2.0);
}

TEST(FromEconomy, MatchesNumeratorExpansion) {
  EconomySampler sampler(SamplerConfig{.seed = 4, .b_policy = BPolicy::Free, .order_endowments = false});
  for (int i = 0; i < 200; ++i) {
    const Economy econ = sampler.next();
    const RationalEpsilon eps = approximate_inverse_gamma(econ.hara.gamma, 1e-3);
    const Quadrinomial got = from_economy(econ, eps);
    const Quadrinomial want = expand_numerator(econ, eps);
    for (auto [g, w] : {std::pair{got.A, want.A}, {got.B, want.B}, {got.C, want.C}, {got.D, want.D}}) {
      EXPECT_NEAR(g, w, 1e-11 * std::max(1.0, std::abs(w)));
    }
  }
}

TEST(FromEconomy, HomogeneousInEndowmentsWithoutShift) {
  Economy econ = testing_economies::e_star();
  econ.hara.b = 0.0;
  const RationalEpsilon eps{1, 3};
  const Quadrinomial base = from_economy(econ, eps);
  const double lambda = 3.5;
  for (AgentType* ag : {&econ.agent1, &econ.agent2}) {
    ag->e *= lambda;
    ag->f *= lambda;
  }
  const Quadrinomial scaled = from_economy(econ, eps);
  EXPECT_NEAR(scaled.A, lambda * base.A, 1e-12);
  EXPECT_NEAR(scaled.B, lambda * base.B, 1e-12);
  EXPECT_NEAR(scaled.C, lambda * base.C, 1e-12);
  EXPECT_NEAR(scaled.D, lambda * base.D, 1e-12);
}

TEST(FromEconomy, DeterministicBitForBit) {
  const Economy econ = EconomySampler(SamplerConfig{.seed = 77}).next();
  const RationalEpsilon eps = approximate_inverse_gamma(econ.hara.gamma);
  EXPECT_EQ(from_economy(econ, eps), from_economy(econ, eps));
}

TEST(FromEconomy, DegenerateCoefficientRejected) {
  // b = 0 and f1 = f2 = 0 make both B and D vanish.
  Economy econ{HARAParams{3.0, 1.0, 0.0}, AgentType{0.5, 1.0, 0.0}, AgentType{1.0, 1.0, 0.0}};
  EXPECT_THROW(from_economy(econ, RationalEpsilon{1, 3}), DegenerateError);
}

TEST(Evaluate, EStarPolynomialPoints) {
  const Quadrinomial q{-24, 32, -14, 24, 3, 1};
  EXPECT_DOUBLE_EQ(evaluate(q, 0.0), 24.0);
  EXPECT_DOUBLE_EQ(evaluate(q, 1.0), 18.0);
  EXPECT_DOUBLE_EQ(evaluate(q, 2.0), -68.0);
}

TEST(PriceRootMap, CubeAndCubeRoot) {
  const Quadrinomial q{-24, 32, -14, 24, 3, 1};
  EXPECT_DOUBLE_EQ(price_from_root(q, 2.0), 8.0);
  EXPECT_NEAR(root_from_price(q, 8.0), 2.0, 1e-15);
  EXPECT_THROW(price_from_root(q, 0.0), InputError);
  EXPECT_THROW(root_from_price(q, -1.0), InputError);
}

TEST(PriceRootMap, RoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> logp(std::log(1e-6), std::log(1e6));
  for (std::int64_t n : {3, 7, 22, 333, 4001}) {
    const Quadrinomial q{-1, 1, -1, 1, n, 1};
    for (int i = 0; i < 200; ++i) {
      const double p = std::exp(logp(rng));
      EXPECT_NEAR(price_from_root(q, root_from_price(q, p)), p, 4e-16 * static_cast<double>(n + 2) * p);
    }
  }
}

TEST(AdMinusBc, Examples) {
  EXPECT_DOUBLE_EQ(ad_minus_bc(Quadrinomial{-24, 32, -14, 24, 3, 1}), -128.0);
  EXPECT_DOUBLE_EQ(ad_minus_bc(Quadrinomial{-24, 32, -16, 24, 3, 1}), -64.0);
  EXPECT_DOUBLE_EQ(ad_minus_bc(Quadrinomial{1, -6, 11, -6, 3, 1}), 60.0);
  EXPECT_DOUBLE_EQ(ad_minus_bc(Quadrinomial{1, -1, -1, 1, 3, 1}), 0.0);
}

// sign(P(p^(1/n))) = sign(excess demand(p)) away from a tiny dead band.
TEST(SignAgreement, QuadrinomialTracksExcessDemand) {
  EconomySampler sampler(SamplerConfig{.seed = 21, .b_policy = BPolicy::Free, .order_endowments = false});
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> logp(std::log(1e-4), std::log(1e4));
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    const Economy econ = sampler.next();
    const RationalEpsilon eps = approximate_inverse_gamma(econ.hara.gamma);
    const Quadrinomial q = from_economy(econ, eps);
    for (int j = 0; j < 20; ++j) {
      const double p = std::exp(logp(rng));
      const double z = excess_demand(econ, eps, p);
      if (std::abs(z) < 1e-12) continue;
      const double v = sparse::scaled_eval(sparse::terms_of(q), root_from_price(q, p)).value;
      EXPECT_EQ(sign_of(v), sign_of(z)) << "p=" << p;
      ++compared;
    }
  }
  EXPECT_GT(compared, 3000);
}

TEST(SignPattern, HoldsUnderTheSufficientConditions) {
  EconomySampler sampler(SamplerConfig{.seed = 31});
  for (int i = 0; i < 200; ++i) {
    const Economy econ = sampler.next();
    EXPECT_TRUE(sign_pattern(from_economy(econ, approximate_inverse_gamma(econ.hara.gamma))).ok());
  }
}

TEST(Validation, ExponentsAndZeros) {
  EXPECT_THROW(validate(Quadrinomial{1, 1, 1, 1, 4, 2}), InputError);
  EXPECT_THROW(validate(Quadrinomial{1, 0, 1, 1, 3, 1}), DegenerateError);
  EXPECT_NO_THROW(validate(Quadrinomial{1, 1, 1, 1, 5, 2}));
}

TEST(Json, RoundTripAndSchemaErrors) {
  const Quadrinomial q{-24, 32, -16, 24, 3, 1};
  EXPECT_EQ(quadrinomial_from_json(to_json(q)), q);
  EXPECT_THROW(quadrinomial_from_json(json{{"A", 1}, {"B", 1}, {"C", 1}, {"n", 3}, {"m", 1}}), InputError);
  EXPECT_THROW(quadrinomial_from_json(json{{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}, {"n", 3.5}, {"m", 1}}),
               InputError);
}

}  // namespace
}  // namespace hara_eq
