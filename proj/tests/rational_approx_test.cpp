#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>

#include "hara_eq/exact.hpp"
#include "hara_eq/rational_approx.hpp"

namespace hara_eq {
namespace {

// Smallest denominator d admitting a reduced m/d, d > 2m, within tol of
// 1/gamma (exact comparison on the binary value of gamma).
std::optional<RationalEpsilon> brute_force_min_denominator(double gamma, double tol, std::int64_t limit) {
  const mpq_class target = 1 / mpq_class(gamma);
  const mpq_class tol_q(tol);
  for (std::int64_t d = 3; d <= limit; ++d) {
    const auto centre = static_cast<std::int64_t>(std::llround(static_cast<double>(d) / gamma));
    std::optional<RationalEpsilon> best;
    mpq_class best_err;
    for (std::int64_t m = std::max<std::int64_t>(1, centre - 1); m <= centre + 1; ++m) {
      if (d <= 2 * m || std::gcd(m, d) != 1) continue;
      const mpq_class err = abs(make_rational(m, d) - target);
      if (err <= tol_q && (!best || err < best_err)) {
        best = RationalEpsilon{m, d};
        best_err = err;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

TEST(ApproximateInverseGamma, ExactThird) {
  for (double tol : {1e-1, 1e-6, 1e-12}) {
    EXPECT_EQ(approximate_inverse_gamma(3.0, tol), (RationalEpsilon{1, 3}));
  }
}

TEST(ApproximateInverseGamma, ExactTwoFifths) { EXPECT_EQ(approximate_inverse_gamma(2.5), (RationalEpsilon{2, 5})); }

TEST(ApproximateInverseGamma, PiAtOneThousandth) {
  EXPECT_EQ(approximate_inverse_gamma(std::numbers::pi, 1e-3), (RationalEpsilon{7, 22}));
  // Next convergent once the tolerance drops below |7/22 - 1/pi|.
  EXPECT_EQ(approximate_inverse_gamma(std::numbers::pi, 1e-5), (RationalEpsilon{106, 333}));
}

TEST(ApproximateInverseGamma, MatchesExhaustiveScan) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> gamma_dist(2.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const double gamma = std::nextafter(gamma_dist(rng), 60.0);
    for (double tol : {1e-2, 1e-4, 1e-6}) {
      const RationalEpsilon eps = approximate_inverse_gamma(gamma, tol);
      EXPECT_NO_THROW(validate(eps));
      EXPECT_LE(std::abs(eps.value() - 1.0 / gamma), tol * (1 + 1e-9));
      const auto brute = brute_force_min_denominator(gamma, tol, eps.n);
      ASSERT_TRUE(brute.has_value()) << "gamma=" << gamma << " tol=" << tol;
      EXPECT_EQ(*brute, eps) << "gamma=" << gamma << " tol=" << tol;
    }
  }
}

TEST(ApproximateInverseGamma, RefinementNeverWorsens) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> gamma_dist(2.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double gamma = gamma_dist(rng);
    double previous = INFINITY;
    for (double tol : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8}) {
      const double err = std::abs(approximate_inverse_gamma(gamma, tol).value() - 1.0 / gamma);
      EXPECT_LE(err, previous * (1 + 1e-12)) << gamma << " " << tol;
      previous = err;
    }
  }
}

TEST(ApproximateInverseGamma, BudgetExhaustedCarriesBestCandidate) {
  try {
    approximate_inverse_gamma(std::numbers::pi, 1e-9, 100);
    FAIL() << "expected ApproximationError";
  } catch (const ApproximationError& e) {
    ASSERT_TRUE(e.best_candidate().has_value());
    EXPECT_LE(e.best_candidate()->n, 100);
    EXPECT_EQ(*e.best_candidate(), (RationalEpsilon{7, 22}));
    EXPECT_GT(e.best_error(), 1e-9);
  }
}

TEST(ApproximateInverseGamma, RejectsBadArguments) {
  EXPECT_THROW(approximate_inverse_gamma(2.0), InputError);
  EXPECT_THROW(approximate_inverse_gamma(1.5), InputError);
  EXPECT_THROW(approximate_inverse_gamma(3.5, 0.0), InputError);
  EXPECT_THROW(approximate_inverse_gamma(3.5, 1e-6, 2), InputError);
}

TEST(EpsilonValue, PlainQuotient) {
  EXPECT_DOUBLE_EQ(epsilon_value({1, 3}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(epsilon_value({2, 5}), 0.4);
  EXPECT_DOUBLE_EQ(epsilon_value({7, 22}), 7.0 / 22.0);
}

TEST(RationalEpsilon, InvariantsAndParsing) {
  EXPECT_THROW(make_epsilon(2, 6), InputError);  // not reduced
  EXPECT_THROW(make_epsilon(1, 2), InputError);  // n = 2m
  EXPECT_THROW(make_epsilon(0, 3), InputError);
  EXPECT_EQ(parse_epsilon("7/22"), (RationalEpsilon{7, 22}));
  EXPECT_THROW(parse_epsilon("7:22"), InputError);
  EXPECT_THROW(parse_epsilon("7/22x"), InputError);
}

}  // namespace
}  // namespace hara_eq
