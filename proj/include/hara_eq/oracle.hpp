#pragma once

// Brute-force cross-checks: grid sign scans of the excess demand, direct
// utility maximization on the budget line, a fuzzer for the double-root
// inequality, and the root-count comparison between the rational exponent
// and the true 1/gamma.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hara_eq/economy.hpp"
#include "hara_eq/errors.hpp"
#include "hara_eq/exact.hpp"
#include "hara_eq/quadrinomial.hpp"
#include "hara_eq/rational_approx.hpp"
#include "hara_eq/root_analysis.hpp"

namespace hara_eq {

// ---------------------------------------------------------------------------
// Random economies.

enum class BPolicy { AtThresholdScaled, Fixed, Free };

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::pair<double, double> gamma_range{2.0, 12.0};      // (lo, hi]
  std::pair<double, double> endowment_range{0.0, 10.0};  // (lo, hi]
  std::pair<double, double> beta_ratio_range{1.1, 100.0};
  std::pair<double, double> beta1_range{0.05, 1.0};
  double a = 1.0;
  BPolicy b_policy = BPolicy::AtThresholdScaled;
  double b_scale = 1.01;                     // AtThresholdScaled
  double b_fixed = 0.0;                      // Fixed
  std::pair<double, double> b_range{0.0, 10.0};  // Free
  // Order endowments so that e1 <= e2 and f1 >= f2 (beta1 < beta2 always).
  bool order_endowments = true;
};

class EconomySampler {
 public:
  explicit EconomySampler(SamplerConfig config = {}) : config_(std::move(config)), rng_(config_.seed) {}

  const SamplerConfig& config() const { return config_; }

  Economy next() {
    Economy econ;
    econ.hara.a = config_.a;
    econ.hara.gamma = half_open(config_.gamma_range);
    const double beta1 = uniform(config_.beta1_range);
    econ.agent1.beta = beta1;
    econ.agent2.beta = beta1 * uniform(config_.beta_ratio_range);
    double e1 = half_open(config_.endowment_range), e2 = half_open(config_.endowment_range);
    double f1 = half_open(config_.endowment_range), f2 = half_open(config_.endowment_range);
    if (config_.order_endowments) {
      if (e1 > e2) std::swap(e1, e2);
      if (f1 < f2) std::swap(f1, f2);
    }
    econ.agent1.e = e1;
    econ.agent1.f = f1;
    econ.agent2.e = e2;
    econ.agent2.f = f2;
    switch (config_.b_policy) {
      case BPolicy::AtThresholdScaled: {
        const double threshold = (econ.hara.a / econ.hara.gamma) *
                                 std::pow(econ.agent2.beta / econ.agent1.beta, 2.0 / econ.hara.gamma) * (e2 + f1);
        econ.hara.b = config_.b_scale * threshold;
        break;
      }
      case BPolicy::Fixed: econ.hara.b = config_.b_fixed; break;
      case BPolicy::Free: econ.hara.b = uniform(config_.b_range); break;
    }
    validate(econ);
    return econ;
  }

  double uniform(std::pair<double, double> range) {
    return std::uniform_real_distribution<double>(range.first, range.second)(rng_);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  // Uniform on (lo, hi].
  double half_open(std::pair<double, double> range) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    return range.second - u * (range.second - range.first);
  }

  SamplerConfig config_;
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Sign scans.

struct SignScanOptions {
  int grid_points = 10'000;
  double p_lo = 1e-6;
  double p_hi = 1e6;
};

// Crossings closer than this (relative, in p) are treated as a noise pair
// and dropped together.
inline constexpr double kSpuriousPairSeparation = 1e-9;

// Zero crossings of f over a log-spaced grid on [p_lo, p_hi], each refined
// by bisection.
template <class F>
std::vector<double> sign_change_locations(F&& f, double p_lo, double p_hi, int grid_points) {
  if (!(p_lo > 0.0) || !(p_hi > p_lo)) throw InputError("sign scan needs 0 < p_lo < p_hi");
  if (grid_points < 2) throw InputError("sign scan needs at least two grid points");
  const double log_lo = std::log(p_lo);
  const double step = (std::log(p_hi) - log_lo) / static_cast<double>(grid_points - 1);

  std::vector<double> crossings;
  double prev_p = 0.0;
  int prev_sign = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double p = i == grid_points - 1 ? p_hi : std::exp(log_lo + step * i);
    const int s = sign_of(f(p));
    if (s == 0) continue;
    if (prev_sign != 0 && s != prev_sign) {
      double lo = prev_p, hi = p;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi)) break;
        const int sm = sign_of(f(mid));
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == prev_sign) lo = mid; else hi = mid;
      }
      crossings.push_back(std::sqrt(lo * hi));
    }
    prev_p = p;
    prev_sign = s;
  }

  std::vector<double> kept;
  for (double c : crossings) {
    if (!kept.empty() && std::abs(c - kept.back()) <= kSpuriousPairSeparation * kept.back()) {
      kept.pop_back();
      continue;
    }
    kept.push_back(c);
  }
  return kept;
}

template <class F>
int count_sign_changes(F&& f, double p_lo, double p_hi, int grid_points) {
  return static_cast<int>(sign_change_locations(std::forward<F>(f), p_lo, p_hi, grid_points).size());
}

// `epsilon` is the demand exponent: m/n for the rational model, 1/gamma for
// the unperturbed one.
inline int sign_change_count(const Economy& econ, double epsilon, int grid_points = 10'000, double p_lo = 1e-6,
                             double p_hi = 1e6) {
  if (grid_points < 1000) throw InputError("sign_change_count needs grid_points >= 1000");
  return count_sign_changes([&](double p) { return excess_demand(econ, epsilon, p); }, p_lo, p_hi, grid_points);
}

inline int sign_change_count(const Economy& econ, const RationalEpsilon& eps, int grid_points = 10'000,
                             double p_lo = 1e-6, double p_hi = 1e6) {
  if (grid_points < 1000) throw InputError("sign_change_count needs grid_points >= 1000");
  return count_sign_changes([&](double p) { return excess_demand(econ, eps, p); }, p_lo, p_hi, grid_points);
}

// ---------------------------------------------------------------------------
// Demand by direct maximization.

// argmax of u_H(x) + beta u_H(W - p x) over the budget segment x in [0, W/p],
// W = p e + f, using the exact exponent gamma. A coarse grid picks the
// bracket, golden-section search narrows it, and bisection on the
// marginal-utility gap u'(x) - p beta u'(y) finishes the job.
inline double demand_oracle(const HARAParams& h, const AgentType& agent, double p, int grid_points = 2000) {
  require_positive_price(p);
  validate_bernoulli(h);
  const double wealth = p * agent.e + agent.f;
  if (!(wealth > 0.0)) throw DomainError("wealth", "budget segment is empty");
  const double x_max = wealth / p;

  auto value = [&](double x) {
    const double y = wealth - p * x;
    const double bx = h.b + (h.a / h.gamma) * x;
    const double by = h.b + (h.a / h.gamma) * y;
    if (!(bx > 0.0) || !(by > 0.0)) return -std::numeric_limits<double>::infinity();
    return hara_bernoulli(h, x) + agent.beta * hara_bernoulli(h, y);
  };

  const int points = std::max(grid_points, 16);
  int best = -1;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= points; ++i) {
    const double x = x_max * static_cast<double>(i) / points;
    const double v = value(x);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best < 0) throw DomainError("x", "utility undefined on the whole budget segment");

  double lo = x_max * static_cast<double>(std::max(best - 1, 0)) / points;
  double hi = x_max * static_cast<double>(std::min(best + 1, points)) / points;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = value(c), fd = value(d);
  while (hi - lo > 1e-7 * std::max(1.0, x_max)) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = value(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = value(d);
    }
  }

  // Widen the golden bracket slightly and bisect on the first-order gap,
  // which is strictly decreasing in x.
  const double pad = 1e-6 * std::max(1.0, x_max);
  double flo = std::max(0.0, lo - pad);
  double fhi = std::min(x_max, hi + pad);
  auto gap = [&](double x) {
    const double bx = h.b + (h.a / h.gamma) * x;
    const double by = h.b + (h.a / h.gamma) * (wealth - p * x);
    if (!(bx > 0.0)) return std::numeric_limits<double>::infinity();
    if (!(by > 0.0)) return -std::numeric_limits<double>::infinity();
    return hara_marginal(h, x) - p * agent.beta * hara_marginal(h, wealth - p * x);
  };
  if (gap(flo) > 0.0 && gap(fhi) < 0.0) {
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = flo + 0.5 * (fhi - flo);
      if (!(mid > flo && mid < fhi)) break;
      if (gap(mid) > 0.0) flo = mid; else fhi = mid;
    }
  }
  return flo + 0.5 * (fhi - flo);
}

// ---------------------------------------------------------------------------
// Double-root inequality fuzzer.

struct LemmaFuzzReport {
  int trials = 0;
  int discarded_degenerate = 0;
  int violations = 0;                // AD - BC < 0 on a double positive root
  int equality_cases = 0;            // alpha^m A + B == 0
  int equality_mismatches = 0;       // AD - BC == 0 disagrees with the family test
  int closed_form_mismatches = 0;
  int remainder_mismatches = 0;      // remainder not (0, 0) or not (P'(a), P(a) - a P'(a))
  std::vector<std::string> failures;

  bool clean() const {
    return violations == 0 && equality_mismatches == 0 && closed_form_mismatches == 0 && remainder_mismatches == 0;
  }
};

namespace detail {

inline mpq_class random_rational(std::mt19937_64& rng, int max_abs, bool allow_negative) {
  std::uniform_int_distribution<int> num(1, max_abs);
  std::uniform_int_distribution<int> den(1, max_abs);
  mpq_class q = make_rational(num(rng), den(rng));
  if (allow_negative && std::uniform_int_distribution<int>(0, 1)(rng) == 1) q = -q;
  return q;
}

}  // namespace detail

// Every fifth trial is drawn from the equality family B = -alpha^m A.
inline LemmaFuzzReport lemma_fuzzer(int trials, int max_n = 15, std::uint64_t seed = 0) {
  if (max_n < 5) throw InputError("lemma_fuzzer needs max_n >= 5");
  if (trials < 0) throw InputError("trials must be nonnegative");
  std::mt19937_64 rng(seed);
  LemmaFuzzReport report;
  while (report.trials < trials) {
    const int n = std::uniform_int_distribution<int>(3, max_n)(rng);
    const int m = std::uniform_int_distribution<int>(1, (n - 1) / 2)(rng);
    const mpq_class alpha = detail::random_rational(rng, 12, false);
    const mpq_class A = detail::random_rational(rng, 20, true);
    const mpq_class B = report.trials % 5 == 0 ? mpq_class(-pow_int(alpha, m) * A)
                                               : detail::random_rational(rng, 20, true);
    ExactQuadrinomial q;
    try {
      q = solve_double_root_family(n, m, alpha, A, B);
    } catch (const DegenerateError&) {
      ++report.discarded_degenerate;
      continue;
    }
    ++report.trials;

    const LinearRemainder r = remainder_after_double_division(q, alpha);
    const RationalPolynomial dense = to_dense(q);
    const mpq_class p_alpha = dense(alpha);
    const mpq_class dp_alpha = dense.derivative()(alpha);
    if (!r.vanishes() || r.slope != dp_alpha || r.intercept != p_alpha - alpha * dp_alpha) {
      ++report.remainder_mismatches;
      report.failures.push_back("remainder n=" + std::to_string(n) + " m=" + std::to_string(m));
      continue;
    }
    const DivpolCheck check = lemma_divpol_check(q, alpha);
    if (check.equality_family) ++report.equality_cases;
    if (!check.nonnegative) {
      ++report.violations;
      report.failures.push_back("AD-BC<0 n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                " alpha=" + alpha.get_str());
    }
    if (!check.equality_iff_family) ++report.equality_mismatches;
    if (!check.closed_form_matches) ++report.closed_form_mismatches;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rational exponent versus the true 1/gamma.

struct PerturbationRow {
  double tol = 0.0;
  RationalEpsilon epsilon;
  int polynomial_roots = 0;
  int sign_changes_true_gamma = 0;
  bool agree = false;
};

struct PerturbationReport {
  std::vector<PerturbationRow> rows;

  bool all_agree() const {
    return std::all_of(rows.begin(), rows.end(), [](const PerturbationRow& r) { return r.agree; });
  }
};

inline PerturbationReport perturbation_consistency(const Economy& econ, const std::vector<double>& tols,
                                                   const SignScanOptions& scan = {},
                                                   std::int64_t max_denominator = 1'000'000) {
  validate(econ);
  const int true_count = sign_change_count(econ, 1.0 / econ.hara.gamma, scan.grid_points, scan.p_lo, scan.p_hi);
  PerturbationReport report;
  for (double tol : tols) {
    PerturbationRow row;
    row.tol = tol;
    row.epsilon = approximate_inverse_gamma(econ.hara.gamma, tol, max_denominator);
    row.polynomial_roots = count_positive_roots(from_economy(econ, row.epsilon));
    row.sign_changes_true_gamma = true_count;
    row.agree = row.polynomial_roots == row.sign_changes_true_gamma;
    report.rows.push_back(row);
  }
  return report;
}

// Random search for economies whose unperturbed excess demand crosses zero
// more than once. Returns whatever was found, possibly nothing.
inline std::vector<Economy> search_multiple_equilibria(EconomySampler& sampler, int trials,
                                                       const SignScanOptions& scan = {}) {
  std::vector<Economy> found;
  for (int t = 0; t < trials; ++t) {
    const Economy econ = sampler.next();
    if (sign_change_count(econ, 1.0 / econ.hara.gamma, scan.grid_points, scan.p_lo, scan.p_hi) >= 2) {
      found.push_back(econ);
    }
  }
  return found;
}

}  // namespace hara_eq
