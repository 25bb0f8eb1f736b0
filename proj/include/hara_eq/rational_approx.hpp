#pragma once

// Rational approximation m/n of 1/gamma with n > 2m.
//
// Candidates are walked in increasing-denominator order through the
// continued-fraction convergents of 1/gamma and the intermediate fractions
// between them. Every fraction with minimal denominator inside a tolerance
// window is one of those, so the first hit is the minimal-denominator
// answer. All comparisons run in exact arithmetic on the binary value of
// gamma.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "hara_eq/errors.hpp"
#include "hara_eq/exact.hpp"

namespace hara_eq {

struct RationalEpsilon {
  std::int64_t m = 1;
  std::int64_t n = 3;

  double value() const { return static_cast<double>(m) / static_cast<double>(n); }
  mpq_class exact() const { return make_rational(m, n); }
  std::string to_string() const { return std::to_string(m) + "/" + std::to_string(n); }

  friend bool operator==(const RationalEpsilon&, const RationalEpsilon&) = default;
};

inline double epsilon_value(const RationalEpsilon& eps) { return eps.value(); }

// base^(m/n) with the exponent carried in extended precision, so exact powers
// such as 0.125^(1/3) come out exact.
inline double rational_power(double base, const RationalEpsilon& eps) {
  const long double exponent = static_cast<long double>(eps.m) / static_cast<long double>(eps.n);
  return static_cast<double>(std::pow(static_cast<long double>(base), exponent));
}

inline void validate(const RationalEpsilon& eps) {
  if (eps.m <= 0 || eps.n <= 0) {
    throw InputError("epsilon " + eps.to_string() + ": m and n must be positive");
  }
  if (std::gcd(eps.m, eps.n) != 1) {
    throw InputError("epsilon " + eps.to_string() + " is not reduced");
  }
  if (eps.n <= 2 * eps.m) {
    throw InputError("epsilon " + eps.to_string() + " violates n > 2m");
  }
}

inline RationalEpsilon make_epsilon(std::int64_t m, std::int64_t n) {
  RationalEpsilon eps{m, n};
  validate(eps);
  return eps;
}

// Parses "m/n".
inline RationalEpsilon parse_epsilon(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    throw InputError("epsilon must be written m/n, got '" + text + "'");
  }
  try {
    std::size_t used_m = 0;
    std::size_t used_n = 0;
    const std::string ms = text.substr(0, slash);
    const std::string ns = text.substr(slash + 1);
    const long long m = std::stoll(ms, &used_m);
    const long long n = std::stoll(ns, &used_n);
    if (used_m != ms.size() || used_n != ns.size()) throw std::invalid_argument("trailing");
    return make_epsilon(m, n);
  } catch (const std::logic_error&) {
    throw InputError("epsilon must be written m/n, got '" + text + "'");
  }
}

class ApproximationError : public Error {
 public:
  ApproximationError(const std::string& what, std::optional<RationalEpsilon> best, double best_error)
      : Error(what), best_(best), best_error_(best_error) {}

  const std::optional<RationalEpsilon>& best_candidate() const noexcept { return best_; }
  double best_error() const noexcept { return best_error_; }

 private:
  std::optional<RationalEpsilon> best_;
  double best_error_;
};

struct ApproximationOptions {
  double tol = 1e-6;
  std::int64_t max_denominator = 1'000'000;
};

namespace detail {

inline mpq_class abs_error(const mpz_class& m, const mpz_class& n, const mpq_class& target) {
  return abs(make_rational(m, n) - target);
}

inline bool admissible(const mpz_class& m, const mpz_class& n) { return m > 0 && n > 2 * m; }

}  // namespace detail

inline RationalEpsilon approximate_inverse_gamma(double gamma, double tol = 1e-6,
                                                 std::int64_t max_denominator = 1'000'000) {
  if (!std::isfinite(gamma) || gamma <= 2.0) {
    throw InputError("gamma must be finite and > 2, got " + std::to_string(gamma));
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError("tol must be positive");
  if (max_denominator < 3) throw InputError("max_denominator must be >= 3");

  const mpq_class target = 1 / mpq_class(gamma);
  const mpq_class tol_q(tol);
  const mpz_class max_den(static_cast<long>(max_denominator));

  auto to_eps = [](const mpz_class& m, const mpz_class& n) {
    return RationalEpsilon{static_cast<std::int64_t>(m.get_si()), static_cast<std::int64_t>(n.get_si())};
  };

  // 1/gamma exactly representable within the denominator budget.
  if (target.get_den() <= max_den && detail::admissible(target.get_num(), target.get_den())) {
    return to_eps(target.get_num(), target.get_den());
  }

  std::optional<RationalEpsilon> best;
  mpq_class best_err(-1);
  auto consider = [&](const mpz_class& m, const mpz_class& n) -> bool {
    if (!detail::admissible(m, n)) return false;
    const mpq_class err = detail::abs_error(m, n, target);
    if (best_err < 0 || err < best_err) {
      best = to_eps(m, n);
      best_err = err;
    }
    return err <= tol_q;
  };

  // Convergents h/k; (h_prev2, k_prev2) and (h_prev1, k_prev1) trail by two and one.
  mpz_class h_prev2 = 0, k_prev2 = 1;
  mpz_class h_prev1 = 1, k_prev1 = 0;
  mpz_class num = target.get_num();
  mpz_class den = target.get_den();

  while (den != 0) {
    const mpz_class a = num / den;  // floor; target > 0
    const mpz_class rem = num - a * den;
    num = den;
    den = rem;

    // Intermediate fractions (h_prev2 + j h_prev1)/(k_prev2 + j k_prev1), j = 1..a.
    // They sit on one side of the target and approach it monotonically in j.
    mpz_class j_hi = a;
    if (k_prev1 > 0) {
      const mpz_class j_den_cap = (max_den - k_prev2) / k_prev1;
      if (j_den_cap < j_hi) j_hi = j_den_cap;
    }
    if (j_hi >= 1) {
      auto candidate_ok = [&](const mpz_class& j) {
        const mpz_class h = h_prev2 + j * h_prev1;
        const mpz_class k = k_prev2 + j * k_prev1;
        return k > 0 && detail::abs_error(h, k, target) <= tol_q;
      };
      if (candidate_ok(j_hi)) {
        mpz_class lo = 1, hi = j_hi;
        while (lo < hi) {
          const mpz_class mid = (lo + hi) / 2;
          if (candidate_ok(mid)) hi = mid; else lo = mid + 1;
        }
        for (mpz_class j = lo; j <= j_hi; ++j) {
          if (consider(h_prev2 + j * h_prev1, k_prev2 + j * k_prev1)) {
            return to_eps(h_prev2 + j * h_prev1, k_prev2 + j * k_prev1);
          }
        }
      } else {
        consider(h_prev2 + j_hi * h_prev1, k_prev2 + j_hi * k_prev1);
      }
    }

    const mpz_class h = a * h_prev1 + h_prev2;
    const mpz_class k = a * k_prev1 + k_prev2;
    if (k > max_den) break;
    h_prev2 = h_prev1;
    k_prev2 = k_prev1;
    h_prev1 = h;
    k_prev1 = k;
  }

  const double err = best_err < 0 ? INFINITY : best_err.get_d();
  throw ApproximationError("no fraction within tol " + std::to_string(tol) +
                               " with denominator <= " + std::to_string(max_denominator),
                           best, err);
}

inline RationalEpsilon approximate_inverse_gamma(double gamma, const ApproximationOptions& opts) {
  return approximate_inverse_gamma(gamma, opts.tol, opts.max_denominator);
}

}  // namespace hara_eq
