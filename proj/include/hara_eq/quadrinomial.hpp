#pragma once

// The four-term polynomial A x^n + B x^(n-m) + C x^m + D obtained from the
// aggregate excess demand by substituting x = p^(1/n), eps = m/n.
//
// Derivation: put the two demand summands over the common denominator
// a eps (p + sigma1 p^eps)(p + sigma2 p^eps), keep the numerator, divide it by
// a eps p^eps. The constant of proportionality is positive, so the
// quadrinomial and the excess demand share their sign at every price.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hara_eq/economy.hpp"
#include "hara_eq/errors.hpp"
#include "hara_eq/exact.hpp"
#include "hara_eq/polynomial.hpp"
#include "hara_eq/rational_approx.hpp"

namespace hara_eq {

template <class T>
struct BasicQuadrinomial {
  T A{0};
  T B{0};
  T C{0};
  T D{0};
  std::int64_t n = 3;
  std::int64_t m = 1;

  friend bool operator==(const BasicQuadrinomial&, const BasicQuadrinomial&) = default;
};

using Quadrinomial = BasicQuadrinomial<double>;
using ExactQuadrinomial = BasicQuadrinomial<mpq_class>;

template <class T>
void validate(const BasicQuadrinomial<T>& q) {
  if (q.m < 1 || q.n <= 2 * q.m) {
    throw InputError("quadrinomial exponents need n > 2m >= 2, got n=" + std::to_string(q.n) +
                     " m=" + std::to_string(q.m));
  }
  if (sign_of(q.A) == 0 || sign_of(q.B) == 0 || sign_of(q.C) == 0 || sign_of(q.D) == 0) {
    throw DegenerateError("quadrinomial has a zero coefficient (ABCD must be nonzero)");
  }
}

inline double evaluate(const Quadrinomial& q, double x) {
  const double xn = std::pow(x, static_cast<double>(q.n));
  const double xnm = std::pow(x, static_cast<double>(q.n - q.m));
  const double xm = std::pow(x, static_cast<double>(q.m));
  return q.A * xn + q.B * xnm + q.C * xm + q.D;
}

inline mpq_class evaluate(const ExactQuadrinomial& q, const mpq_class& x) {
  return q.A * pow_int(x, q.n) + q.B * pow_int(x, q.n - q.m) + q.C * pow_int(x, q.m) + q.D;
}

template <class T>
T ad_minus_bc(const BasicQuadrinomial<T>& q) {
  return T(q.A * q.D - q.B * q.C);
}

inline double price_from_root(const Quadrinomial& q, double x) {
  if (!(x > 0.0)) throw InputError("root must be positive to map to a price");
  return std::pow(x, static_cast<double>(q.n));
}

inline double root_from_price(const Quadrinomial& q, double p) {
  require_positive_price(p);
  return std::pow(p, 1.0 / static_cast<double>(q.n));
}

inline ExactQuadrinomial to_exact(const Quadrinomial& q) {
  return ExactQuadrinomial{mpq_class(q.A), mpq_class(q.B), mpq_class(q.C), mpq_class(q.D), q.n, q.m};
}

inline Quadrinomial to_double(const ExactQuadrinomial& q) {
  return Quadrinomial{q.A.get_d(), q.B.get_d(), q.C.get_d(), q.D.get_d(), q.n, q.m};
}

template <class T>
Polynomial<T> to_dense(const BasicQuadrinomial<T>& q) {
  std::vector<T> c(static_cast<std::size_t>(q.n + 1), T(0));
  c[static_cast<std::size_t>(q.n)] += q.A;
  c[static_cast<std::size_t>(q.n - q.m)] += q.B;
  c[static_cast<std::size_t>(q.m)] += q.C;
  c[0] += q.D;
  return Polynomial<T>(std::move(c));
}

// Whether the coefficient signs follow -, +, -, + (three Descartes sign
// changes, at most three positive roots).
struct SignPattern {
  bool a_negative = false;
  bool b_positive = false;
  bool c_negative = false;
  bool d_positive = false;

  bool ok() const { return a_negative && b_positive && c_negative && d_positive; }
};

template <class T>
SignPattern sign_pattern(const BasicQuadrinomial<T>& q) {
  return SignPattern{sign_of(q.A) < 0, sign_of(q.B) > 0, sign_of(q.C) < 0, sign_of(q.D) > 0};
}

namespace detail {

template <class T>
BasicQuadrinomial<T> coefficients_from(const T& s1, const T& s2, const T& k, const Economy& econ,
                                       const RationalEpsilon& eps) {
  const T e1(econ.agent1.e), e2(econ.agent2.e), f1(econ.agent1.f), f2(econ.agent2.f);
  BasicQuadrinomial<T> q;
  q.A = -(e1 * s1 + e2 * s2) - k * (s1 + s2);
  q.B = (f1 + f2) + 2 * k;
  q.C = -(e1 + e2) * s1 * s2 - 2 * k * s1 * s2;
  q.D = (f1 * s2 + f2 * s1) + k * (s1 + s2);
  q.n = eps.n;
  q.m = eps.m;
  return q;
}

}  // namespace detail

// sigma_i = beta_i^(m/n), k = b/(a eps):
//   A = -(e1 s1 + e2 s2) - k (s1 + s2)
//   B =  (f1 + f2) + 2k
//   C = -(e1 + e2) s1 s2 - 2k s1 s2
//   D =  (f1 s2 + f2 s1) + k (s1 + s2)
inline Quadrinomial from_economy(const Economy& econ, const RationalEpsilon& eps) {
  validate(econ);
  validate(eps);
  const double s1 = rational_power(econ.agent1.beta, eps);
  const double s2 = rational_power(econ.agent2.beta, eps);
  const double k = econ.hara.b * static_cast<double>(eps.n) / (econ.hara.a * static_cast<double>(eps.m));
  Quadrinomial q = detail::coefficients_from<double>(s1, s2, k, econ, eps);
  validate(q);
  return q;
}

// Exact n-th root of a nonnegative rational, if it is itself rational.
inline std::optional<mpq_class> exact_root(const mpq_class& v, unsigned long n) {
  mpz_class num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), v.get_num_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), v.get_den_mpz_t(), n) == 0) return std::nullopt;
  return make_rational(num_root, den_root);
}

// Same coefficients in exact arithmetic, available when every beta^(m/n) is
// rational (for example beta = 1/8 with eps = 1/3). Inputs are taken at the
// exact binary value of each double.
inline std::optional<ExactQuadrinomial> exact_from_economy(const Economy& econ, const RationalEpsilon& eps) {
  validate(econ);
  validate(eps);
  auto sigma = [&](double beta) -> std::optional<mpq_class> {
    auto root = exact_root(mpq_class(beta), static_cast<unsigned long>(eps.n));
    if (!root) return std::nullopt;
    return pow_int(*root, eps.m);
  };
  const auto s1 = sigma(econ.agent1.beta);
  const auto s2 = sigma(econ.agent2.beta);
  if (!s1 || !s2) return std::nullopt;
  const mpq_class k = mpq_class(econ.hara.b) / (mpq_class(econ.hara.a) * eps.exact());
  ExactQuadrinomial q = detail::coefficients_from<mpq_class>(*s1, *s2, k, econ, eps);
  validate(q);
  return q;
}

}  // namespace hara_eq
