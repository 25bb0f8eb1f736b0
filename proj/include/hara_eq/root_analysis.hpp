#pragma once

// Positive-root counting and isolation for quadrinomials, and the exact
// double-root machinery for A x^n + B x^(n-m) + C x^m + D.
//
// Two counting routes:
//  * exact Sturm sequences over the rationals (every double is a rational),
//    used up to kExactDegreeLimit;
//  * a sparse Rolle cascade in double precision. Dividing by the lowest
//    power and differentiating removes one term, so the critical points of a
//    k-term polynomial are the positive roots of a (k-1)-term one. Between
//    consecutive critical points the function is monotone. This works for
//    any degree, which matters because eps = m/n close to 1/gamma routinely
//    has n in the thousands.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hara_eq/errors.hpp"
#include "hara_eq/exact.hpp"
#include "hara_eq/polynomial.hpp"
#include "hara_eq/quadrinomial.hpp"

namespace hara_eq {

inline constexpr std::int64_t kExactDegreeLimit = 32;

enum class RootMethod { Auto, SturmExact, SparseRolle };

inline const char* to_string(RootMethod m) {
  switch (m) {
    case RootMethod::Auto: return "auto";
    case RootMethod::SturmExact: return "sturm-exact";
    case RootMethod::SparseRolle: return "sparse-rolle";
  }
  return "unknown";
}

struct RootReport {
  int distinct_positive_roots = 0;
  std::vector<std::pair<double, double>> isolating_intervals;
  std::vector<int> multiplicities;
  std::vector<double> refined_roots;
  RootMethod method = RootMethod::Auto;

  // One distinct positive root, and it is simple.
  bool unique_simple() const { return distinct_positive_roots == 1 && multiplicities.front() == 1; }
};

// ---------------------------------------------------------------------------
// Sparse Rolle cascade (double precision).

namespace sparse {

struct Term {
  double coef = 0.0;
  std::int64_t exponent = 0;
};

struct Root {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  int multiplicity = 1;
};

// Value and absolute-value sum at x, both divided by x^(max exponent) when
// x > 1 so nothing overflows. Only the ratio and the sign are meaningful.
struct Scaled {
  double value = 0.0;
  double scale = 0.0;
};

inline Scaled scaled_eval(const std::vector<Term>& terms, double x) {
  Scaled out;
  const std::int64_t top = terms.back().exponent;
  for (const Term& t : terms) {
    const double power = x > 1.0 ? std::pow(x, static_cast<double>(t.exponent - top))
                                 : std::pow(x, static_cast<double>(t.exponent));
    out.value += t.coef * power;
    out.scale += std::abs(t.coef) * power;
  }
  return out;
}

inline int sign_at(const std::vector<Term>& terms, double x) { return sign_of(scaled_eval(terms, x).value); }

// Fujiwara-style bound: 2 max |c_i / c_top|^(1 / (e_top - e_i)).
inline double upper_root_bound(const std::vector<Term>& terms) {
  const Term& top = terms.back();
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    const double ratio = std::abs(terms[i].coef / top.coef);
    const double r = std::exp(std::log(ratio) / static_cast<double>(top.exponent - terms[i].exponent));
    bound = std::max(bound, r);
  }
  return 2.0 * bound;
}

// Bisection on a sign change; lo has sign lo_sign. tol == 0 runs to machine
// precision. Uses geometric midpoints across wide brackets.
template <class SignFn>
Root bisect(double lo, double hi, int lo_sign, double tol, SignFn sign) {
  for (int iter = 0; iter < 4000; ++iter) {
    if (tol > 0.0 && hi - lo <= tol) break;
    const double mid = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo * hi) : lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const int s = sign(mid);
    if (s == 0) return Root{mid, mid, mid, 1};
    if (s == lo_sign) lo = mid; else hi = mid;
  }
  return Root{lo, hi, lo + 0.5 * (hi - lo), 1};
}

// |value| / scale at a critical point below this counts as a tangential root.
inline constexpr double kTangencyTolerance = 1e-12;

// Positive roots of sum c_i x^(e_i). Terms must have nonzero coefficients
// and strictly ascending exponents.
inline std::vector<Root> positive_roots(std::vector<Term> terms, double tol) {
  if (terms.size() < 2) return {};
  const std::int64_t shift = terms.front().exponent;
  for (Term& t : terms) t.exponent -= shift;

  if (terms.size() == 2) {
    const double ratio = -terms[0].coef / terms[1].coef;
    if (!(ratio > 0.0)) return {};
    const double r = std::exp(std::log(ratio) / static_cast<double>(terms[1].exponent));
    return {Root{r, r, r, 1}};
  }

  std::vector<Term> deriv;
  deriv.reserve(terms.size() - 1);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    deriv.push_back(Term{terms[i].coef * static_cast<double>(terms[i].exponent), terms[i].exponent - 1});
  }
  const std::vector<Root> critical = positive_roots(deriv, 0.0);

  auto sign = [&](double x) { return sign_at(terms, x); };
  const int top_sign = sign_of(terms.back().coef);
  double upper = upper_root_bound(terms);
  if (!critical.empty()) upper = std::max(upper, 2.0 * critical.back().hi);
  for (int guard = 0; guard < 2000 && sign(upper) != top_sign; ++guard) upper *= 2.0;

  struct Knot {
    double x;
    int sign;
  };
  std::vector<Knot> knots;
  std::vector<Root> tangential;
  knots.push_back(Knot{0.0, sign_of(terms.front().coef)});
  for (const Root& c : critical) {
    const Scaled v = scaled_eval(terms, c.value);
    if (std::abs(v.value) <= kTangencyTolerance * v.scale) {
      tangential.push_back(Root{c.lo, c.hi, c.value, c.multiplicity + 1});
      knots.push_back(Knot{c.value, 0});
    } else {
      knots.push_back(Knot{c.value, sign_of(v.value)});
    }
  }
  knots.push_back(Knot{upper, top_sign});

  std::vector<Root> roots = tangential;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i].sign * knots[i + 1].sign < 0) {
      roots.push_back(bisect(knots[i].x, knots[i + 1].x, knots[i].sign, tol, sign));
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Root& l, const Root& r) { return l.value < r.value; });
  return roots;
}

inline std::vector<Term> terms_of(const Quadrinomial& q) {
  return {Term{q.D, 0}, Term{q.C, q.m}, Term{q.B, q.n - q.m}, Term{q.A, q.n}};
}

}  // namespace sparse

// ---------------------------------------------------------------------------
// Exact Sturm route.

namespace detail {

struct ExactInterval {
  mpq_class lo;  // open end
  mpq_class hi;  // closed end
};

inline std::vector<ExactInterval> sturm_isolate(const SturmSequence& sturm, const mpq_class& bound) {
  std::vector<ExactInterval> out;
  std::vector<std::pair<ExactInterval, int>> stack;
  const mpq_class zero(0);
  const int total = sturm.count_in(zero, bound);
  if (total > 0) stack.push_back({ExactInterval{zero, bound}, total});
  while (!stack.empty()) {
    auto [iv, count] = stack.back();
    stack.pop_back();
    if (count == 1) {
      out.push_back(iv);
      continue;
    }
    const mpq_class mid = (iv.lo + iv.hi) / 2;
    const int left = sturm.count_in(iv.lo, mid);
    const int right = count - left;
    if (right > 0) stack.push_back({ExactInterval{mid, iv.hi}, right});
    if (left > 0) stack.push_back({ExactInterval{iv.lo, mid}, left});
  }
  std::sort(out.begin(), out.end(), [](const ExactInterval& l, const ExactInterval& r) { return l.lo < r.lo; });
  return out;
}

inline void sturm_refine(const SturmSequence& sturm, ExactInterval& iv, const mpq_class& tol) {
  for (int iter = 0; iter < 2000 && iv.hi - iv.lo > tol; ++iter) {
    const mpq_class mid = (iv.lo + iv.hi) / 2;
    if (sturm.count_in(iv.lo, mid) > 0) iv.hi = mid; else iv.lo = mid;
  }
}

}  // namespace detail

inline int count_positive_roots_sturm(const ExactQuadrinomial& q) {
  validate(q);
  return SturmSequence(to_dense(q)).count_positive();
}

inline RootReport isolate_positive_roots_sturm(const ExactQuadrinomial& q, double tol) {
  validate(q);
  if (!(tol > 0.0)) throw InputError("root tolerance must be positive");
  const RationalPolynomial p = to_dense(q);
  const RationalPolynomial sqfree = square_free_part(p);
  const SturmSequence sturm(sqfree);

  // Repeated gcds: a root has multiplicity k iff it is a root of the first k-1.
  std::vector<SturmSequence> gcd_chain;
  RationalPolynomial g = gcd(p, p.derivative());
  while (g.degree() >= 1) {
    gcd_chain.emplace_back(g);
    g = gcd(g, g.derivative());
  }

  RootReport report;
  report.method = RootMethod::SturmExact;
  const mpq_class tol_q(tol);
  for (auto iv : detail::sturm_isolate(sturm, cauchy_root_bound(sqfree))) {
    detail::sturm_refine(sturm, iv, tol_q);
    int multiplicity = 1;
    for (const auto& s : gcd_chain) {
      if (s.count_in(iv.lo, iv.hi) > 0) ++multiplicity;
    }
    report.isolating_intervals.emplace_back(iv.lo.get_d(), iv.hi.get_d());
    report.multiplicities.push_back(multiplicity);
    report.refined_roots.push_back(sign_of(sqfree(iv.hi)) == 0 ? iv.hi.get_d() : mpq_class((iv.lo + iv.hi) / 2).get_d());
  }
  report.distinct_positive_roots = static_cast<int>(report.isolating_intervals.size());
  return report;
}

inline RootReport isolate_positive_roots_sparse(const Quadrinomial& q, double tol) {
  validate(q);
  if (!(tol > 0.0)) throw InputError("root tolerance must be positive");
  RootReport report;
  report.method = RootMethod::SparseRolle;
  for (const auto& r : sparse::positive_roots(sparse::terms_of(q), tol)) {
    report.isolating_intervals.emplace_back(r.lo, r.hi);
    report.multiplicities.push_back(r.multiplicity);
    report.refined_roots.push_back(r.value);
  }
  report.distinct_positive_roots = static_cast<int>(report.refined_roots.size());
  return report;
}

inline RootMethod resolve_method(const Quadrinomial& q, RootMethod requested) {
  if (requested != RootMethod::Auto) return requested;
  return q.n <= kExactDegreeLimit ? RootMethod::SturmExact : RootMethod::SparseRolle;
}

inline RootReport isolate_positive_roots(const Quadrinomial& q, double tol = 1e-10,
                                         RootMethod method = RootMethod::Auto) {
  if (resolve_method(q, method) == RootMethod::SturmExact) return isolate_positive_roots_sturm(to_exact(q), tol);
  return isolate_positive_roots_sparse(q, tol);
}

inline RootReport isolate_positive_roots(const ExactQuadrinomial& q, double tol = 1e-10) {
  return isolate_positive_roots_sturm(q, tol);
}

inline int count_positive_roots(const Quadrinomial& q, RootMethod method = RootMethod::Auto) {
  if (resolve_method(q, method) == RootMethod::SturmExact) return count_positive_roots_sturm(to_exact(q));
  validate(q);
  return static_cast<int>(sparse::positive_roots(sparse::terms_of(q), 0.0).size());
}

inline int count_positive_roots(const ExactQuadrinomial& q) { return count_positive_roots_sturm(q); }

// ---------------------------------------------------------------------------
// Division by (x - alpha)^2 and the double-root identity.

struct LinearRemainder {
  mpq_class slope;
  mpq_class intercept;

  bool vanishes() const { return sgn(slope) == 0 && sgn(intercept) == 0; }
};

// Divides the polynomial with descending coefficients by (x - alpha).
// Returns the quotient (descending) and writes P(alpha) to `remainder`.
inline std::vector<mpq_class> synthetic_division(const std::vector<mpq_class>& descending, const mpq_class& alpha,
                                                 mpq_class& remainder) {
  std::vector<mpq_class> quotient;
  quotient.reserve(descending.size());
  mpq_class acc = 0;
  for (const auto& c : descending) {
    acc = acc * alpha + c;
    quotient.push_back(acc);
  }
  remainder = quotient.back();
  quotient.pop_back();
  return quotient;
}

// Remainder of P(x) / (x - alpha)^2 by two synthetic divisions.
// P = (x - alpha) Q1 + P(alpha) and Q1 = (x - alpha) Q2 + Q1(alpha), so the
// remainder is Q1(alpha) x + P(alpha) - alpha Q1(alpha).
inline LinearRemainder remainder_after_double_division(const ExactQuadrinomial& q, const mpq_class& alpha) {
  if (q.m < 1 || q.n <= 2 * q.m) throw InputError("quadrinomial exponents need n > 2m >= 2");
  if (sgn(alpha) <= 0) throw InputError("alpha must be positive");
  const RationalPolynomial dense = to_dense(q);
  const auto& asc = dense.coefficients();
  std::vector<mpq_class> desc(asc.rbegin(), asc.rend());
  mpq_class p_at_alpha, q1_at_alpha;
  const auto q1 = synthetic_division(desc, alpha, p_at_alpha);
  synthetic_division(q1, alpha, q1_at_alpha);
  return LinearRemainder{q1_at_alpha, p_at_alpha - alpha * q1_at_alpha};
}

// ((n-m)/m) alpha^(n-2m) (alpha^m A + B)^2
inline mpq_class double_root_closed_form(std::int64_t n, std::int64_t m, const mpq_class& alpha, const mpq_class& A,
                                         const mpq_class& B) {
  const mpq_class inner = pow_int(alpha, m) * A + B;
  return make_rational(n - m, m) * pow_int(alpha, n - 2 * m) * inner * inner;
}

struct DivpolCheck {
  mpq_class ad_bc;
  mpq_class closed_form;
  bool nonnegative = false;
  bool equality_family = false;     // alpha^m A + B == 0
  bool equality_iff_family = false;  // (AD - BC == 0) <=> equality_family
  bool closed_form_matches = false;

  bool holds() const { return nonnegative && equality_iff_family && closed_form_matches; }
};

inline DivpolCheck lemma_divpol_check(const ExactQuadrinomial& q, const mpq_class& alpha) {
  validate(q);
  const LinearRemainder r = remainder_after_double_division(q, alpha);
  if (!r.vanishes()) {
    throw NotDoubleRootError("alpha = " + alpha.get_str() + " is not a double root (remainder " +
                             r.slope.get_str() + " x + " + r.intercept.get_str() + ")");
  }
  DivpolCheck out;
  out.ad_bc = ad_minus_bc(q);
  out.closed_form = double_root_closed_form(q.n, q.m, alpha, q.A, q.B);
  out.nonnegative = sgn(out.ad_bc) >= 0;
  out.equality_family = sgn(mpq_class(pow_int(alpha, q.m) * q.A + q.B)) == 0;
  out.equality_iff_family = (sgn(out.ad_bc) == 0) == out.equality_family;
  out.closed_form_matches = out.ad_bc == out.closed_form;
  return out;
}

// The unique (C, D) making alpha a double root:
//   m alpha^(m-1) C = -(n-m) alpha^(n-m-1) B - n alpha^(n-1) A
//   D = (m-1) alpha^m C + (n-m-1) alpha^(n-m) B + (n-1) alpha^n A
inline ExactQuadrinomial solve_double_root_family(std::int64_t n, std::int64_t m, const mpq_class& alpha,
                                                  const mpq_class& A, const mpq_class& B) {
  if (m < 1 || n <= 2 * m) throw InputError("double-root family needs n > 2m >= 2");
  if (sgn(alpha) <= 0) throw InputError("alpha must be positive");
  if (sgn(A) == 0 || sgn(B) == 0) throw InputError("A and B must be nonzero");
  ExactQuadrinomial q;
  q.n = n;
  q.m = m;
  q.A = A;
  q.B = B;
  q.C = -(mpq_class(n - m) * pow_int(alpha, n - m - 1) * B + mpq_class(n) * pow_int(alpha, n - 1) * A) /
        (mpq_class(m) * pow_int(alpha, m - 1));
  q.D = mpq_class(m - 1) * pow_int(alpha, m) * q.C + mpq_class(n - m - 1) * pow_int(alpha, n - m) * B +
        mpq_class(n - 1) * pow_int(alpha, n) * A;
  if (sgn(q.C) == 0 || sgn(q.D) == 0) {
    throw DegenerateError("double-root family degenerates (C or D is zero)");
  }
  return q;
}

}  // namespace hara_eq
