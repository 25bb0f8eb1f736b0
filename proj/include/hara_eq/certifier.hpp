#pragma once

// Sufficient conditions for a unique equilibrium price.
//
// With agents labelled so that beta1 < beta2:
//   (c1) beta1 < beta2, e1 <= e2, f1 >= f2
//   (c2) b >= (a/gamma) (beta2/beta1)^(2/gamma) (e2 + f1)
// imply AD - BC < 0 for the quadrinomial, which in turn rules out a double
// positive root and leaves exactly one positive root.

#include <cmath>
#include <optional>
#include <string>

#include "hara_eq/economy.hpp"
#include "hara_eq/errors.hpp"
#include "hara_eq/quadrinomial.hpp"
#include "hara_eq/rational_approx.hpp"
#include "hara_eq/root_analysis.hpp"

namespace hara_eq {

struct Canonicalized {
  Economy economy;
  bool swapped = false;
};

inline Canonicalized canonicalize(const Economy& econ) {
  if (econ.agent1.beta == econ.agent2.beta) {
    throw CannotCertifyError("beta1 == beta2: the patience ordering condition cannot hold");
  }
  Canonicalized out{econ, false};
  if (econ.agent1.beta > econ.agent2.beta) {
    std::swap(out.economy.agent1, out.economy.agent2);
    out.swapped = true;
  }
  return out;
}

struct C1Result {
  bool beta_ordered = false;  // beta1 < beta2
  bool e_ordered = false;     // e1 <= e2
  bool f_ordered = false;     // f1 >= f2

  bool all() const { return beta_ordered && e_ordered && f_ordered; }
};

inline C1Result check_c1(const Economy& econ) {
  return C1Result{econ.agent1.beta < econ.agent2.beta, econ.agent1.e <= econ.agent2.e,
                  econ.agent1.f >= econ.agent2.f};
}

struct C2Result {
  bool holds = false;
  double threshold = 0.0;
};

inline double c2_threshold(const Economy& econ) {
  const auto& h = econ.hara;
  return (h.a / h.gamma) * std::pow(econ.agent2.beta / econ.agent1.beta, 2.0 / h.gamma) *
         (econ.agent2.e + econ.agent1.f);
}

inline C2Result check_c2(const Economy& econ) {
  const double threshold = c2_threshold(econ);
  return C2Result{econ.hara.b >= threshold, threshold};
}

struct AdBcDecomposition {
  double first_term = 0.0;  // (s2 - s1)(e1 f2 s1 - e2 f1 s2)
  double e_term = 0.0;      // -k^2 (s1 - s2)^2 + k [(e1+e2+f1+f2) s1 s2 - (e1+f2) s1^2 - (e2+f1) s2^2]

  double sum() const { return first_term + e_term; }
};

// Splits AD - BC into an endowment part and a part carrying k = b/(a eps).
// The two pieces add up to ad_minus_bc(from_economy(econ, eps)) algebraically.
inline AdBcDecomposition decompose_ad_bc(const Economy& econ, const RationalEpsilon& eps) {
  const double s1 = rational_power(econ.agent1.beta, eps);
  const double s2 = rational_power(econ.agent2.beta, eps);
  const double k = econ.hara.b * static_cast<double>(eps.n) / (econ.hara.a * static_cast<double>(eps.m));
  const auto& [b1, e1, f1] = econ.agent1;
  const auto& [b2, e2, f2] = econ.agent2;
  AdBcDecomposition out;
  out.first_term = (s2 - s1) * (e1 * f2 * s1 - e2 * f1 * s2);
  out.e_term = -k * k * (s1 - s2) * (s1 - s2) +
               k * ((e1 + e2 + f1 + f2) * s1 * s2 - (e1 + f2) * s1 * s1 - (e2 + f1) * s2 * s2);
  return out;
}

enum class Verdict { CertifiedUnique, NotCertified };

inline const char* to_string(Verdict v) {
  return v == Verdict::CertifiedUnique ? "certified_unique" : "not_certified";
}

struct UniquenessCertificate {
  bool relabeled = false;
  RationalEpsilon epsilon;
  C1Result c1;
  C2Result c2;
  Quadrinomial quadrinomial;
  SignPattern sign_pattern;
  double ad_bc = 0.0;
  // Sign of AD - BC from exact coefficients, when every sigma is rational.
  std::optional<int> ad_bc_exact_sign;
  AdBcDecomposition decomposition;
  // c1 and c2 hold but AD - BC >= 0: the implication failed on this input.
  bool inequality_violated = false;
  std::optional<RootReport> roots;
  // Filled when roots were verified: exactly one positive root, and simple.
  std::optional<bool> unique_simple_root;
  Verdict verdict = Verdict::NotCertified;

  std::optional<int> root_count() const {
    if (!roots) return std::nullopt;
    return roots->distinct_positive_roots;
  }
};

inline UniquenessCertificate certify(const Economy& econ, const RationalEpsilon& eps, bool verify_roots = true,
                                     double root_tol = 1e-10) {
  validate(econ);
  validate(eps);
  const Canonicalized canon = canonicalize(econ);
  const Economy& ce = canon.economy;

  UniquenessCertificate cert;
  cert.relabeled = canon.swapped;
  cert.epsilon = eps;
  cert.c1 = check_c1(ce);
  cert.c2 = check_c2(ce);
  cert.quadrinomial = from_economy(ce, eps);
  cert.sign_pattern = sign_pattern(cert.quadrinomial);
  cert.ad_bc = ad_minus_bc(cert.quadrinomial);
  if (const auto exact = exact_from_economy(ce, eps)) cert.ad_bc_exact_sign = sgn(ad_minus_bc(*exact));
  cert.decomposition = decompose_ad_bc(ce, eps);

  const bool negative = cert.ad_bc_exact_sign ? *cert.ad_bc_exact_sign < 0 : cert.ad_bc < 0.0;
  const bool conditions = cert.c1.all() && cert.c2.holds;
  cert.inequality_violated = conditions && !negative;

  if (verify_roots) {
    cert.roots = isolate_positive_roots(cert.quadrinomial, root_tol);
    cert.unique_simple_root = cert.roots->unique_simple();
  }

  const bool certified = conditions && negative && cert.unique_simple_root.value_or(true);
  cert.verdict = certified ? Verdict::CertifiedUnique : Verdict::NotCertified;
  return cert;
}

}  // namespace hara_eq
