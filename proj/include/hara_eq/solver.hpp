#pragma once

#include <cmath>
#include <vector>

#include "hara_eq/economy.hpp"
#include "hara_eq/quadrinomial.hpp"
#include "hara_eq/rational_approx.hpp"
#include "hara_eq/root_analysis.hpp"

namespace hara_eq {

struct Equilibrium {
  double price = 0.0;
  double root = 0.0;  // x = p^(1/n)
  int multiplicity = 1;
  double residual = 0.0;  // |excess demand| at price
  Allocation agent1;
  Allocation agent2;
};

struct SolveResult {
  RationalEpsilon epsilon;
  Quadrinomial quadrinomial;
  RootReport roots;
  std::vector<Equilibrium> equilibria;
};

// Bisects the excess demand itself between two prices of opposite sign, down
// to adjacent doubles. `Eps` is a double exponent or a RationalEpsilon.
template <class Eps>
double polish_price(const Economy& econ, const Eps& epsilon, double p_lo, double p_hi) {
  int s_lo = sign_of(excess_demand(econ, epsilon, p_lo));
  const int s_hi = sign_of(excess_demand(econ, epsilon, p_hi));
  if (s_lo == 0) return p_lo;
  if (s_hi == 0) return p_hi;
  if (s_lo == s_hi) return 0.5 * (p_lo + p_hi);
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = p_lo + 0.5 * (p_hi - p_lo);
    if (!(mid > p_lo && mid < p_hi)) break;
    const int s = sign_of(excess_demand(econ, epsilon, mid));
    if (s == 0) return mid;
    if (s == s_lo) p_lo = mid; else p_hi = mid;
  }
  const double r_lo = std::abs(excess_demand(econ, epsilon, p_lo));
  const double r_hi = std::abs(excess_demand(econ, epsilon, p_hi));
  return r_lo <= r_hi ? p_lo : p_hi;
}

// Every positive root of the quadrinomial maps to an equilibrium price
// p = x^n. Simple roots are polished on the excess demand, which has the same
// sign as the quadrinomial at every price.
inline SolveResult solve_equilibria(const Economy& econ, const RationalEpsilon& eps, double root_tol = 1e-10) {
  SolveResult out;
  out.epsilon = eps;
  out.quadrinomial = from_economy(econ, eps);
  out.roots = isolate_positive_roots(out.quadrinomial, root_tol);
  const double n = static_cast<double>(eps.n);
  for (std::size_t i = 0; i < out.roots.refined_roots.size(); ++i) {
    Equilibrium eq;
    eq.root = out.roots.refined_roots[i];
    eq.multiplicity = out.roots.multiplicities[i];
    const auto [x_lo, x_hi] = out.roots.isolating_intervals[i];
    if (eq.multiplicity % 2 == 1) {
      // Widen by a few ulps in x so rounding of x^n cannot lose the bracket.
      const double lo = std::nextafter(std::nextafter(x_lo, 0.0), 0.0);
      const double hi = std::nextafter(std::nextafter(x_hi, INFINITY), INFINITY);
      eq.price = polish_price(econ, eps, std::pow(lo, n), std::pow(hi, n));
      eq.root = std::pow(eq.price, 1.0 / n);
    } else {
      eq.price = std::pow(eq.root, n);
    }
    eq.residual = std::abs(excess_demand(econ, eps, eq.price));
    eq.agent1 = allocation(econ.hara, econ.agent1, eps, eq.price);
    eq.agent2 = allocation(econ.hara, econ.agent2, eps, eq.price);
    out.equilibria.push_back(eq);
  }
  return out;
}

}  // namespace hara_eq
