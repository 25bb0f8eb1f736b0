#pragma once

// Two-good, two-type exchange economy with additively separable HARA
// preferences u(x, y) = u_H(x) + beta * u_H(y). Good y is the numeraire and
// p is the relative price of good x.

#include <cmath>
#include <string>

#include "hara_eq/errors.hpp"
#include "hara_eq/rational_approx.hpp"

namespace hara_eq {

struct HARAParams {
  double gamma = 3.0;
  double a = 1.0;
  double b = 0.0;
};

struct AgentType {
  double beta = 1.0;
  double e = 1.0;
  double f = 1.0;
};

struct Economy {
  HARAParams hara;
  AgentType agent1;
  AgentType agent2;
};

// Only the Bernoulli-function domain: gamma > 0, gamma != 1, a > 0, b >= 0.
inline void validate_bernoulli(const HARAParams& h) {
  if (!(h.gamma > 0.0) || h.gamma == 1.0 || !std::isfinite(h.gamma)) {
    throw DomainError("gamma", "gamma must be positive and != 1");
  }
  if (!(h.a > 0.0) || !std::isfinite(h.a)) throw DomainError("a", "a must be positive");
  if (!(h.b >= 0.0) || !std::isfinite(h.b)) throw DomainError("b", "b must be nonnegative");
}

// Economy scope additionally requires gamma > 2.
inline void validate(const HARAParams& h) {
  validate_bernoulli(h);
  if (!(h.gamma > 2.0)) throw DomainError("gamma", "economies require gamma > 2");
}

inline void validate(const AgentType& agent, const std::string& label = "agent") {
  if (!(agent.beta > 0.0) || !std::isfinite(agent.beta)) {
    throw DomainError(label + ".beta", label + ": beta must be positive");
  }
  if (!(agent.e >= 0.0) || !std::isfinite(agent.e)) throw DomainError(label + ".e", label + ": e must be >= 0");
  if (!(agent.f >= 0.0) || !std::isfinite(agent.f)) throw DomainError(label + ".f", label + ": f must be >= 0");
  if (!(agent.e + agent.f > 0.0)) throw DomainError(label, label + ": endowment must be nonzero");
}

inline void validate(const Economy& econ) {
  validate(econ.hara);
  validate(econ.agent1, "agent1");
  validate(econ.agent2, "agent2");
}

// u_H(t) = gamma/(1-gamma) * (b + (a/gamma) t)^(1-gamma)
inline double hara_bernoulli(const HARAParams& h, double t, const char* argument = "t") {
  const double base = h.b + (h.a / h.gamma) * t;
  if (!(base > 0.0)) {
    throw DomainError(argument, std::string("b + (a/gamma)*") + argument + " must be positive");
  }
  return h.gamma / (1.0 - h.gamma) * std::pow(base, 1.0 - h.gamma);
}

// u_H'(t) = a * (b + (a/gamma) t)^(-gamma)
inline double hara_marginal(const HARAParams& h, double t) {
  return h.a * std::pow(h.b + (h.a / h.gamma) * t, -h.gamma);
}

inline double utility(const HARAParams& h, const AgentType& agent, double x, double y) {
  validate_bernoulli(h);
  return hara_bernoulli(h, x, "x") + agent.beta * hara_bernoulli(h, y, "y");
}

inline void require_positive_price(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InputError("price must be positive and finite, got " + std::to_string(p));
  }
}

namespace detail {

inline double demand_x_from(const HARAParams& h, const AgentType& agent, double sigma, double p_eps, double a_eps,
                            double p) {
  return (h.b - h.b * p_eps * sigma + a_eps * (p * agent.e + agent.f)) / (a_eps * (p + sigma * p_eps));
}

}  // namespace detail

// Interior first-order-condition demand for good x:
//   [b - b p^eps sigma + a eps (p e + f)] / [a eps (p + sigma p^eps)],  sigma = beta^eps.
// `epsilon` is the exponent standing in for 1/gamma.
inline double demand_x(const HARAParams& h, const AgentType& agent, double epsilon, double p) {
  require_positive_price(p);
  return detail::demand_x_from(h, agent, std::pow(agent.beta, epsilon), std::pow(p, epsilon), h.a * epsilon, p);
}

inline double demand_x(const HARAParams& h, const AgentType& agent, const RationalEpsilon& eps, double p) {
  require_positive_price(p);
  const double a_eps = h.a * static_cast<double>(eps.m) / static_cast<double>(eps.n);
  return detail::demand_x_from(h, agent, rational_power(agent.beta, eps), rational_power(p, eps), a_eps, p);
}

inline double demand_y(const HARAParams& h, const AgentType& agent, double epsilon, double p) {
  return p * agent.e + agent.f - p * demand_x(h, agent, epsilon, p);
}

inline double demand_y(const HARAParams& h, const AgentType& agent, const RationalEpsilon& eps, double p) {
  return p * agent.e + agent.f - p * demand_x(h, agent, eps, p);
}

struct Allocation {
  double x = 0.0;
  double y = 0.0;
  // Both demands nonnegative. The formula stays evaluable when false, but the
  // interior-optimum assumption behind it no longer holds.
  bool interior = true;
};

inline Allocation allocation(const HARAParams& h, const AgentType& agent, double epsilon, double p) {
  Allocation out;
  out.x = demand_x(h, agent, epsilon, p);
  out.y = p * agent.e + agent.f - p * out.x;
  out.interior = out.x >= 0.0 && out.y >= 0.0;
  return out;
}

inline Allocation allocation(const HARAParams& h, const AgentType& agent, const RationalEpsilon& eps, double p) {
  Allocation out;
  out.x = demand_x(h, agent, eps, p);
  out.y = p * agent.e + agent.f - p * out.x;
  out.interior = out.x >= 0.0 && out.y >= 0.0;
  return out;
}

inline double excess_demand(const Economy& econ, double epsilon, double p) {
  return demand_x(econ.hara, econ.agent1, epsilon, p) + demand_x(econ.hara, econ.agent2, epsilon, p) -
         (econ.agent1.e + econ.agent2.e);
}

inline double excess_demand(const Economy& econ, const RationalEpsilon& eps, double p) {
  return demand_x(econ.hara, econ.agent1, eps, p) + demand_x(econ.hara, econ.agent2, eps, p) -
         (econ.agent1.e + econ.agent2.e);
}

inline double excess_demand_y(const Economy& econ, double epsilon, double p) {
  return demand_y(econ.hara, econ.agent1, epsilon, p) + demand_y(econ.hara, econ.agent2, epsilon, p) -
         (econ.agent1.f + econ.agent2.f);
}

inline double excess_demand_y(const Economy& econ, const RationalEpsilon& eps, double p) {
  return demand_y(econ.hara, econ.agent1, eps, p) + demand_y(econ.hara, econ.agent2, eps, p) -
         (econ.agent1.f + econ.agent2.f);
}

}  // namespace hara_eq
