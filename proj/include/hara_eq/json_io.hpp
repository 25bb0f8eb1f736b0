#pragma once

// JSON mapping for economies, quadrinomials and reports. Requires
// nlohmann/json (json.hpp) on the include path.

#include <string>

#include "json.hpp"

#include "hara_eq/certifier.hpp"
#include "hara_eq/economy.hpp"
#include "hara_eq/errors.hpp"
#include "hara_eq/oracle.hpp"
#include "hara_eq/quadrinomial.hpp"
#include "hara_eq/root_analysis.hpp"
#include "hara_eq/solver.hpp"

namespace hara_eq {

using json = nlohmann::json;

namespace detail {

inline double number_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw InputError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

inline std::int64_t integer_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(where + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace detail

// {"gamma": g, "a": a, "b": b, "agents": [{"beta":..,"e":..,"f":..}, {...}]}
inline Economy economy_from_json(const json& j) {
  if (!j.is_object()) throw InputError("economy: expected a JSON object");
  Economy econ;
  econ.hara.gamma = detail::number_field(j, "gamma", "economy");
  econ.hara.a = detail::number_field(j, "a", "economy");
  econ.hara.b = detail::number_field(j, "b", "economy");
  if (!j.contains("agents") || !j.at("agents").is_array()) throw InputError("economy: 'agents' must be an array");
  const json& agents = j.at("agents");
  if (agents.size() != 2) throw InputError("economy: exactly two agents required");
  auto agent = [](const json& a, const std::string& where) {
    return AgentType{detail::number_field(a, "beta", where), detail::number_field(a, "e", where),
                     detail::number_field(a, "f", where)};
  };
  econ.agent1 = agent(agents[0], "agents[0]");
  econ.agent2 = agent(agents[1], "agents[1]");
  validate(econ);
  return econ;
}

inline json to_json(const Economy& econ) {
  auto agent = [](const AgentType& a) { return json{{"beta", a.beta}, {"e", a.e}, {"f", a.f}}; };
  return json{{"gamma", econ.hara.gamma},
              {"a", econ.hara.a},
              {"b", econ.hara.b},
              {"agents", json::array({agent(econ.agent1), agent(econ.agent2)})}};
}

inline Quadrinomial quadrinomial_from_json(const json& j) {
  Quadrinomial q{detail::number_field(j, "A", "quadrinomial"), detail::number_field(j, "B", "quadrinomial"),
                 detail::number_field(j, "C", "quadrinomial"), detail::number_field(j, "D", "quadrinomial"),
                 detail::integer_field(j, "n", "quadrinomial"), detail::integer_field(j, "m", "quadrinomial")};
  validate(q);
  return q;
}

inline json to_json(const Quadrinomial& q) {
  return json{{"A", q.A}, {"B", q.B}, {"C", q.C}, {"D", q.D}, {"n", q.n}, {"m", q.m}};
}

inline json to_json(const RationalEpsilon& eps) {
  return json{{"m", eps.m}, {"n", eps.n}, {"value", eps.value()}};
}

inline json to_json(const RootReport& r) {
  json intervals = json::array();
  for (const auto& [lo, hi] : r.isolating_intervals) intervals.push_back(json::array({lo, hi}));
  return json{{"distinct_positive_roots", r.distinct_positive_roots},
              {"isolating_intervals", intervals},
              {"multiplicities", r.multiplicities},
              {"refined_roots", r.refined_roots},
              {"method", to_string(r.method)}};
}

inline json to_json(const SignPattern& s) {
  return json{{"A_negative", s.a_negative},
              {"B_positive", s.b_positive},
              {"C_negative", s.c_negative},
              {"D_positive", s.d_positive},
              {"ok", s.ok()}};
}

inline json to_json(const UniquenessCertificate& c) {
  json j{{"verdict", to_string(c.verdict)},
         {"relabeled", c.relabeled},
         {"epsilon", to_json(c.epsilon)},
         {"c1", {{"beta1_lt_beta2", c.c1.beta_ordered}, {"e1_le_e2", c.c1.e_ordered}, {"f1_ge_f2", c.c1.f_ordered}}},
         {"c2", {{"holds", c.c2.holds}, {"threshold", c.c2.threshold}}},
         {"quadrinomial", to_json(c.quadrinomial)},
         {"sign_pattern", to_json(c.sign_pattern)},
         {"ad_bc", c.ad_bc},
         {"ad_bc_exact_sign", c.ad_bc_exact_sign ? json(*c.ad_bc_exact_sign) : json(nullptr)},
         {"decomposition",
          {{"first_term", c.decomposition.first_term},
           {"e_term", c.decomposition.e_term},
           {"sum", c.decomposition.sum()}}},
         {"inequality_violated", c.inequality_violated},
         {"root_count", c.root_count() ? json(*c.root_count()) : json(nullptr)},
         {"unique_simple_root", c.unique_simple_root ? json(*c.unique_simple_root) : json(nullptr)}};
  j["roots"] = c.roots ? to_json(*c.roots) : json(nullptr);
  return j;
}

inline json to_json(const Allocation& a) { return json{{"x", a.x}, {"y", a.y}, {"interior", a.interior}}; }

inline json to_json(const SolveResult& s) {
  json eqs = json::array();
  for (const auto& e : s.equilibria) {
    eqs.push_back(json{{"price", e.price},
                       {"root", e.root},
                       {"multiplicity", e.multiplicity},
                       {"residual", e.residual},
                       {"allocations", json::array({to_json(e.agent1), to_json(e.agent2)})}});
  }
  return json{{"epsilon", to_json(s.epsilon)},
              {"quadrinomial", to_json(s.quadrinomial)},
              {"roots", to_json(s.roots)},
              {"equilibria", eqs}};
}

inline json to_json(const LemmaFuzzReport& r) {
  return json{{"trials", r.trials},
              {"discarded_degenerate", r.discarded_degenerate},
              {"violations", r.violations},
              {"equality_cases", r.equality_cases},
              {"equality_mismatches", r.equality_mismatches},
              {"closed_form_mismatches", r.closed_form_mismatches},
              {"remainder_mismatches", r.remainder_mismatches},
              {"failures", r.failures},
              {"clean", r.clean()}};
}

inline json to_json(const PerturbationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"tol", row.tol},
                        {"epsilon", to_json(row.epsilon)},
                        {"polynomial_roots", row.polynomial_roots},
                        {"sign_changes_true_gamma", row.sign_changes_true_gamma},
                        {"agree", row.agree}});
  }
  return json{{"rows", rows}, {"all_agree", r.all_agree()}};
}

}  // namespace hara_eq
