#include "commands.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hara_eq/hara_eq.hpp"
#include "hara_eq/json_io.hpp"

namespace haraeq_cli {
namespace {

using hara_eq::json;

struct Options {
  double epsilon_tol = 1e-6;
  std::string epsilon;  // "m/n", bypasses approximation
  std::int64_t max_denominator = 1'000'000;
  double root_tol = 1e-10;
  std::uint64_t seed = 0;
  int grid_points = 10'000;
  std::vector<double> bracket;
  bool verify_roots = false;
  int trials = 0;
  int max_n = 15;
  std::string method = "auto";
  std::string input;
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in;
  std::istream* src = &std::cin;
  if (path != "-") {
    in.open(path);
    if (!in) throw hara_eq::InputError("cannot open '" + path + "'");
    src = &in;
  }
  try {
    return json::parse(*src);
  } catch (const json::parse_error& e) {
    throw hara_eq::InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

hara_eq::RationalEpsilon resolve_epsilon(const hara_eq::Economy& econ, const Options& opt) {
  if (!opt.epsilon.empty()) return hara_eq::parse_epsilon(opt.epsilon);
  return hara_eq::approximate_inverse_gamma(econ.hara.gamma, opt.epsilon_tol, opt.max_denominator);
}

hara_eq::SignScanOptions scan_options(const Options& opt) {
  hara_eq::SignScanOptions scan;
  scan.grid_points = opt.grid_points;
  if (!opt.bracket.empty()) {
    if (opt.bracket.size() != 2) throw hara_eq::InputError("--bracket expects lo,hi");
    scan.p_lo = opt.bracket[0];
    scan.p_hi = opt.bracket[1];
  }
  if (!(scan.p_lo > 0.0) || !(scan.p_hi > scan.p_lo)) throw hara_eq::InputError("--bracket needs 0 < lo < hi");
  if (scan.grid_points < 1000) throw hara_eq::InputError("--grid-points must be >= 1000");
  return scan;
}

hara_eq::RootMethod parse_method(const std::string& name) {
  if (name == "auto") return hara_eq::RootMethod::Auto;
  if (name == "sturm") return hara_eq::RootMethod::SturmExact;
  if (name == "sparse") return hara_eq::RootMethod::SparseRolle;
  throw hara_eq::InputError("--method must be auto, sturm or sparse");
}

// ---------------------------------------------------------------------------

int cmd_solve(const Options& opt, std::ostream& out) {
  const auto econ = hara_eq::economy_from_json(read_json_file(opt.input));
  const auto eps = resolve_epsilon(econ, opt);
  const auto result = hara_eq::solve_equilibria(econ, eps, opt.root_tol);
  json j = hara_eq::to_json(result);
  j["economy"] = hara_eq::to_json(econ);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_certify(const Options& opt, std::ostream& out) {
  const auto econ = hara_eq::economy_from_json(read_json_file(opt.input));
  const auto eps = resolve_epsilon(econ, opt);
  const auto cert = hara_eq::certify(econ, eps, opt.verify_roots, opt.root_tol);
  json j = hara_eq::to_json(cert);
  j["economy"] = hara_eq::to_json(econ);
  j["message"] = cert.verdict == hara_eq::Verdict::CertifiedUnique
                     ? "equilibrium price certified unique"
                     : "not certified: the sufficient conditions do not apply (multiple equilibria are not ruled out)";
  out << j.dump(2) << "\n";
  return cert.verdict == hara_eq::Verdict::CertifiedUnique ? kExitOk : kExitNotCertified;
}

int cmd_roots(const Options& opt, std::ostream& out) {
  const auto q = hara_eq::quadrinomial_from_json(read_json_file(opt.input));
  const auto report = hara_eq::isolate_positive_roots(q, opt.root_tol, parse_method(opt.method));
  json j = hara_eq::to_json(report);
  j["quadrinomial"] = hara_eq::to_json(q);
  j["ad_bc"] = hara_eq::ad_minus_bc(q);
  out << j.dump(2) << "\n";
  return kExitOk;
}

// Sweep spec: {"parameter": "b", "lo": 0, "hi": 6, "steps": 61, "economy": {...} | "path.json"}
int cmd_sweep(const Options& opt, std::ostream& out) {
  const json spec = read_json_file(opt.input);
  if (!spec.is_object()) throw hara_eq::InputError("sweep: expected a JSON object");
  if (!spec.contains("parameter") || !spec["parameter"].is_string()) {
    throw hara_eq::InputError("sweep: 'parameter' must be a string");
  }
  const std::string param = spec["parameter"].get<std::string>();
  if (param != "gamma" && param != "b" && param != "beta2" && param != "e2" && param != "f1") {
    throw hara_eq::InputError("sweep: parameter must be one of gamma, b, beta2, e2, f1");
  }
  const double lo = hara_eq::detail::number_field(spec, "lo", "sweep");
  const double hi = hara_eq::detail::number_field(spec, "hi", "sweep");
  const std::int64_t steps = hara_eq::detail::integer_field(spec, "steps", "sweep");
  if (steps < 2) throw hara_eq::InputError("sweep: steps must be >= 2");
  if (!(lo < hi)) throw hara_eq::InputError("sweep: lo must be < hi");
  if (!spec.contains("economy")) throw hara_eq::InputError("sweep: missing 'economy'");
  json econ_json = spec["economy"];
  if (econ_json.is_string()) {
    std::filesystem::path path = econ_json.get<std::string>();
    if (path.is_relative() && opt.input != "-") path = std::filesystem::path(opt.input).parent_path() / path;
    econ_json = read_json_file(path.string());
  }
  const hara_eq::Economy base = hara_eq::economy_from_json(econ_json);

  // Validate the whole range before printing anything.
  std::vector<hara_eq::Economy> economies;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double value = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    hara_eq::Economy econ = base;
    if (param == "gamma") econ.hara.gamma = value;
    if (param == "b") econ.hara.b = value;
    if (param == "beta2") econ.agent2.beta = value;
    if (param == "e2") econ.agent2.e = value;
    if (param == "f1") econ.agent1.f = value;
    try {
      hara_eq::validate(econ);
    } catch (const hara_eq::Error& e) {
      throw hara_eq::InputError("sweep step " + std::to_string(i) + " (" + param + " = " + format_number(value) +
                                ") leaves the domain: " + e.what());
    }
    economies.push_back(econ);
  }

  out << kSweepHeader << "\n";
  for (std::int64_t i = 0; i < steps; ++i) {
    const auto& econ = economies[static_cast<std::size_t>(i)];
    const double value = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const auto eps = resolve_epsilon(econ, opt);
    const auto solved = hara_eq::solve_equilibria(econ, eps, opt.root_tol);

    std::string c1_beta = "false", c1_e = "false", c1_f = "false", c2 = "false";
    double threshold = NAN;
    std::string verdict;
    try {
      const auto cert = hara_eq::certify(econ, eps, false, opt.root_tol);
      c1_beta = cert.c1.beta_ordered ? "true" : "false";
      c1_e = cert.c1.e_ordered ? "true" : "false";
      c1_f = cert.c1.f_ordered ? "true" : "false";
      c2 = cert.c2.holds ? "true" : "false";
      threshold = cert.c2.threshold;
      const bool unique = solved.roots.unique_simple();
      verdict = cert.verdict == hara_eq::Verdict::CertifiedUnique && unique ? "certified_unique" : "not_certified";
    } catch (const hara_eq::CannotCertifyError&) {
      verdict = "cannot_certify";
    }

    std::string prices;
    for (const auto& eq : solved.equilibria) {
      if (!prices.empty()) prices += ";";
      prices += format_number(eq.price);
    }
    out << i << "," << param << "," << format_number(value) << "," << eps.m << "," << eps.n << "," << c1_beta << ","
        << c1_e << "," << c1_f << "," << c2 << "," << (std::isnan(threshold) ? "" : format_number(threshold)) << ","
        << format_number(hara_eq::ad_minus_bc(solved.quadrinomial)) << "," << verdict << ","
        << solved.roots.distinct_positive_roots << "," << prices << "\n";
  }
  return kExitOk;
}

json oracle_check_economy(const hara_eq::Economy& econ, const Options& opt, bool& ok) {
  const auto scan = scan_options(opt);
  const auto eps = resolve_epsilon(econ, opt);
  const auto q = hara_eq::from_economy(econ, eps);
  const int poly_roots = hara_eq::count_positive_roots(q);
  const int scan_eps = hara_eq::sign_change_count(econ, eps, scan.grid_points, scan.p_lo, scan.p_hi);
  const int scan_true = hara_eq::sign_change_count(econ, 1.0 / econ.hara.gamma, scan.grid_points, scan.p_lo,
                                                   scan.p_hi);
  const auto perturb = hara_eq::perturbation_consistency(econ, {1e-2, 1e-4, 1e-6}, scan, opt.max_denominator);

  // Sign agreement between the quadrinomial and the excess demand.
  int sign_mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = scan.p_lo * std::pow(scan.p_hi / scan.p_lo, (i + 0.5) / 100.0);
    const double ed = hara_eq::excess_demand(econ, eps, p);
    if (std::abs(ed) < 1e-12) continue;
    const double pv = hara_eq::sparse::scaled_eval(hara_eq::sparse::terms_of(q), hara_eq::root_from_price(q, p)).value;
    if (hara_eq::sign_of(pv) != hara_eq::sign_of(ed)) ++sign_mismatches;
  }

  // Closed-form demand against direct maximization at the true exponent.
  const auto solved = hara_eq::solve_equilibria(econ, eps, opt.root_tol);
  std::vector<double> prices{0.5, 1.0, 2.0};
  for (const auto& eq : solved.equilibria) prices.push_back(eq.price);
  double worst_demand_gap = 0.0;
  for (double p : prices) {
    for (const auto* agent : {&econ.agent1, &econ.agent2}) {
      const auto alloc = hara_eq::allocation(econ.hara, *agent, 1.0 / econ.hara.gamma, p);
      if (!alloc.interior) continue;
      const double oracle = hara_eq::demand_oracle(econ.hara, *agent, p);
      const double gap = std::abs(oracle - alloc.x) / std::max(1.0, std::abs(alloc.x));
      worst_demand_gap = std::max(worst_demand_gap, gap);
    }
  }

  ok = poly_roots == scan_eps && perturb.all_agree() && sign_mismatches == 0 && worst_demand_gap <= 1e-6;
  return json{{"epsilon", hara_eq::to_json(eps)},
              {"polynomial_roots", poly_roots},
              {"sign_changes_epsilon", scan_eps},
              {"sign_changes_true_gamma", scan_true},
              {"perturbation", hara_eq::to_json(perturb)},
              {"sign_mismatches", sign_mismatches},
              {"worst_demand_gap", worst_demand_gap},
              {"consistent", ok}};
}

int cmd_oracle_check(const Options& opt, std::ostream& out) {
  bool ok = true;
  if (!opt.input.empty()) {
    const auto econ = hara_eq::economy_from_json(read_json_file(opt.input));
    json j = oracle_check_economy(econ, opt, ok);
    j["economy"] = hara_eq::to_json(econ);
    out << j.dump(2) << "\n";
    return ok ? kExitOk : kExitNotCertified;
  }

  // Randomized economies at 1.01x the c2 threshold.
  const auto scan = scan_options(opt);
  hara_eq::SamplerConfig cfg;
  cfg.seed = opt.seed;
  hara_eq::EconomySampler sampler(cfg);
  const int trials = opt.trials > 0 ? opt.trials : 100;
  int negative_ad_bc = 0, unique_simple = 0, scan_single = 0, certified = 0;
  json failures = json::array();
  for (int t = 0; t < trials; ++t) {
    const auto econ = sampler.next();
    const auto eps = resolve_epsilon(econ, opt);
    const auto cert = hara_eq::certify(econ, eps, true, opt.root_tol);
    const int crossings = hara_eq::sign_change_count(econ, eps, scan.grid_points, scan.p_lo, scan.p_hi);
    const bool good_sign = cert.ad_bc < 0.0;
    const bool good_roots = cert.unique_simple_root.value_or(false);
    negative_ad_bc += good_sign;
    unique_simple += good_roots;
    scan_single += crossings == 1;
    certified += cert.verdict == hara_eq::Verdict::CertifiedUnique;
    if (!good_sign || !good_roots || crossings != 1) {
      failures.push_back(json{{"trial", t}, {"economy", hara_eq::to_json(econ)}, {"sign_changes", crossings}});
    }
  }
  ok = failures.empty();
  out << json{{"seed", opt.seed},
              {"trials", trials},
              {"ad_bc_negative", negative_ad_bc},
              {"unique_simple_root", unique_simple},
              {"single_sign_change", scan_single},
              {"certified_unique", certified},
              {"failures", failures},
              {"consistent", ok}}
             .dump(2)
      << "\n";
  return ok ? kExitOk : kExitNotCertified;
}

int cmd_lemma_check(const Options& opt, std::ostream& out) {
  const int trials = opt.trials > 0 ? opt.trials : 1000;
  const auto report = hara_eq::lemma_fuzzer(trials, opt.max_n, opt.seed);
  json j = hara_eq::to_json(report);
  j["seed"] = opt.seed;
  j["max_n"] = opt.max_n;
  out << j.dump(2) << "\n";
  return report.clean() ? kExitOk : kExitNotCertified;
}

void add_epsilon_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--epsilon-tol", opt.epsilon_tol, "Tolerance for m/n against 1/gamma")->capture_default_str();
  sub->add_option("--epsilon", opt.epsilon, "Fixed exponent m/n (skips approximation)");
  sub->add_option("--max-denominator", opt.max_denominator, "Largest n considered")->capture_default_str();
}

void add_root_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--root-tol", opt.root_tol, "Width of isolating intervals in x")->capture_default_str();
}

void add_scan_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--grid-points", opt.grid_points, "Points in the log-spaced price grid")->capture_default_str();
  sub->add_option("--bracket", opt.bracket, "Price bracket lo,hi")->delimiter(',')->expected(2);
  sub->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium prices and uniqueness certificates for two-type HARA exchange economies"};
  app.require_subcommand(1);
  Options opt;

  auto* solve = app.add_subcommand("solve", "Equilibrium prices of an economy");
  solve->add_option("economy", opt.input, "Economy JSON ('-' for stdin)")->required();
  add_epsilon_flags(solve, opt);
  add_root_flags(solve, opt);

  auto* cert = app.add_subcommand("certify", "Check the sufficient conditions for a unique equilibrium");
  cert->add_option("economy", opt.input, "Economy JSON ('-' for stdin)")->required();
  add_epsilon_flags(cert, opt);
  add_root_flags(cert, opt);
  cert->add_flag("--verify-roots", opt.verify_roots, "Also count positive roots of the quadrinomial");

  auto* sweep = app.add_subcommand("sweep", "CSV of certificates along one parameter");
  sweep->add_option("spec", opt.input, "Sweep JSON")->required();
  add_epsilon_flags(sweep, opt);
  add_root_flags(sweep, opt);

  auto* roots = app.add_subcommand("roots", "Positive roots of a raw quadrinomial");
  roots->add_option("quadrinomial", opt.input, "Quadrinomial JSON ('-' for stdin)")->required();
  add_root_flags(roots, opt);
  roots->add_option("--method", opt.method, "auto, sturm or sparse")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle-check", "Cross-check against brute-force oracles");
  oracle->add_option("economy", opt.input, "Economy JSON; omit for a randomized suite");
  add_epsilon_flags(oracle, opt);
  add_root_flags(oracle, opt);
  add_scan_flags(oracle, opt);
  oracle->add_option("--trials", opt.trials, "Random economies when no file is given (default 100)");

  auto* lemma = app.add_subcommand("lemma-check", "Fuzz the double-root inequality in exact arithmetic");
  lemma->add_option("--trials", opt.trials, "Number of trials (default 1000)");
  lemma->add_option("--max-n", opt.max_n, "Largest degree n")->capture_default_str();
  lemma->add_option("--seed", opt.seed, "Random seed")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(opt, out);
    if (*cert) return cmd_certify(opt, out);
    if (*sweep) return cmd_sweep(opt, out);
    if (*roots) return cmd_roots(opt, out);
    if (*oracle) return cmd_oracle_check(opt, out);
    if (*lemma) return cmd_lemma_check(opt, out);
  } catch (const hara_eq::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace haraeq_cli
