// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lptest/core/combinatorics.hpp"
#include "lptest/core/oracle.hpp"
#include "lptest/core/phi.hpp"
#include "lptest/generators/discovery.hpp"
#include "lptest/generators/families.hpp"
#include "lptest/harness/instance_io.hpp"
#include "lptest/lp/feasibility_tester.hpp"
#include "lptest/tester/meta_tester.hpp"

namespace lptest::harness {

/// Exit codes of every subcommand.
enum ExitCode : int { kExitAccept = 0, kExitReject = 1, kExitError = 2 };

/// Shortest decimal string that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline Json to_json(const TesterVerdict& v, std::size_t trial) {
  Json j{{"trial", trial},
         {"decision", to_string(v.decision)},
         {"queries_used", v.queries_used},
         {"cause", to_string(v.cause)},
         {"rounds", v.rounds}};
  j["witness_index"] = v.witness_index ? Json(*v.witness_index) : Json(nullptr);
  return j;
}

/// Report of a tester experiment: configuration echo, per-trial verdicts
/// and the aggregate statistics.
struct ExperimentReport {
  Json config = Json::object();
  VerdictEstimate estimate;
  std::size_t query_budget = 0;
  std::optional<double> wall_clock_seconds;

  Json to_json() const {
    Json j;
    j["config"] = config;
    j["trials"] = estimate.trials;
    j["accepts"] = estimate.accepts;
    j["accept_rate"] = estimate.accept_rate;
    j["mean_queries"] = estimate.mean_queries;
    j["ci95"] = estimate.ci95;
    j["max_queries"] = estimate.max_queries;
    j["query_budget"] = query_budget;
    j["decision"] = estimate.accept_rate > 0.5 ? "accept" : "reject";
    Json trials = Json::array();
    for (std::size_t i = 0; i < estimate.verdicts.size(); ++i) {
      trials.push_back(harness::to_json(estimate.verdicts[i], i));
    }
    j["verdicts"] = std::move(trials);
    if (wall_clock_seconds) j["wall_clock_seconds"] = *wall_clock_seconds;
    return j;
  }

  /// One row per trial; the aggregate columns repeat on every row.
  std::string to_csv() const {
    std::string s = "trial,decision,queries_used,cause,witness_index,accept_rate,mean_queries,ci95\n";
    for (std::size_t i = 0; i < estimate.verdicts.size(); ++i) {
      const auto& v = estimate.verdicts[i];
      s += std::to_string(i) + "," + to_string(v.decision) + "," + std::to_string(v.queries_used) + "," +
           to_string(v.cause) + "," + (v.witness_index ? std::to_string(*v.witness_index) : std::string()) + "," +
           format_double(estimate.accept_rate) + "," + format_double(estimate.mean_queries) + "," +
           format_double(estimate.ci95) + "\n";
    }
    return s;
  }
};

struct TestOptions {
  std::string path;
  double epsilon = 0.1;
  std::optional<double> k;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  bool tolerant = false;
  double c = 1.0 / 20.0;
  std::string format = "json";
  double sample_multiplier = 10.0;
  std::optional<std::size_t> rounds;
  bool no_normalize = false;
  bool timing = false;
  bool exact = false;
};

/// Runs the tester matching the instance kind and returns the report.
inline ExperimentReport run_test(const TestOptions& opt) {
  auto file = read_instance(opt.path);
  double k_factor = 1.0;
  if (!opt.no_normalize) {
    file = normalize(file);
    k_factor = file.metadata["normalization"]["k_factor"].get<double>();
  }
  const auto& inst = file.instance;
  ExperimentReport rep;
  rep.config = {{"instance", opt.path},   {"kind", to_string(inst.kind())}, {"delta", inst.delta()},
                {"n", inst.size()},        {"epsilon", opt.epsilon},         {"seed", opt.seed},
                {"trials", opt.trials},    {"sample_multiplier", opt.sample_multiplier},
                {"normalized", !opt.no_normalize}};
  if (file.metadata.contains("normalization")) rep.config["normalization"] = file.metadata["normalization"];
  const auto start = std::chrono::steady_clock::now();

  if (is_optimization_kind(inst.kind())) {
    if (opt.tolerant) throw std::invalid_argument("--tolerant applies to linear kinds only");
    TesterConfig cfg;
    cfg.epsilon = opt.epsilon;
    if (opt.k) cfg.k = *opt.k * k_factor;
    cfg.seed = opt.seed;
    cfg.sample_multiplier = opt.sample_multiplier;
    cfg.check_rounds = opt.rounds;
    const auto k = cfg.k ? cfg.k : inst.k();
    if (!k) throw std::invalid_argument("instance has no threshold; pass --k");
    rep.config["tester"] = "lp-type";
    rep.config["k"] = *k;
    rep.config["rounds"] = cfg.rounds();
    rep.query_budget = sample_size(cfg.sample_multiplier, inst.delta(), cfg.epsilon) + cfg.rounds();
    if (opt.trials > 1) {
      rep.estimate = estimate_verdict_probability(inst, cfg, opt.trials, opt.seed);
    } else {
      rep.estimate = summarize({run_lptype_tester(inst, cfg)});
    }
  } else if (opt.tolerant) {
    lp::TolerantConfig cfg;
    cfg.epsilon = opt.epsilon;
    cfg.c = opt.c;
    cfg.seed = opt.seed;
    cfg.sample_multiplier = opt.sample_multiplier;
    cfg.check_rounds = opt.rounds;
    cfg.exact = opt.exact;
    rep.config["tester"] = "tolerant-feasibility";
    rep.config["c"] = opt.c;
    rep.config["rounds"] = cfg.rounds();
    rep.query_budget = sample_size(cfg.sample_multiplier, lp_variables(inst), cfg.epsilon) + cfg.rounds();
    if (opt.trials > 1) {
      rep.estimate = lp::estimate_tolerant_verdicts(inst, cfg, opt.trials, opt.seed);
    } else {
      rep.estimate = summarize({lp::run_tolerant_feasibility_tester(inst, cfg)});
    }
  } else {
    lp::FeasibilityConfig cfg;
    cfg.epsilon = opt.epsilon;
    cfg.seed = opt.seed;
    cfg.sample_multiplier = opt.sample_multiplier;
    cfg.check_rounds = opt.rounds;
    rep.config["tester"] = "linear-feasibility";
    rep.config["rounds"] = cfg.rounds();
    rep.query_budget = sample_size(cfg.sample_multiplier, lp_variables(inst), cfg.epsilon) + cfg.rounds();
    if (opt.trials > 1) {
      rep.estimate = lp::estimate_feasibility_verdicts(inst, cfg, opt.trials, opt.seed);
    } else {
      rep.estimate = summarize({lp::run_linear_feasibility_tester(inst, cfg)});
    }
  }
  if (opt.timing) {
    rep.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

struct VerifyOptions {
  std::string path;
  std::string check = "sampling-lemma";
  std::optional<std::size_t> r;
  std::optional<std::size_t> max_subset;
  bool no_normalize = false;
};

/// Runs one verification; `passed` receives the overall outcome.
inline Json run_verify(const VerifyOptions& opt, bool& passed) {
  auto file = read_instance(opt.path);
  if (!opt.no_normalize) file = normalize(file);
  const auto& inst = file.instance;
  Json j{{"instance", opt.path}, {"check", opt.check}, {"kind", to_string(inst.kind())}, {"n", inst.size()}};
  passed = true;
  if (opt.check == "sampling-lemma") {
    std::vector<std::size_t> rs;
    if (opt.r) {
      rs.push_back(*opt.r);
    } else {
      for (std::size_t r = 0; r < inst.size(); ++r) rs.push_back(r);
    }
    Json list = Json::array();
    for (const auto r : rs) {
      const auto rep = sampling_lemma_check(inst, r);
      passed = passed && rep.equal && rep.within_bound;
      list.push_back({{"r", r},
                      {"v_r", to_string(rep.v_r)},
                      {"x_r_plus_1", to_string(rep.x_r1)},
                      {"lhs", to_string(rep.lhs)},
                      {"rhs", to_string(rep.rhs)},
                      {"equal", rep.equal},
                      {"violator_bound", to_string(rep.bound)},
                      {"within_bound", rep.within_bound}});
    }
    j["results"] = std::move(list);
  } else if (opt.check == "axioms") {
    const auto rep = check_lp_type_axioms(inst, opt.max_subset ? *opt.max_subset : inst.size());
    passed = rep.passed();
    j["monotonicity"] = rep.monotonicity;
    j["locality"] = rep.locality;
    j["subsets_evaluated"] = rep.subsets_evaluated;
    j["checks"] = rep.checks;
    if (!rep.passed()) {
      j["first_violation"] = rep.first_violation;
      j["witness_a"] = rep.witness_a;
      j["witness_b"] = rep.witness_b;
      j["witness_x"] = rep.witness_x ? Json(*rep.witness_x) : Json(nullptr);
    }
  } else if (opt.check == "oracle") {
    const auto all = SubsetView::all(inst.constraints());
    const auto oracle_value = bruteforce_phi(inst, all);
    const auto solver_value = phi(inst, all);
    const double tol = inst.kind() == ProblemKind::Annulus ? 1e-6 : 1e-9;
    const bool tags = oracle_value.tag == solver_value.tag;
    passed = tags && (!solver_value.is_finite() || approx_equal(oracle_value.value, solver_value.value, tol));
    j["solver"] = to_string(solver_value);
    j["oracle"] = to_string(oracle_value);
    if (solver_value.is_finite()) j["solver_value"] = solver_value.value;
    if (oracle_value.is_finite()) j["oracle_value"] = oracle_value.value;
    j["tolerance"] = tol;
  } else {
    throw std::invalid_argument("--check must be sampling-lemma, axioms or oracle");
  }
  j["passed"] = passed;
  return j;
}

inline Json certificate_json(const PhiValue& v) {
  Json j;
  j["value"] = to_string(v);
  if (v.is_finite()) {
    j["objective"] = v.value;
    if (!v.tail.empty()) j["tail"] = v.tail;
  }
  j["basis"] = v.solution.basis;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, geometry::BallCertificate>) {
          j["center"] = c.center;
          j["radius"] = c.radius;
        } else if constexpr (std::is_same_v<T, geometry::IntersectingBallCertificate>) {
          j["center"] = c.center;
          j["radius"] = c.radius;
          j["minimax"] = c.minimax;
        } else if constexpr (std::is_same_v<T, geometry::AnnulusCertificate>) {
          j["center"] = c.center;
          j["r_inner"] = c.r_inner;
          j["r_outer"] = c.r_outer;
          j["width"] = c.width;
        } else if constexpr (std::is_same_v<T, LpCertificate>) {
          j["feasible"] = c.feasible;
          if (c.feasible) j["point"] = c.point;
        }
      },
      v.solution.certificate);
  return j;
}

/// Parses argv and runs the selected subcommand, writing results to `out`
/// and diagnostics to `err`. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Property testing for LP-type problems"};
  app.name("lptest");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance family and write it as JSON");
  std::string family;
  generators::FamilySpec spec;
  std::string kind_name = "meb";
  std::string gen_out;
  gen->add_option("--family", family, "moment-near|moment-far|simplex-near|simplex-far|random-feasible|random-far")
      ->required();
  gen->add_option("--d", spec.d, "Ambient dimension")->required();
  gen->add_option("--n", spec.n, "Total multiset size")->capture_default_str();
  gen->add_option("--epsilon", spec.epsilon, "Light-point mass / far fraction target")->capture_default_str();
  gen->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  gen->add_option("--k", spec.k, "Threshold for ball families")->capture_default_str();
  gen->add_option("--kind", kind_name, "Problem kind of the random families")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Output path (stdout when omitted)");

  // test
  auto* test = app.add_subcommand("test", "Run the matching tester on an instance");
  TestOptions topt;
  double k_override = 0.0;
  std::size_t rounds_override = 0;
  test->add_option("instance", topt.path, "Instance file")->required();
  test->add_option("--epsilon", topt.epsilon, "Distance parameter")->capture_default_str();
  auto* k_opt = test->add_option("--k", k_override, "Threshold override (instance units)");
  test->add_option("--seed", topt.seed, "Random seed")->capture_default_str();
  test->add_option("--trials", topt.trials, "Number of seeded trials")->capture_default_str()->check(
      CLI::PositiveNumber);
  test->add_flag("--tolerant", topt.tolerant, "Use the tolerant feasibility tester");
  test->add_option("--c", topt.c, "Closeness constant of the tolerant tester")->capture_default_str();
  test->add_option("--format", topt.format, "json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  test->add_option("--sample-multiplier", topt.sample_multiplier, "Constant in the sample size")
      ->capture_default_str();
  auto* rounds_opt = test->add_option("--rounds", rounds_override, "Check rounds (default ceil(2/eps))");
  test->add_flag("--no-normalize", topt.no_normalize, "Skip coordinate normalization on ingest");
  test->add_flag("--timing", topt.timing, "Include wall-clock time in the report");
  test->add_flag("--exact", topt.exact, "Exact arithmetic in the tolerant subsystem search");

  // verify
  auto* verify = app.add_subcommand("verify", "Exhaustive checks on a small instance");
  VerifyOptions vopt;
  std::size_t r_value = 0;
  std::size_t max_subset = 0;
  verify->add_option("instance", vopt.path, "Instance file")->required();
  verify->add_option("--check", vopt.check, "sampling-lemma|axioms|oracle")
      ->capture_default_str()
      ->check(CLI::IsMember({"sampling-lemma", "axioms", "oracle"}));
  auto* r_opt = verify->add_option("--r", r_value, "Sample size for the sampling lemma (all r when omitted)");
  auto* ms_opt = verify->add_option("--max-subset", max_subset, "Largest subset size for the axiom check");
  verify->add_flag("--no-normalize", vopt.no_normalize, "Skip coordinate normalization on ingest");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "Group-discovery query counts over a (d, epsilon) grid");
  std::string scaling_family = "moment-far";
  std::vector<std::size_t> d_list;
  std::vector<double> eps_list;
  std::size_t scaling_trials = 10000;
  std::uint64_t scaling_seed = 0;
  std::size_t scaling_n = 1000000;
  scaling->add_option("--family", scaling_family, "moment-far or simplex-far")->capture_default_str();
  scaling->add_option("--d-list", d_list, "Comma-separated dimensions")->delimiter(',');
  scaling->add_option("--epsilon-list", eps_list, "Comma-separated epsilons")->delimiter(',');
  scaling->add_option("--trials", scaling_trials, "Trials per grid point")->capture_default_str();
  scaling->add_option("--seed", scaling_seed, "Random seed")->capture_default_str();
  scaling->add_option("--n", scaling_n, "Multiset size of the simulated family")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve the instance and print the certificate");
  std::string solve_path;
  std::uint64_t solve_seed = kPhiSeed;
  bool solve_no_normalize = false;
  solve->add_option("instance", solve_path, "Instance file")->required();
  solve->add_option("--seed", solve_seed, "Solver seed");
  solve->add_flag("--no-normalize", solve_no_normalize, "Skip coordinate normalization on ingest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (gen->parsed()) {
      spec.family = generators::parse_family(family);
      spec.kind = parse_problem_kind(kind_name);
      const auto g = generators::generate(spec);
      const auto text = serialize(to_instance_file(g));
      if (gen_out.empty()) {
        out << text;
      } else {
        std::ofstream f(gen_out);
        if (!f) throw Error("cannot write '" + gen_out + "'");
        f << text;
      }
      return kExitAccept;
    }
    if (test->parsed()) {
      if (k_opt->count() > 0) topt.k = k_override;
      if (rounds_opt->count() > 0) topt.rounds = rounds_override;
      const auto rep = run_test(topt);
      if (topt.format == "csv") {
        out << rep.to_csv();
      } else {
        out << rep.to_json().dump(2) << "\n";
      }
      return rep.estimate.accept_rate > 0.5 ? kExitAccept : kExitReject;
    }
    if (verify->parsed()) {
      if (r_opt->count() > 0) vopt.r = r_value;
      if (ms_opt->count() > 0) vopt.max_subset = max_subset;
      bool passed = false;
      const auto j = run_verify(vopt, passed);
      out << j.dump(2) << "\n";
      return passed ? kExitAccept : kExitReject;
    }
    if (scaling->parsed()) {
      const auto fam = generators::parse_family(scaling_family);
      out << "d,epsilon,epsilon_effective,mean_queries,ci95,closed_form\n";
      for (const auto d : d_list) {
        for (const auto eps : eps_list) {
          generators::FamilySpec s;
          s.family = fam;
          s.d = d;
          s.n = scaling_n;
          s.epsilon = eps;
          const auto res = generators::empirical_group_discovery(s, scaling_trials, scaling_seed);
          out << d << "," << format_double(eps) << "," << format_double(res.epsilon_effective) << ","
              << format_double(res.mean_queries) << "," << format_double(res.ci95) << ","
              << format_double(res.closed_form) << "\n";
        }
      }
      return kExitAccept;
    }
    if (solve->parsed()) {
      auto file = read_instance(solve_path);
      if (!solve_no_normalize) file = normalize(file);
      const auto& inst = file.instance;
      const auto v = phi(inst, SubsetView::all(inst.constraints()), solve_seed);
      Json j = certificate_json(v);
      j["kind"] = to_string(inst.kind());
      if (file.metadata.contains("normalization")) j["normalization"] = file.metadata["normalization"];
      out << j.dump(2) << "\n";
      return kExitAccept;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace lptest::harness
