// warpsat: generate random K-SAT instances, solve them with Warning
// Propagation, evaluate the replica-symmetric predictions, and run the
// theory-vs-experiment harness.
//
// Exit codes: 0 success/help, 2 usage error, 3 I/O error,
//             10 SAT, 20 UNSAT declared (solve subcommand).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "warpsat/dimacs.hpp"
#include "warpsat/generators.hpp"
#include "warpsat/harness.hpp"
#include "warpsat/rng.hpp"
#include "warpsat/theory.hpp"
#include "warpsat/wp.hpp"

using json = nlohmann::json;
using namespace warpsat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

uint32_t default_jobs() {
  if (const char* env = std::getenv("WARPSAT_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<uint32_t>(v);
  }
  return 1;
}

void log_config(const json& config) { std::cerr << "config " << config.dump() << "\n"; }

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << payload).flush())
    throw DimacsError(DimacsErrorKind::kIo, "cannot write " + path);
}

std::string bitstring(const Assignment& x) {
  std::string s;
  s.reserve(x.size());
  for (Value v : x) s.push_back(v == Value::kTrue ? '1' : '0');
  return s;
}

json field_weights_json(const theory::FieldDistribution& d) {
  return {{"n_max", d.n_max()}, {"weight", d.weight}, {"tail", d.tail}};
}

json theory_point_json(const theory::TheoryPoint& tp) {
  return {
      {"k", tp.k},
      {"alpha", tp.alpha},
      {"nu", tp.nu ? json(*tp.nu) : json()},
      {"rho0", tp.rho0},
      {"gamma_big", tp.gamma_big},
      {"gamma", tp.gamma},
      {"b", tp.b},
      {"field_weights", field_weights_json(tp.field_weights)},
      {"free_energy", tp.free_energy},
      {"gs_energy",
       {{"from_free_energy", tp.gs_energy.from_free_energy},
        {"saddle", tp.gs_energy.saddle},
        {"large_nu_closed_form", tp.gs_energy.large_nu_closed_form},
        {"large_alpha", tp.gs_energy.large_alpha}}},
      {"omega0",
       {{"exact", tp.omega0.exact}, {"approx", tp.omega0.approx}, {"gap", tp.omega0.gap}}},
      {"sigma_per_var",
       {{"lo", tp.sigma_per_var.lo},
        {"hi", tp.sigma_per_var.hi},
        {"leading_order", tp.sigma_per_var.leading_order}}},
      {"bias",
       {{"bias", tp.bias.bias},
        {"ell_plus", tp.bias.ell_plus},
        {"ell_minus", tp.bias.ell_minus},
        {"outside_first_order_regime", tp.bias.outside_first_order_regime}}},
  };
}

std::string verdict_name(Verdict v) { return v == Verdict::kSat ? "SAT" : "UNSAT_DECLARED"; }

json trial_json(const TrialRecord& t) {
  return {{"seed", t.seed},
          {"converged", t.converged},
          {"iterations", t.iterations},
          {"assigned", t.assigned},
          {"unassigned", t.unassigned},
          {"agree_with_root", t.agree_with_root},
          {"final_energy", t.final_energy},
          {"verdict", verdict_name(t.verdict)},
          {"wall_time_ms", t.wall_time_ms}};
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << "e,trials,converged_trials,convergence_rate,se_convergence_rate,"
         "mean_iterations,se_iterations,mean_unassigned,se_unassigned,"
         "mean_agree_with_root,se_agree_with_root,mean_final_energy_gap,"
         "se_final_energy_gap\n";
  for (const auto& r : records)
    out << r.e << ',' << r.trials << ',' << r.converged_trials << ',' << r.convergence_rate
        << ',' << r.se_convergence_rate << ',' << r.mean_iterations << ',' << r.se_iterations
        << ',' << r.mean_unassigned << ',' << r.se_unassigned << ',' << r.mean_agree_with_root
        << ',' << r.se_agree_with_root << ',' << r.mean_final_energy_gap << ','
        << r.se_final_energy_gap << '\n';
  return out.str();
}

json sweep_json(const SweepRecord& r) {
  return {{"e", r.e},
          {"trials", r.trials},
          {"converged_trials", r.converged_trials},
          {"convergence_rate", r.convergence_rate},
          {"se_convergence_rate", r.se_convergence_rate},
          {"mean_iterations", r.mean_iterations},
          {"se_iterations", r.se_iterations},
          {"mean_unassigned", r.mean_unassigned},
          {"se_unassigned", r.se_unassigned},
          {"mean_agree_with_root", r.mean_agree_with_root},
          {"se_agree_with_root", r.se_agree_with_root},
          {"mean_final_energy_gap", r.mean_final_energy_gap},
          {"se_final_energy_gap", r.se_final_energy_gap}};
}

struct GenOptions {
  std::string dist = "uniform";
  uint32_t n_vars = 0;
  uint32_t k = 3;
  std::optional<uint32_t> m;
  std::optional<double> alpha;
  uint32_t e = 0;
  uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenOptions& opt) {
  GenConfig cfg;
  cfg.n_vars = opt.n_vars;
  cfg.k = opt.k;
  cfg.seed = opt.seed;
  if (opt.m)
    cfg.n_clauses = *opt.m;
  else if (opt.alpha)
    cfg.n_clauses = GenConfig::clauses_for_ratio(opt.n_vars, *opt.alpha);
  else
    throw CLI::ValidationError("gen", "one of -m or --alpha is required");

  json config{{"command", "gen"},   {"dist", opt.dist}, {"n", cfg.n_vars},
              {"m", cfg.n_clauses}, {"k", cfg.k},       {"seed", cfg.seed},
              {"E", opt.e},         {"out", opt.out},   {"rng", Rng::kAlgorithm}};
  log_config(config);

  std::ostringstream text;
  if (opt.dist == "uniform") {
    cfg.dist = Dist::kUniform;
    Formula f = gen_uniform(cfg);
    write_dimacs(text, f, instance_meta(cfg));
  } else if (opt.dist == "planted") {
    cfg.dist = Dist::kPlanted;
    PlantedInstance inst = gen_planted(cfg);
    write_dimacs(text, inst.formula, instance_meta(cfg, inst));
  } else {
    cfg.dist = Dist::kPlantedEnergy;
    cfg.planted_energy = opt.e;
    PlantedInstance inst = gen_planted_energy(cfg);
    write_dimacs(text, inst.formula, instance_meta(cfg, inst));
  }
  write_output(opt.out, text.str());
  return kExitOk;
}

struct SolveOptions {
  std::string file;
  uint64_t seed = 1;
  int64_t max_iters = -1;
  uint32_t restarts = 0;
  std::string schedule = "sync";
};

int run_solve(const SolveOptions& opt) {
  json config{{"command", "solve"},       {"file", opt.file},
              {"seed", opt.seed},         {"max_iters", opt.max_iters},
              {"restarts", opt.restarts}, {"schedule", opt.schedule}};
  log_config(config);

  DimacsFile input = read_dimacs_file(opt.file);
  DecideParams params;
  params.max_iters = opt.max_iters;
  params.restarts = opt.restarts;

  const auto t0 = std::chrono::steady_clock::now();
  Decision d = wp_decide(input.formula, opt.seed, params);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  // SAT exits only with a re-verified witness in the output.
  const bool sat = d.verdict == Verdict::kSat && energy(input.formula, d.witness) == 0;
  json out{{"config", config},
           {"seed", opt.seed},
           {"verdict", sat ? "SAT" : "UNSAT_DECLARED"},
           {"final_energy", d.final_energy},
           {"iterations", d.iterations},
           {"residual_size", d.residual_size},
           {"converged", d.converged},
           {"wall_time_ms", ms}};
  if (sat) out["witness"] = bitstring(d.witness);
  std::cout << out.dump(2) << "\n";
  return sat ? kExitSat : kExitUnsat;
}

struct TheoryOptions {
  int k = 3;
  std::vector<double> alphas;
  std::optional<double> nu;
  std::string format = "json";
  std::string out;
};

int run_theory(const TheoryOptions& opt) {
  json config{{"command", "theory"},
              {"k", opt.k},
              {"alpha", opt.alphas},
              {"nu", opt.nu ? json(*opt.nu) : json()},
              {"format", opt.format}};
  log_config(config);

  std::ostringstream text;
  if (opt.format == "csv") {
    text << "k,alpha,nu,rho0,F,e0,omega0,sigma_lo,sigma_hi,bias\n";
    for (double alpha : opt.alphas) {
      auto tp = theory::theory_point(opt.k, alpha, opt.nu);
      text << tp.k << ',' << tp.alpha << ',';
      if (tp.nu)
        text << *tp.nu;
      else
        text << "inf";
      text << ',' << tp.rho0 << ',' << tp.free_energy << ',' << tp.gs_energy.from_free_energy
           << ',' << tp.omega0.exact << ',' << tp.sigma_per_var.lo << ',' << tp.sigma_per_var.hi
           << ',' << tp.bias.bias << '\n';
    }
  } else if (opt.alphas.size() == 1) {
    json j = theory_point_json(theory::theory_point(opt.k, opt.alphas[0], opt.nu));
    j["config"] = config;
    text << j.dump(2) << "\n";
  } else {
    json points = json::array();
    for (double alpha : opt.alphas)
      points.push_back(theory_point_json(theory::theory_point(opt.k, alpha, opt.nu)));
    json j{{"config", config}, {"points", points}};
    text << j.dump(2) << "\n";
  }
  write_output(opt.out, text.str());
  return kExitOk;
}

struct ExpCommon {
  std::string format = "csv";
  bool verbose = false;
  std::string out;
};

int run_exp_finite_energy(const SweepConfig& sweep, const ExpCommon& common) {
  json config{{"command", "exp finite-energy"},
              {"n", sweep.n_vars},
              {"k", sweep.k},
              {"alpha", sweep.alpha},
              {"e_list", sweep.e_list},
              {"trials", sweep.trials},
              {"seed", sweep.master_seed},
              {"jobs", sweep.jobs},
              {"max_iters", sweep.wp.max_iters}};
  log_config(config);

  std::vector<TrialRecord> trials;
  auto records = finite_energy_sweep(sweep, common.verbose ? &trials : nullptr);
  std::ostringstream text;
  if (common.format == "csv") {
    text << sweep_csv(records);
    if (common.verbose) std::cerr << "note: per-trial detail requires --format json\n";
  } else {
    json j{{"config", config}, {"records", json::array()}};
    for (const auto& r : records) j["records"].push_back(sweep_json(r));
    if (common.verbose) {
      j["trials"] = json::array();
      for (const auto& t : trials) {
        json tj = trial_json(t);
        tj["e"] = t.e;
        j["trials"].push_back(tj);
      }
    }
    text << j.dump(2) << "\n";
  }
  write_output(common.out, text.str());
  return kExitOk;
}

int run_exp_fields(const EnsembleConfig& cfg, const ExpCommon& common) {
  json config{{"command", "exp fields"}, {"n", cfg.n_vars},            {"k", cfg.k},
              {"alpha", cfg.alpha},      {"instances", cfg.instances}, {"seed", cfg.seed},
              {"jobs", cfg.jobs}};
  log_config(config);
  auto stats = field_statistics(cfg);
  json hist = json::object();
  for (auto [z, freq] : stats.histogram) hist[std::to_string(z)] = freq;
  json j{{"config", config},
         {"histogram", hist},
         {"tv_distance", stats.tv_distance},
         {"zero_field_fraction", stats.zero_field_fraction},
         {"se_zero_field_fraction", stats.se_zero_field_fraction},
         {"theory_zero", stats.theory_zero},
         {"samples", stats.samples}};
  write_output(common.out, j.dump(2) + "\n");
  return kExitOk;
}

int run_exp_bias(const EnsembleConfig& cfg, const ExpCommon& common) {
  json config{{"command", "exp bias"}, {"n", cfg.n_vars},            {"k", cfg.k},
              {"alpha", cfg.alpha},    {"instances", cfg.instances}, {"seed", cfg.seed},
              {"jobs", cfg.jobs}};
  log_config(config);
  auto stats = bias_statistics(cfg);
  json j{{"config", config},
         {"bias_root_true", stats.bias_root_true},
         {"se_root_true", stats.se_root_true},
         {"bias_root_false", stats.bias_root_false},
         {"se_root_false", stats.se_root_false},
         {"theory", stats.theory},
         {"n_root_true", stats.n_root_true},
         {"n_root_false", stats.n_root_false}};
  write_output(common.out, j.dump(2) + "\n");
  return kExitOk;
}

int run_exp_validate(const ValidationConfig& cfg, const ExpCommon& common) {
  json config{{"command", "exp validate"},
              {"instances", cfg.instances},
              {"seed", cfg.seed},
              {"satcond_targets", cfg.satcond_targets},
              {"satcond_max_draws", cfg.satcond_max_draws}};
  log_config(config);
  auto report = oracle_validation(cfg);
  json j{{"config", config},
         {"instances", report.instances},
         {"sat_declared", report.sat_declared},
         {"constructiveness_violations", report.constructiveness_violations},
         {"bound_violations", report.bound_violations},
         {"satcond_formulas", report.satcond_formulas},
         {"satcond_zero_field_fraction", report.satcond_zero_field_fraction}};
  write_output(common.out, j.dump(2) + "\n");
  const bool clean = report.constructiveness_violations == 0 && report.bound_violations == 0;
  return clean ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random K-SAT laboratory: generators, Warning Propagation, cavity theory"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate an instance and write DIMACS");
  cmd_gen->add_option("--dist", gen.dist, "uniform | planted | planted-e")
      ->check(CLI::IsMember({"uniform", "planted", "planted-e"}))
      ->capture_default_str();
  cmd_gen->add_option("-n,--n-vars", gen.n_vars, "number of variables N")->required();
  cmd_gen->add_option("-k,--clause-width", gen.k, "clause width K")->capture_default_str();
  cmd_gen->add_option("-m,--n-clauses", gen.m, "number of clauses M");
  cmd_gen->add_option("--alpha", gen.alpha, "clause ratio alpha (M = round(alpha N))");
  cmd_gen->add_option("-E,--planted-energy", gen.e, "planted energy for --dist planted-e");
  cmd_gen->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  cmd_gen->add_option("-o,--out", gen.out, "output path (default: stdout)");

  SolveOptions solve;
  auto* cmd_solve =
      app.add_subcommand("solve", "run WP + residual optimization on a DIMACS file");
  cmd_solve->add_option("file", solve.file, "extended DIMACS input")->required();
  cmd_solve->add_option("--seed", solve.seed, "message initialization seed")
      ->capture_default_str();
  cmd_solve->add_option("--max-iters", solve.max_iters,
                        "sweep cutoff (-1: max(10, ceil(2 ln N)))");
  cmd_solve->add_option("--restarts", solve.restarts, "extra attempts with fresh seeds");
  cmd_solve->add_option("--schedule", solve.schedule, "update schedule (only sync implemented)")
      ->check(CLI::IsMember({"sync"}));

  TheoryOptions theory_opt;
  auto* cmd_theory = app.add_subcommand("theory", "evaluate the cavity predictions");
  cmd_theory->add_option("-k,--clause-width", theory_opt.k, "clause width K")
      ->capture_default_str();
  cmd_theory->add_option("--alpha", theory_opt.alphas, "clause ratio(s)")->required();
  cmd_theory->add_option("--nu", theory_opt.nu, "chemical potential (omit: infinity limit)");
  cmd_theory->add_option("--format", theory_opt.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd_theory->add_option("-o,--out", theory_opt.out, "output path (default: stdout)");

  auto* cmd_exp = app.add_subcommand("exp", "experiment harness");
  cmd_exp->require_subcommand(1);

  ExpCommon common;
  SweepConfig sweep;
  sweep.jobs = default_jobs();
  auto* cmd_fe = cmd_exp->add_subcommand("finite-energy", "WP convergence sweep over E");
  cmd_fe->add_option("-n,--n-vars", sweep.n_vars)->capture_default_str();
  cmd_fe->add_option("-k,--clause-width", sweep.k)->capture_default_str();
  cmd_fe->add_option("--alpha", sweep.alpha)->capture_default_str();
  cmd_fe->add_option("--e-list", sweep.e_list, "planted energies to scan")
      ->delimiter(',')
      ->capture_default_str();
  cmd_fe->add_option("--trials", sweep.trials)->capture_default_str();
  cmd_fe->add_option("--seed", sweep.master_seed)->capture_default_str();
  cmd_fe->add_option("--max-iters", sweep.wp.max_iters);
  cmd_fe->add_option("--jobs", sweep.jobs, "worker threads (default WARPSAT_JOBS or 1)");
  cmd_fe->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));
  cmd_fe->add_flag("--verbose", common.verbose, "include per-trial records (json format)");
  cmd_fe->add_option("-o,--out", common.out);

  EnsembleConfig ensemble;
  ensemble.jobs = default_jobs();
  auto* cmd_fields = cmd_exp->add_subcommand("fields", "flip-field histogram vs closed form");
  auto* cmd_bias = cmd_exp->add_subcommand("bias", "occurrence bias vs 1/(2^K-1)");
  for (auto* cmd : {cmd_fields, cmd_bias}) {
    cmd->add_option("-n,--n-vars", ensemble.n_vars)->capture_default_str();
    cmd->add_option("-k,--clause-width", ensemble.k)->capture_default_str();
    cmd->add_option("--alpha", ensemble.alpha)->capture_default_str();
    cmd->add_option("--instances", ensemble.instances)->capture_default_str();
    cmd->add_option("--seed", ensemble.seed)->capture_default_str();
    cmd->add_option("--jobs", ensemble.jobs, "worker threads (default WARPSAT_JOBS or 1)");
    cmd->add_option("-o,--out", common.out);
  }

  ValidationConfig validation;
  auto* cmd_validate = cmd_exp->add_subcommand("validate", "cross-check WP against the oracle");
  cmd_validate->add_option("--instances", validation.instances)->capture_default_str();
  cmd_validate->add_option("--seed", validation.seed)->capture_default_str();
  cmd_validate->add_option("-o,--out", common.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text on stdout, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return kExitUsage;
  }

  try {
    if (*cmd_gen) return run_gen(gen);
    if (*cmd_solve) return run_solve(solve);
    if (*cmd_theory) return run_theory(theory_opt);
    if (*cmd_fe) return run_exp_finite_energy(sweep, common);
    if (*cmd_fields) return run_exp_fields(ensemble, common);
    if (*cmd_bias) return run_exp_bias(ensemble, common);
    if (*cmd_validate) return run_exp_validate(validation, common);
  } catch (const DimacsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
