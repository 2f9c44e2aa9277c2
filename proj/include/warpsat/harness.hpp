#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "warpsat/generators.hpp"
#include "warpsat/wp.hpp"

namespace warpsat {

struct WpParams {
  int64_t max_iters = -1;  // -1: wp_cutoff default
  uint32_t restarts = 0;
  ResidualParams residual{};
};

struct SweepConfig {
  uint32_t n_vars = 200;
  uint32_t k = 3;
  double alpha = 10.0;
  std::vector<uint32_t> e_list = {0, 5, 10, 15, 20, 30, 50, 60};
  uint32_t trials = 100;
  uint64_t master_seed = 1;
  WpParams wp{};
  uint32_t jobs = 1;
};

struct TrialRecord {
  uint32_t e;
  uint64_t seed;  // instance seed (derived from the master seed)
  bool converged;
  uint64_t iterations;
  uint32_t assigned;
  uint32_t unassigned;
  double agree_with_root;  // over WP-assigned variables
  uint64_t final_energy;   // after residual optimization
  Verdict verdict;
  double wall_time_ms;
};

struct SweepRecord {
  uint32_t e;
  uint32_t trials;
  uint32_t converged_trials;
  double convergence_rate;
  double se_convergence_rate;
  // Means below are over converged trials (NaN when none converged).
  double mean_iterations;
  double se_iterations;
  double mean_unassigned;
  double se_unassigned;
  double mean_agree_with_root;
  double se_agree_with_root;
  double mean_final_energy_gap;  // |final - E|
  double se_final_energy_gap;
};

// One planted-energy instance + WP run per (E, trial); reproducible bit for
// bit from (config, master seed) for any job count.
std::vector<SweepRecord> finite_energy_sweep(const SweepConfig& cfg,
                                             std::vector<TrialRecord>* details = nullptr);

struct EnsembleConfig {
  uint32_t n_vars = 2000;
  uint32_t k = 3;
  double alpha = 10.0;
  uint32_t instances = 20;
  uint64_t seed = 1;
  uint32_t jobs = 1;
};

struct FieldStats {
  std::map<int64_t, double> histogram;  // signed flip field relative to the root
  double tv_distance;                   // vs rho_plant
  double zero_field_fraction;
  double se_zero_field_fraction;  // over instance means
  double theory_zero;             // e^{-gamma}
  uint64_t samples;
};

FieldStats field_statistics(const EnsembleConfig& cfg);

struct BiasStats {
  double bias_root_true;  // mean (l+ - l-)/(l+ + l-) over root-TRUE variables
  double se_root_true;
  double bias_root_false;
  double se_root_false;
  double theory;  // 1/(2^K - 1)
  uint64_t n_root_true;
  uint64_t n_root_false;
};

BiasStats bias_statistics(const EnsembleConfig& cfg);

struct ValidationConfig {
  uint64_t seed = 1;
  uint32_t instances = 200;
  uint32_t satcond_targets = 3;       // SAT-conditioned formulas to collect
  uint64_t satcond_max_draws = 50000; // rejection budget for them
};

struct ValidationReport {
  uint32_t instances;
  uint32_t sat_declared;
  uint32_t constructiveness_violations;  // SAT verdict with nonzero oracle/witness energy
  uint32_t bound_violations;             // final energy below the oracle minimum
  uint32_t satcond_formulas;
  double satcond_zero_field_fraction;  // mean of exact_fields zero fractions
};

// Cross-module correctness net over mixed uniform/planted instances with
// N <= 16, alpha in {2, 4, 8, 10}.
ValidationReport oracle_validation(const ValidationConfig& cfg);

}  // namespace warpsat
