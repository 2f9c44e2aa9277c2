#pragma once

#include <cstdint>
#include <vector>

#include "warpsat/formula.hpp"

namespace warpsat {

// Clause-to-variable warnings, one bit per (clause, position) edge. Edge
// (a, j) lives at index a*K + j, matching the clause literal layout.
struct WpState {
  std::vector<uint8_t> warnings;
  uint64_t iterations = 0;
  uint64_t changed_last_sweep = 0;
};

// Warnings i.i.d. uniform in {0,1}; deterministic given the seed.
WpState wp_init(const Formula& f, uint64_t seed);

// One synchronous sweep: for every edge (a, i), the new warning is 1 iff for
// all other variables j of clause a the cavity field h_{j->a} (sum of
// s_{b,j} u_{b->j} over the other clauses b containing j) points against
// satisfying a, i.e. s_{a,j} h_{j->a} < 0. New values are computed from the
// old state and swapped in at the end. Returns the changed-edge count.
uint64_t wp_sweep(const Formula& f, WpState& state);

struct WpOutcome {
  bool converged = false;
  uint64_t iterations = 0;
  std::vector<int64_t> local_fields;  // H_i = sum_{a contains i} s_{a,i} u_{a->i}
  Assignment partial;                 // TRUE/FALSE where H_i != 0, UNSET otherwise
};

// Cutoff rule used by wp_run when max_iters < 0: max(10, ceil(2 ln N)).
int64_t wp_cutoff(uint32_t n_vars);

// Sweeps until a sweep changes zero edges or the cutoff is hit.
// Non-convergence is a reported state, not an error.
WpOutcome wp_run(const Formula& f, uint64_t seed, int64_t max_iters = -1);

struct ResidualParams {
  uint64_t steps_per_var = 100;  // greedy-descent step budget per restart
  uint32_t restarts = 10;
  uint32_t exhaustive_cap = 24;  // components up to this size are enumerated
};

struct CompletionResult {
  Assignment assignment;  // total
  uint64_t energy_value;  // exact recount over the whole formula
  uint64_t residual_vars;
  uint64_t components;
};

// Fixes the assigned variables, simplifies the formula, splits the residual
// into connected components and solves each one (exhaustively when small,
// greedy descent with restarts otherwise).
CompletionResult residual_optimize(const Formula& f, const Assignment& partial, uint64_t seed,
                                   const ResidualParams& params = {});

enum class Verdict : uint8_t { kSat, kUnsatDeclared };

struct DecideParams {
  int64_t max_iters = -1;  // -1: default cutoff
  uint32_t restarts = 0;   // extra attempts with fresh derived seeds
  ResidualParams residual{};
};

struct Decision {
  Verdict verdict;
  uint64_t final_energy;   // energy of the best assignment found
  uint64_t iterations;     // WP sweeps of the best attempt
  uint64_t residual_size;  // unassigned variables of the best attempt
  bool converged;          // WP convergence of the best attempt
  Assignment witness;      // best completed assignment; a solution iff kSat
};

// wp_run followed by residual_optimize; SAT iff the completed assignment has
// energy zero (verified before returning, so SAT verdicts always carry a
// checked witness).
Decision wp_decide(const Formula& f, uint64_t seed, const DecideParams& params = {});

}  // namespace warpsat
