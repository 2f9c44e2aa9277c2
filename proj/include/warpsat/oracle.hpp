#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "warpsat/formula.hpp"

namespace warpsat {

// Hard cap for exhaustive enumeration: 2^24 states stays in the seconds
// range, and the oracle's job is to be obviously correct, not fast.
inline constexpr uint32_t kOracleMaxVars = 24;

struct GroundTruth {
  uint64_t e0;                     // minimal energy over all 2^N assignments
  uint64_t g0;                     // number of optimal assignments
  std::vector<Assignment> optima;  // up to `optima_cap` of them
  bool optima_truncated;
};

// Exact minimum by Gray-code scan with incremental energy updates.
// Throws std::invalid_argument above kOracleMaxVars.
GroundTruth enumerate_ground_states(const Formula& f, uint32_t optima_cap = 64);

// Early-exit satisfiability check: same scan, stops at the first
// zero-energy assignment. Equivalent to enumerate(...).e0 == 0.
bool is_satisfiable(const Formula& f);

struct ExactFields {
  // z[i] = min-energy(x_i forced FALSE) - min-energy(x_i forced TRUE)
  std::vector<int64_t> z;
  double zero_field_fraction;
};

ExactFields exact_fields(const Formula& f);

namespace detail {

// Variable-width clause list over a small variable set, used both by the
// oracle proper and by residual sub-problems in the WP pipeline.
struct SmallCnf {
  uint32_t n_vars = 0;
  std::vector<std::vector<Literal>> clauses;
};

// Gray-code scan over all 2^n assignments of `cnf`, calling
// visit(mask, energy) for each state (bit v of mask set = variable v TRUE).
// Returns early when visit returns false.
void gray_scan(const SmallCnf& cnf, const std::function<bool(uint64_t, uint64_t)>& visit);

struct SmallMin {
  uint64_t e0;
  uint64_t mask;  // one optimal assignment
};

SmallMin min_energy(const SmallCnf& cnf);

}  // namespace detail

}  // namespace warpsat
