#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "warpsat/dimacs.hpp"
#include "warpsat/formula.hpp"

namespace warpsat {

enum class Dist : uint8_t { kUniform, kPlanted, kPlantedEnergy };

struct GenConfig {
  uint32_t n_vars = 0;
  uint32_t k = 3;
  uint32_t n_clauses = 0;
  uint64_t seed = 0;
  Dist dist = Dist::kUniform;
  uint32_t planted_energy = 0;  // E, only used by kPlantedEnergy

  static uint32_t clauses_for_ratio(uint32_t n_vars, double alpha) {
    return static_cast<uint32_t>(std::llround(alpha * n_vars));
  }

  void validate() const;  // throws std::invalid_argument
};

// Formula plus the assignment it was planted around. energy(formula, root)
// equals planted_energy exactly (0 for the pure planted distribution).
struct PlantedInstance {
  Formula formula;
  Assignment root;
  uint32_t planted_energy;
};

// M clauses drawn independently: K distinct variables uniform over the
// (N choose K) subsets, polarity pattern uniform over all 2^K choices.
Formula gen_uniform(const GenConfig& cfg);

// Root uniform over 2^N; per clause the polarity pattern is uniform over the
// 2^K - 1 patterns satisfied by the root.
PlantedInstance gen_planted(const GenConfig& cfg);

// First E clauses take the unique root-violating pattern, the remaining
// M - E are satisfied-pattern-uniform, in generation order.
PlantedInstance gen_planted_energy(const GenConfig& cfg);

// Rejection sampler for the SAT-conditioned distribution: draws gen_uniform
// formulas (per-attempt seeds derived from cfg.seed) until the oracle
// certifies ground-state energy zero. Only valid at oracle sizes (N <= 24).
struct RejectionSample {
  std::optional<Formula> formula;  // empty when max_attempts was exhausted
  uint64_t attempts;               // draws consumed, accepted one included

  bool exhausted() const { return !formula.has_value(); }
};

RejectionSample sample_psat_rejection(const GenConfig& cfg, uint64_t max_attempts);

// Metadata block for writing a generated instance to DIMACS.
DimacsMeta instance_meta(const GenConfig& cfg);
DimacsMeta instance_meta(const GenConfig& cfg, const PlantedInstance& inst);

}  // namespace warpsat
