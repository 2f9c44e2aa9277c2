#include "warpsat/generators.hpp"

#include <stdexcept>

#include "warpsat/oracle.hpp"
#include "warpsat/rng.hpp"

namespace warpsat {

namespace {

// Draw order per clause is fixed (variables, then polarity pattern) so that
// instances are reproducible bit for bit from (cfg, seed).
void draw_distinct_vars(Rng& rng, uint32_t n_vars, uint32_t k, uint32_t* out) {
  for (uint32_t j = 0; j < k; ++j) {
    uint32_t v;
    bool fresh;
    do {
      v = static_cast<uint32_t>(rng.below(n_vars));
      fresh = true;
      for (uint32_t l = 0; l < j; ++l)
        if (out[l] == v) {
          fresh = false;
          break;
        }
    } while (!fresh);
    out[j] = v;
  }
}

// Pattern bit j set = variable j negated. The unique pattern violated by
// `root` negates exactly the root-TRUE variables.
uint32_t forbidden_pattern(const Assignment& root, const uint32_t* vars, uint32_t k) {
  uint32_t pat = 0;
  for (uint32_t j = 0; j < k; ++j)
    if (root[vars[j]] == Value::kTrue) pat |= 1u << j;
  return pat;
}

void emit_clause(std::vector<Literal>& flat, const uint32_t* vars, uint32_t k, uint32_t pattern) {
  for (uint32_t j = 0; j < k; ++j)
    flat.push_back({vars[j], static_cast<int8_t>((pattern >> j) & 1u ? -1 : 1)});
}

}  // namespace

void GenConfig::validate() const {
  if (k < 2) throw std::invalid_argument("gen: clause width K must be at least 2");
  if (k > n_vars) throw std::invalid_argument("gen: K exceeds the number of variables");
  if (k >= 31) throw std::invalid_argument("gen: clause width K too large");
  if (dist == Dist::kPlantedEnergy && planted_energy > n_clauses)
    throw std::invalid_argument("gen: planted energy E exceeds the clause count");
}

Formula gen_uniform(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  std::vector<Literal> flat;
  flat.reserve(static_cast<size_t>(cfg.n_clauses) * cfg.k);
  std::vector<uint32_t> vars(cfg.k);
  for (uint32_t a = 0; a < cfg.n_clauses; ++a) {
    draw_distinct_vars(rng, cfg.n_vars, cfg.k, vars.data());
    emit_clause(flat, vars.data(), cfg.k, static_cast<uint32_t>(rng.below(1u << cfg.k)));
  }
  return Formula(cfg.n_vars, cfg.k, std::move(flat));
}

PlantedInstance gen_planted(const GenConfig& cfg) {
  GenConfig c = cfg;
  c.dist = Dist::kPlantedEnergy;
  c.planted_energy = 0;
  return gen_planted_energy(c);
}

PlantedInstance gen_planted_energy(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  Assignment root(cfg.n_vars);
  for (uint32_t v = 0; v < cfg.n_vars; ++v)
    root[v] = rng.coin() ? Value::kTrue : Value::kFalse;

  const uint32_t e_target = cfg.dist == Dist::kPlantedEnergy ? cfg.planted_energy : 0;
  std::vector<Literal> flat;
  flat.reserve(static_cast<size_t>(cfg.n_clauses) * cfg.k);
  std::vector<uint32_t> vars(cfg.k);
  for (uint32_t a = 0; a < cfg.n_clauses; ++a) {
    draw_distinct_vars(rng, cfg.n_vars, cfg.k, vars.data());
    const uint32_t forbidden = forbidden_pattern(root, vars.data(), cfg.k);
    uint32_t pattern;
    if (a < e_target) {
      pattern = forbidden;
    } else {
      // uniform over the 2^K - 1 satisfied patterns
      const uint32_t r = static_cast<uint32_t>(rng.below((1u << cfg.k) - 1u));
      pattern = r + (r >= forbidden ? 1u : 0u);
    }
    emit_clause(flat, vars.data(), cfg.k, pattern);
  }

  PlantedInstance inst{Formula(cfg.n_vars, cfg.k, std::move(flat)), std::move(root), e_target};
  if (energy(inst.formula, inst.root) != e_target)
    throw std::logic_error("gen_planted_energy: planted energy invariant violated");
  return inst;
}

RejectionSample sample_psat_rejection(const GenConfig& cfg, uint64_t max_attempts) {
  cfg.validate();
  if (cfg.n_vars > kOracleMaxVars)
    throw std::invalid_argument("sample_psat_rejection: N exceeds the oracle cap");
  GenConfig draw = cfg;
  draw.dist = Dist::kUniform;
  for (uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    draw.seed = derive_seed(cfg.seed, attempt);
    Formula f = gen_uniform(draw);
    if (is_satisfiable(f)) return {std::move(f), attempt + 1};
  }
  return {std::nullopt, max_attempts};
}

DimacsMeta instance_meta(const GenConfig& cfg) {
  DimacsMeta meta;
  meta.k = cfg.k;
  meta.seed = cfg.seed;
  meta.rng = Rng::kAlgorithm;
  return meta;
}

DimacsMeta instance_meta(const GenConfig& cfg, const PlantedInstance& inst) {
  DimacsMeta meta = instance_meta(cfg);
  meta.root = inst.root;
  meta.planted_energy = inst.planted_energy;
  return meta;
}

}  // namespace warpsat
