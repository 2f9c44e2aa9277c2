#include "warpsat/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "warpsat/oracle.hpp"
#include "warpsat/rng.hpp"
#include "warpsat/theory.hpp"

namespace warpsat {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void parallel_for(uint64_t count, uint32_t jobs, const std::function<void(uint64_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<uint64_t> next{0};
  auto worker = [&] {
    for (uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
  };
  std::vector<std::thread> pool;
  const uint32_t n_threads = std::min<uint64_t>(jobs, count);
  pool.reserve(n_threads);
  for (uint32_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct MeanAcc {
  double sum = 0.0, sum_sq = 0.0;
  uint64_t n = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / n : kNan; }
  double se() const {
    if (n < 2) return kNan;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1));
    return std::sqrt(var / n);
  }
};

}  // namespace

std::vector<SweepRecord> finite_energy_sweep(const SweepConfig& cfg,
                                             std::vector<TrialRecord>* details) {
  if (cfg.trials < 1) throw std::invalid_argument("finite_energy_sweep: trials must be >= 1");
  const uint64_t total = static_cast<uint64_t>(cfg.e_list.size()) * cfg.trials;
  std::vector<TrialRecord> records(total);

  parallel_for(total, cfg.jobs, [&](uint64_t g) {
    const uint32_t e = cfg.e_list[g / cfg.trials];
    const uint64_t instance_seed = derive_seed(cfg.master_seed, g);

    GenConfig gen;
    gen.n_vars = cfg.n_vars;
    gen.k = cfg.k;
    gen.n_clauses = GenConfig::clauses_for_ratio(cfg.n_vars, cfg.alpha);
    gen.seed = instance_seed;
    gen.dist = Dist::kPlantedEnergy;
    gen.planted_energy = e;

    const auto t0 = std::chrono::steady_clock::now();
    PlantedInstance inst = gen_planted_energy(gen);
    WpOutcome run = wp_run(inst.formula, derive_seed(instance_seed, 1), cfg.wp.max_iters);
    CompletionResult completed = residual_optimize(
        inst.formula, run.partial, derive_seed(instance_seed, 2), cfg.wp.residual);
    const auto t1 = std::chrono::steady_clock::now();

    uint32_t assigned = 0, agree = 0;
    for (uint32_t v = 0; v < cfg.n_vars; ++v) {
      if (run.partial[v] == Value::kUnset) continue;
      ++assigned;
      agree += run.partial[v] == inst.root[v];
    }

    TrialRecord& rec = records[g];
    rec.e = e;
    rec.seed = instance_seed;
    rec.converged = run.converged;
    rec.iterations = run.iterations;
    rec.assigned = assigned;
    rec.unassigned = cfg.n_vars - assigned;
    rec.agree_with_root = assigned ? static_cast<double>(agree) / assigned : kNan;
    rec.final_energy = completed.energy_value;
    rec.verdict = completed.energy_value == 0 ? Verdict::kSat : Verdict::kUnsatDeclared;
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  });

  std::vector<SweepRecord> out;
  out.reserve(cfg.e_list.size());
  for (size_t ei = 0; ei < cfg.e_list.size(); ++ei) {
    const uint32_t e = cfg.e_list[ei];
    MeanAcc iters, unassigned, agree, gap;
    uint32_t converged = 0;
    for (uint32_t t = 0; t < cfg.trials; ++t) {
      const TrialRecord& rec = records[ei * cfg.trials + t];
      if (!rec.converged) continue;
      ++converged;
      iters.add(static_cast<double>(rec.iterations));
      unassigned.add(static_cast<double>(rec.unassigned));
      if (!std::isnan(rec.agree_with_root)) agree.add(rec.agree_with_root);
      gap.add(std::abs(static_cast<double>(rec.final_energy) - static_cast<double>(e)));
    }
    const double rate = static_cast<double>(converged) / cfg.trials;
    SweepRecord rec{};
    rec.e = e;
    rec.trials = cfg.trials;
    rec.converged_trials = converged;
    rec.convergence_rate = rate;
    rec.se_convergence_rate = std::sqrt(rate * (1.0 - rate) / cfg.trials);
    rec.mean_iterations = iters.mean();
    rec.se_iterations = iters.se();
    rec.mean_unassigned = unassigned.mean();
    rec.se_unassigned = unassigned.se();
    rec.mean_agree_with_root = agree.mean();
    rec.se_agree_with_root = agree.se();
    rec.mean_final_energy_gap = gap.mean();
    rec.se_final_energy_gap = gap.se();
    out.push_back(rec);
  }
  if (details) *details = std::move(records);
  return out;
}

namespace {

GenConfig ensemble_gen(const EnsembleConfig& cfg, uint64_t instance) {
  GenConfig gen;
  gen.n_vars = cfg.n_vars;
  gen.k = cfg.k;
  gen.n_clauses = GenConfig::clauses_for_ratio(cfg.n_vars, cfg.alpha);
  gen.seed = derive_seed(cfg.seed, instance);
  gen.dist = Dist::kPlanted;
  return gen;
}

}  // namespace

FieldStats field_statistics(const EnsembleConfig& cfg) {
  if (cfg.instances < 1) throw std::invalid_argument("field_statistics: need instances >= 1");

  std::vector<std::map<int64_t, uint64_t>> counts(cfg.instances);
  std::vector<double> zero_frac(cfg.instances, 0.0);
  parallel_for(cfg.instances, cfg.jobs, [&](uint64_t i) {
    PlantedInstance inst = gen_planted(ensemble_gen(cfg, i));
    uint64_t zeros = 0;
    for (uint32_t v = 0; v < cfg.n_vars; ++v) {
      const int64_t z = flip_field(inst.formula, inst.root, v);
      counts[i][z]++;
      zeros += z == 0;
    }
    zero_frac[i] = static_cast<double>(zeros) / cfg.n_vars;
  });

  std::map<int64_t, uint64_t> merged;
  for (const auto& c : counts)
    for (auto [z, n] : c) merged[z] += n;
  const uint64_t samples = static_cast<uint64_t>(cfg.instances) * cfg.n_vars;

  FieldStats out;
  out.samples = samples;
  for (auto [z, n] : merged) out.histogram[z] = static_cast<double>(n) / samples;

  const auto plant = theory::planted_field_dist(static_cast<int>(cfg.k), cfg.alpha);
  double tv = 0.0;
  for (int n = -plant.n_max(); n <= plant.n_max(); ++n) {
    auto it = out.histogram.find(n);
    const double emp = it == out.histogram.end() ? 0.0 : it->second;
    tv += std::abs(emp - plant.at(n));
  }
  for (const auto& [z, freq] : out.histogram)
    if (std::abs(z) > plant.n_max()) tv += freq;
  out.tv_distance = 0.5 * (tv + plant.tail);

  MeanAcc zf;
  for (double f : zero_frac) zf.add(f);
  out.zero_field_fraction = zf.mean();
  out.se_zero_field_fraction = zf.se();
  out.theory_zero = std::exp(-theory::gamma_large_alpha(static_cast<int>(cfg.k), cfg.alpha));
  return out;
}

BiasStats bias_statistics(const EnsembleConfig& cfg) {
  if (cfg.instances < 1) throw std::invalid_argument("bias_statistics: need instances >= 1");

  std::vector<MeanAcc> acc_true(cfg.instances), acc_false(cfg.instances);
  parallel_for(cfg.instances, cfg.jobs, [&](uint64_t i) {
    PlantedInstance inst = gen_planted(ensemble_gen(cfg, i));
    for (uint32_t v = 0; v < cfg.n_vars; ++v) {
      const auto occ = occurrences(inst.formula, v);
      const uint32_t deg = occ.ell_plus + occ.ell_minus;
      if (deg == 0) continue;
      const double b =
          (static_cast<double>(occ.ell_plus) - occ.ell_minus) / static_cast<double>(deg);
      (inst.root[v] == Value::kTrue ? acc_true[i] : acc_false[i]).add(b);
    }
  });

  MeanAcc pooled_true, pooled_false;
  for (uint32_t i = 0; i < cfg.instances; ++i) {
    pooled_true.sum += acc_true[i].sum;
    pooled_true.sum_sq += acc_true[i].sum_sq;
    pooled_true.n += acc_true[i].n;
    pooled_false.sum += acc_false[i].sum;
    pooled_false.sum_sq += acc_false[i].sum_sq;
    pooled_false.n += acc_false[i].n;
  }
  BiasStats out;
  out.bias_root_true = pooled_true.mean();
  out.se_root_true = pooled_true.se();
  out.bias_root_false = pooled_false.mean();
  out.se_root_false = pooled_false.se();
  out.theory = 1.0 / (std::ldexp(1.0, static_cast<int>(cfg.k)) - 1.0);
  out.n_root_true = pooled_true.n;
  out.n_root_false = pooled_false.n;
  return out;
}

ValidationReport oracle_validation(const ValidationConfig& cfg) {
  static constexpr double kAlphas[] = {2.0, 4.0, 8.0, 10.0};
  ValidationReport report{};
  report.instances = cfg.instances;

  for (uint32_t i = 0; i < cfg.instances; ++i) {
    const uint64_t seed_i = derive_seed(cfg.seed, i);
    GenConfig gen;
    gen.n_vars = 10 + (i % 7);  // 10..16
    gen.k = 3;
    gen.seed = seed_i;
    const double alpha = kAlphas[(i / 2) % 4];
    gen.n_clauses = GenConfig::clauses_for_ratio(gen.n_vars, alpha);

    Formula f = [&] {
      if (i % 2 == 0) {
        gen.dist = Dist::kUniform;
        return gen_uniform(gen);
      }
      gen.dist = Dist::kPlanted;
      return gen_planted(gen).formula;
    }();

    const Decision decision = wp_decide(f, derive_seed(seed_i, 1));
    const GroundTruth truth = enumerate_ground_states(f, 1);

    if (decision.verdict == Verdict::kSat) {
      ++report.sat_declared;
      if (truth.e0 != 0 || energy(f, decision.witness) != 0)
        ++report.constructiveness_violations;
    }
    if (decision.final_energy < truth.e0) ++report.bound_violations;
  }

  // SAT-conditioned field statistics via rejection sampling at N = 12.
  MeanAcc zero_frac;
  GenConfig rej;
  rej.n_vars = 12;
  rej.k = 3;
  rej.n_clauses = GenConfig::clauses_for_ratio(rej.n_vars, 10.0);
  rej.dist = Dist::kUniform;
  uint64_t budget = cfg.satcond_max_draws;
  for (uint32_t s = 0; s < cfg.satcond_targets && budget > 0; ++s) {
    rej.seed = derive_seed(cfg.seed, 0xC0FDULL + s);
    const RejectionSample sample = sample_psat_rejection(rej, budget);
    if (sample.exhausted()) break;
    budget -= sample.attempts;
    zero_frac.add(exact_fields(*sample.formula).zero_field_fraction);
  }
  report.satcond_formulas = static_cast<uint32_t>(zero_frac.n);
  report.satcond_zero_field_fraction = zero_frac.mean();
  return report;
}

}  // namespace warpsat
