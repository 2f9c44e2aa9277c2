#include "warpsat/wp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "warpsat/oracle.hpp"
#include "warpsat/rng.hpp"

namespace warpsat {

WpState wp_init(const Formula& f, uint64_t seed) {
  WpState state;
  state.warnings.resize(static_cast<size_t>(f.n_clauses()) * f.k());
  Rng rng(seed);
  for (auto& u : state.warnings) u = rng.coin() ? 1 : 0;
  return state;
}

uint64_t wp_sweep(const Formula& f, WpState& state) {
  const uint32_t k = f.k();
  const uint32_t m = f.n_clauses();

  // Total field per variable; the cavity field for edge (a, j) is the total
  // minus that edge's own contribution.
  std::vector<int64_t> total(f.n_vars(), 0);
  for (uint32_t a = 0; a < m; ++a) {
    auto cl = f.clause(a);
    const uint8_t* u = state.warnings.data() + static_cast<size_t>(a) * k;
    for (uint32_t j = 0; j < k; ++j)
      if (u[j]) total[cl[j].var] += cl[j].sign;
  }

  std::vector<uint8_t> next(state.warnings.size());
  uint64_t changed = 0;
  std::vector<uint8_t> against(k);
  for (uint32_t a = 0; a < m; ++a) {
    auto cl = f.clause(a);
    const uint8_t* u = state.warnings.data() + static_cast<size_t>(a) * k;
    uint8_t* nu = next.data() + static_cast<size_t>(a) * k;
    uint32_t n_against = 0;
    for (uint32_t j = 0; j < k; ++j) {
      const int64_t cavity = total[cl[j].var] - (u[j] ? cl[j].sign : 0);
      against[j] = cl[j].sign * cavity < 0 ? 1 : 0;
      n_against += against[j];
    }
    for (uint32_t j = 0; j < k; ++j) {
      nu[j] = (n_against - against[j]) == k - 1 ? 1 : 0;
      changed += nu[j] != u[j];
    }
  }
  state.warnings.swap(next);
  state.iterations++;
  state.changed_last_sweep = changed;
  return changed;
}

int64_t wp_cutoff(uint32_t n_vars) {
  const double ln_n = n_vars > 1 ? std::log(static_cast<double>(n_vars)) : 0.0;
  return std::max<int64_t>(10, static_cast<int64_t>(std::ceil(2.0 * ln_n)));
}

namespace {

std::vector<int64_t> local_fields_of(const Formula& f, const WpState& state) {
  std::vector<int64_t> h(f.n_vars(), 0);
  const uint32_t k = f.k();
  for (uint32_t a = 0; a < f.n_clauses(); ++a) {
    auto cl = f.clause(a);
    const uint8_t* u = state.warnings.data() + static_cast<size_t>(a) * k;
    for (uint32_t j = 0; j < k; ++j)
      if (u[j]) h[cl[j].var] += cl[j].sign;
  }
  return h;
}

}  // namespace

WpOutcome wp_run(const Formula& f, uint64_t seed, int64_t max_iters) {
  if (max_iters < 0) max_iters = wp_cutoff(f.n_vars());
  if (max_iters < 1) throw std::invalid_argument("wp_run: max_iters must be at least 1");

  WpState state = wp_init(f, seed);
  WpOutcome out;
  if (state.warnings.empty()) {
    out.converged = true;
    out.iterations = 0;
  } else {
    for (int64_t t = 1; t <= max_iters; ++t) {
      if (wp_sweep(f, state) == 0) {
        out.converged = true;
        out.iterations = static_cast<uint64_t>(t);
        break;
      }
    }
    if (!out.converged) out.iterations = static_cast<uint64_t>(max_iters);
  }

  out.local_fields = local_fields_of(f, state);
  out.partial.resize(f.n_vars());
  for (uint32_t v = 0; v < f.n_vars(); ++v) {
    if (out.local_fields[v] > 0)
      out.partial[v] = Value::kTrue;
    else if (out.local_fields[v] < 0)
      out.partial[v] = Value::kFalse;
    else
      out.partial[v] = Value::kUnset;
  }
  return out;
}

namespace {

// Greedy descent on one component: flip the best strictly-improving variable
// until a local minimum, best assignment over `restarts` random starts.
uint64_t greedy_component(const detail::SmallCnf& cnf, Rng& rng, const ResidualParams& params,
                          std::vector<uint8_t>& best_bits) {
  const uint32_t n = cnf.n_vars;
  const uint32_t m = static_cast<uint32_t>(cnf.clauses.size());
  std::vector<std::vector<std::pair<uint32_t, bool>>> adj(n);  // (clause, negated)
  std::vector<uint32_t> width(m);
  for (uint32_t c = 0; c < m; ++c) {
    width[c] = static_cast<uint32_t>(cnf.clauses[c].size());
    for (const Literal& lit : cnf.clauses[c]) adj[lit.var].push_back({c, lit.sign < 0});
  }

  uint64_t best_energy = std::numeric_limits<uint64_t>::max();
  std::vector<uint8_t> bits(n);
  std::vector<uint32_t> false_count(m);
  const uint32_t restarts = std::max<uint32_t>(1, params.restarts);
  for (uint32_t r = 0; r < restarts; ++r) {
    for (auto& b : bits) b = rng.coin() ? 1 : 0;
    std::fill(false_count.begin(), false_count.end(), 0);
    uint64_t e = 0;
    for (uint32_t c = 0; c < m; ++c) {
      for (const Literal& lit : cnf.clauses[c])
        false_count[c] += (bits[lit.var] != 0) == (lit.sign < 0);
      if (false_count[c] == width[c]) ++e;
    }

    const uint64_t budget = params.steps_per_var * std::max<uint64_t>(1, n);
    for (uint64_t step = 0; step < budget; ++step) {
      // delta(v) = clauses broken - clauses fixed when flipping v
      int64_t best_delta = 0;
      uint32_t best_var = n;
      for (uint32_t v = 0; v < n; ++v) {
        int64_t delta = 0;
        for (auto [c, neg] : adj[v]) {
          const bool lit_false = (bits[v] != 0) == neg;
          if (lit_false) {
            if (false_count[c] == width[c]) --delta;  // repairs a violated clause
          } else {
            if (false_count[c] == width[c] - 1) ++delta;  // was the sole support
          }
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_var = v;
        }
      }
      if (best_var == n) break;  // local minimum
      bits[best_var] ^= 1;
      for (auto [c, neg] : adj[best_var]) {
        const bool lit_false = (bits[best_var] != 0) == neg;
        if (lit_false) {
          if (++false_count[c] == width[c]) ++e;
        } else {
          if (false_count[c]-- == width[c]) --e;
        }
      }
      if (e == 0) break;
    }
    if (e < best_energy) {
      best_energy = e;
      best_bits = bits;
      if (e == 0) break;
    }
  }
  return best_energy;
}

}  // namespace

CompletionResult residual_optimize(const Formula& f, const Assignment& partial, uint64_t seed,
                                   const ResidualParams& params) {
  if (partial.size() != f.n_vars())
    throw std::invalid_argument("residual_optimize: partial assignment has wrong length");

  Assignment x = partial;

  // Simplify: drop satisfied clauses, shrink the rest to their unset literals.
  std::vector<std::vector<Literal>> residual;
  for (uint32_t a = 0; a < f.n_clauses(); ++a) {
    bool satisfied = false;
    std::vector<Literal> rest;
    for (const Literal& lit : f.clause(a)) {
      if (x[lit.var] == Value::kUnset)
        rest.push_back(lit);
      else if (literal_true(lit, x[lit.var])) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied && !rest.empty()) residual.push_back(std::move(rest));
  }

  // Union-find over the unset variables touched by residual clauses.
  std::vector<uint32_t> parent(f.n_vars());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& cl : residual)
    for (size_t i = 1; i < cl.size(); ++i) {
      uint32_t a = find(cl[0].var), b = find(cl[i].var);
      if (a != b) parent[b] = a;
    }

  uint64_t residual_vars = 0;
  for (uint32_t v = 0; v < f.n_vars(); ++v)
    if (x[v] == Value::kUnset) ++residual_vars;

  std::vector<uint8_t> in_residual(f.n_vars(), 0);
  for (const auto& cl : residual)
    for (const Literal& lit : cl) in_residual[lit.var] = 1;

  constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> comp_id(f.n_vars(), kNone);
  std::vector<std::vector<uint32_t>> comp_vars;
  for (uint32_t v = 0; v < f.n_vars(); ++v) {
    if (!in_residual[v]) continue;
    const uint32_t root = find(v);
    if (comp_id[root] == kNone) {
      comp_id[root] = static_cast<uint32_t>(comp_vars.size());
      comp_vars.emplace_back();
    }
    comp_vars[comp_id[root]].push_back(v);
  }

  std::vector<std::vector<uint32_t>> comp_clauses(comp_vars.size());
  for (uint32_t idx = 0; idx < residual.size(); ++idx)
    comp_clauses[comp_id[find(residual[idx][0].var)]].push_back(idx);

  Rng rng(seed);
  std::vector<uint32_t> local_index(f.n_vars(), 0);
  for (uint32_t c = 0; c < comp_vars.size(); ++c) {
    auto& vars = comp_vars[c];
    std::sort(vars.begin(), vars.end());
    for (uint32_t i = 0; i < vars.size(); ++i) local_index[vars[i]] = i;

    detail::SmallCnf cnf;
    cnf.n_vars = static_cast<uint32_t>(vars.size());
    for (uint32_t idx : comp_clauses[c]) {
      std::vector<Literal> cl;
      cl.reserve(residual[idx].size());
      for (const Literal& lit : residual[idx]) cl.push_back({local_index[lit.var], lit.sign});
      cnf.clauses.push_back(std::move(cl));
    }

    if (cnf.n_vars <= params.exhaustive_cap) {
      auto best = detail::min_energy(cnf);
      for (uint32_t i = 0; i < vars.size(); ++i)
        x[vars[i]] = (best.mask >> i) & 1u ? Value::kTrue : Value::kFalse;
    } else {
      std::vector<uint8_t> bits;
      greedy_component(cnf, rng, params, bits);
      for (uint32_t i = 0; i < vars.size(); ++i)
        x[vars[i]] = bits[i] ? Value::kTrue : Value::kFalse;
    }
  }

  // Unset variables in no residual clause are free; fix them FALSE.
  for (uint32_t v = 0; v < f.n_vars(); ++v)
    if (x[v] == Value::kUnset) x[v] = Value::kFalse;

  const uint64_t e = energy(f, x);
  return {std::move(x), e, residual_vars, comp_vars.size()};
}

Decision wp_decide(const Formula& f, uint64_t seed, const DecideParams& params) {
  Decision best{};
  best.final_energy = std::numeric_limits<uint64_t>::max();

  const uint32_t attempts = params.restarts + 1;
  for (uint32_t attempt = 0; attempt < attempts; ++attempt) {
    const uint64_t run_seed = attempt == 0 ? seed : derive_seed(seed, attempt);
    WpOutcome run = wp_run(f, run_seed, params.max_iters);
    CompletionResult completed =
        residual_optimize(f, run.partial, derive_seed(run_seed, 0x7265736964ULL), params.residual);
    const uint64_t e = energy(f, completed.assignment);

    if (e < best.final_energy) {
      best.final_energy = e;
      best.iterations = run.iterations;
      best.residual_size = completed.residual_vars;
      best.converged = run.converged;
      best.witness = std::move(completed.assignment);
    }
    if (best.final_energy == 0) break;
  }

  best.verdict = best.final_energy == 0 ? Verdict::kSat : Verdict::kUnsatDeclared;
  return best;
}

}  // namespace warpsat
