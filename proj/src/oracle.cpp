#include "warpsat/oracle.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace warpsat {

namespace detail {

namespace {

SmallCnf to_small_cnf(const Formula& f) {
  SmallCnf cnf;
  cnf.n_vars = f.n_vars();
  cnf.clauses.reserve(f.n_clauses());
  for (uint32_t a = 0; a < f.n_clauses(); ++a) {
    auto cl = f.clause(a);
    cnf.clauses.emplace_back(cl.begin(), cl.end());
  }
  return cnf;
}

}  // namespace

void gray_scan(const SmallCnf& cnf, const std::function<bool(uint64_t, uint64_t)>& visit) {
  const uint32_t n = cnf.n_vars;
  if (n > kOracleMaxVars) throw std::invalid_argument("gray_scan: too many variables");

  struct Occ {
    uint32_t clause;
    bool negated;
  };
  std::vector<std::vector<Occ>> adj(n);
  std::vector<uint32_t> false_count(cnf.clauses.size(), 0);
  std::vector<uint32_t> width(cnf.clauses.size(), 0);
  uint64_t e = 0;
  for (uint32_t c = 0; c < cnf.clauses.size(); ++c) {
    width[c] = static_cast<uint32_t>(cnf.clauses[c].size());
    for (const Literal& lit : cnf.clauses[c]) {
      adj[lit.var].push_back({c, lit.sign < 0});
      if (lit.sign > 0) false_count[c]++;  // all-FALSE start: positive literals are false
    }
    if (false_count[c] == width[c]) ++e;
  }

  uint64_t mask = 0;
  if (!visit(mask, e)) return;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t i = 1; i < total; ++i) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(i));
    mask ^= uint64_t{1} << b;
    const bool now_true = (mask >> b) & 1u;
    for (const Occ& occ : adj[b]) {
      const bool lit_false = now_true == occ.negated;
      if (lit_false) {
        if (++false_count[occ.clause] == width[occ.clause]) ++e;
      } else {
        if (false_count[occ.clause]-- == width[occ.clause]) --e;
      }
    }
    if (!visit(mask, e)) return;
  }
}

SmallMin min_energy(const SmallCnf& cnf) {
  SmallMin best{std::numeric_limits<uint64_t>::max(), 0};
  gray_scan(cnf, [&](uint64_t mask, uint64_t e) {
    if (e < best.e0) {
      best = {e, mask};
      if (e == 0) return false;
    }
    return true;
  });
  return best;
}

}  // namespace detail

namespace {

Assignment mask_to_assignment(uint64_t mask, uint32_t n) {
  Assignment x(n);
  for (uint32_t v = 0; v < n; ++v)
    x[v] = (mask >> v) & 1u ? Value::kTrue : Value::kFalse;
  return x;
}

void require_oracle_size(const Formula& f, const char* who) {
  if (f.n_vars() > kOracleMaxVars)
    throw std::invalid_argument(std::string(who) + ": N = " + std::to_string(f.n_vars()) +
                                " exceeds the exhaustive cap of " +
                                std::to_string(kOracleMaxVars));
}

}  // namespace

GroundTruth enumerate_ground_states(const Formula& f, uint32_t optima_cap) {
  require_oracle_size(f, "enumerate_ground_states");
  auto cnf = detail::to_small_cnf(f);
  uint64_t e0 = std::numeric_limits<uint64_t>::max();
  uint64_t g0 = 0;
  bool truncated = false;
  std::vector<uint64_t> masks;
  detail::gray_scan(cnf, [&](uint64_t mask, uint64_t e) {
    if (e < e0) {
      e0 = e;
      g0 = 1;
      masks.clear();
      truncated = optima_cap == 0;
      if (optima_cap > 0) masks.push_back(mask);
    } else if (e == e0) {
      ++g0;
      if (masks.size() < optima_cap)
        masks.push_back(mask);
      else
        truncated = true;
    }
    return true;
  });
  GroundTruth out{e0, g0, {}, truncated};
  out.optima.reserve(masks.size());
  for (uint64_t m : masks) out.optima.push_back(mask_to_assignment(m, f.n_vars()));
  return out;
}

bool is_satisfiable(const Formula& f) {
  require_oracle_size(f, "is_satisfiable");
  auto cnf = detail::to_small_cnf(f);
  bool sat = false;
  detail::gray_scan(cnf, [&](uint64_t, uint64_t e) {
    if (e == 0) {
      sat = true;
      return false;
    }
    return true;
  });
  return sat;
}

ExactFields exact_fields(const Formula& f) {
  require_oracle_size(f, "exact_fields");
  const uint32_t n = f.n_vars();
  auto cnf = detail::to_small_cnf(f);
  constexpr uint64_t kInf = std::numeric_limits<uint64_t>::max();
  std::vector<uint64_t> min_true(n, kInf), min_false(n, kInf);
  detail::gray_scan(cnf, [&](uint64_t mask, uint64_t e) {
    for (uint32_t v = 0; v < n; ++v) {
      uint64_t& slot = (mask >> v) & 1u ? min_true[v] : min_false[v];
      if (e < slot) slot = e;
    }
    return true;
  });
  ExactFields out;
  out.z.resize(n);
  uint32_t zeros = 0;
  for (uint32_t v = 0; v < n; ++v) {
    out.z[v] = static_cast<int64_t>(min_false[v]) - static_cast<int64_t>(min_true[v]);
    if (out.z[v] == 0) ++zeros;
  }
  out.zero_field_fraction = n == 0 ? 0.0 : static_cast<double>(zeros) / n;
  return out;
}

}  // namespace warpsat
