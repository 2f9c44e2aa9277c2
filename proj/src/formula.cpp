#include "warpsat/formula.hpp"

#include <stdexcept>
#include <string>

namespace warpsat {

bool is_total(const Assignment& x) {
  for (Value v : x)
    if (v == Value::kUnset) return false;
  return true;
}

Formula::Formula(uint32_t n_vars, uint32_t k, std::vector<Literal> flat_literals)
    : n_vars_(n_vars), k_(k), literals_(std::move(flat_literals)) {
  if (k_ == 0) throw std::invalid_argument("formula: clause width must be positive");
  if (literals_.size() % k_ != 0)
    throw std::invalid_argument("formula: literal count is not a multiple of K");
  n_clauses_ = static_cast<uint32_t>(literals_.size() / k_);

  for (uint32_t a = 0; a < n_clauses_; ++a) {
    auto cl = std::span<const Literal>(literals_.data() + static_cast<size_t>(a) * k_, k_);
    for (uint32_t j = 0; j < k_; ++j) {
      if (cl[j].var >= n_vars_)
        throw std::invalid_argument("formula: variable index out of range in clause " +
                                    std::to_string(a));
      if (cl[j].sign != 1 && cl[j].sign != -1)
        throw std::invalid_argument("formula: literal sign must be +1 or -1");
      for (uint32_t l = 0; l < j; ++l)
        if (cl[l].var == cl[j].var)
          throw std::invalid_argument("formula: repeated variable in clause " +
                                      std::to_string(a));
    }
  }

  adj_offset_.assign(static_cast<size_t>(n_vars_) + 1, 0);
  for (const Literal& lit : literals_) adj_offset_[lit.var + 1]++;
  for (uint32_t v = 0; v < n_vars_; ++v) adj_offset_[v + 1] += adj_offset_[v];
  adjacency_.resize(literals_.size());
  std::vector<uint32_t> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
  for (uint32_t a = 0; a < n_clauses_; ++a)
    for (const Literal& lit : clause(a)) adjacency_[cursor[lit.var]++] = {a, lit.sign};
}

Formula Formula::from_clauses(uint32_t n_vars, uint32_t k,
                              const std::vector<std::vector<Literal>>& clauses) {
  std::vector<Literal> flat;
  flat.reserve(clauses.size() * k);
  for (const auto& cl : clauses) {
    if (cl.size() != k)
      throw std::invalid_argument("formula: clause width differs from K");
    flat.insert(flat.end(), cl.begin(), cl.end());
  }
  return Formula(n_vars, k, std::move(flat));
}

uint64_t energy(const Formula& f, const Assignment& x) {
  if (x.size() != f.n_vars() || !is_total(x))
    throw std::invalid_argument("energy: assignment must be total over N variables");
  uint64_t violated = 0;
  for (uint32_t a = 0; a < f.n_clauses(); ++a) {
    bool sat = false;
    for (const Literal& lit : f.clause(a)) {
      if (literal_true(lit, x[lit.var])) {
        sat = true;
        break;
      }
    }
    violated += !sat;
  }
  return violated;
}

int64_t flip_field(const Formula& f, const Assignment& x, uint32_t var) {
  if (var >= f.n_vars()) throw std::invalid_argument("flip_field: variable out of range");
  if (x.size() != f.n_vars() || !is_total(x))
    throw std::invalid_argument("flip_field: assignment must be total");
  // A clause containing `var` decides between the two settings of x_var only
  // when all its other literals are false: violated iff the literal of `var`
  // is false, which for sign +1 happens at x_var=FALSE (contributing +1 to
  // E(FALSE)) and for sign -1 at x_var=TRUE.
  int64_t z = 0;
  for (const auto& occ : f.adjacency(var)) {
    bool others_false = true;
    for (const Literal& lit : f.clause(occ.clause)) {
      if (lit.var == var) continue;
      if (literal_true(lit, x[lit.var])) {
        others_false = false;
        break;
      }
    }
    if (others_false) z += occ.sign;
  }
  return z;
}

OccurrenceCounts occurrences(const Formula& f, uint32_t var) {
  if (var >= f.n_vars()) throw std::invalid_argument("occurrences: variable out of range");
  OccurrenceCounts counts{0, 0};
  for (const auto& occ : f.adjacency(var)) {
    if (occ.sign > 0)
      counts.ell_plus++;
    else
      counts.ell_minus++;
  }
  return counts;
}

FieldSample field_sample(const Formula& f, const Assignment& x, uint32_t var) {
  OccurrenceCounts counts = occurrences(f, var);
  return {var, flip_field(f, x, var), counts.ell_plus, counts.ell_minus};
}

}  // namespace warpsat
