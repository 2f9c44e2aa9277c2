#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace warpsat {

enum class Value : int8_t { kFalse = 0, kTrue = 1, kUnset = 2 };

// Truth-value vector over the N variables. kUnset marks variables left free
// by a partial assignment; energies are only defined for total assignments.
using Assignment = std::vector<Value>;

bool is_total(const Assignment& x);

struct Literal {
  uint32_t var;  // 0-based variable index
  int8_t sign;   // +1 if the variable appears unnegated, -1 if negated

  friend bool operator==(const Literal&, const Literal&) = default;
};

// A K-SAT formula over N variables: M clauses of exactly K literals over K
// pairwise-distinct variables. Clauses are kept in generation order and may
// repeat across the formula. Immutable after construction; the
// clause<->variable adjacency index is built eagerly.
class Formula {
 public:
  struct Occurrence {
    uint32_t clause;
    int8_t sign;
  };

  // `flat_literals` holds the M clauses back to back, K literals each.
  // Throws std::invalid_argument on any violated invariant.
  Formula(uint32_t n_vars, uint32_t k, std::vector<Literal> flat_literals);

  static Formula from_clauses(uint32_t n_vars, uint32_t k,
                              const std::vector<std::vector<Literal>>& clauses);

  uint32_t n_vars() const { return n_vars_; }
  uint32_t k() const { return k_; }
  uint32_t n_clauses() const { return n_clauses_; }

  std::span<const Literal> clause(uint32_t a) const {
    return {literals_.data() + static_cast<size_t>(a) * k_, k_};
  }
  std::span<const Literal> literals() const { return literals_; }

  // Every (clause, sign) pair the variable occurs in, in clause order.
  std::span<const Occurrence> adjacency(uint32_t var) const {
    return {adjacency_.data() + adj_offset_[var], adj_offset_[var + 1] - adj_offset_[var]};
  }
  uint32_t degree(uint32_t var) const { return adj_offset_[var + 1] - adj_offset_[var]; }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.n_vars_ == b.n_vars_ && a.k_ == b.k_ && a.literals_ == b.literals_;
  }

 private:
  uint32_t n_vars_;
  uint32_t k_;
  uint32_t n_clauses_;
  std::vector<Literal> literals_;
  std::vector<uint32_t> adj_offset_;
  std::vector<Occurrence> adjacency_;
};

// True iff literal `lit` holds under (total or partially set) value `v`.
inline bool literal_true(Literal lit, Value v) {
  return v != Value::kUnset && (v == Value::kTrue) == (lit.sign > 0);
}

// Number of clauses with all K literals false. Requires a total assignment.
uint64_t energy(const Formula& f, const Assignment& x);

// z_i = energy(x with x_i := FALSE) - energy(x with x_i := TRUE), scanning
// only the clauses containing i. z_i > 0 means TRUE is favored.
int64_t flip_field(const Formula& f, const Assignment& x, uint32_t var);

struct OccurrenceCounts {
  uint32_t ell_plus;   // clauses containing the positive literal
  uint32_t ell_minus;  // clauses containing the negated literal
};

OccurrenceCounts occurrences(const Formula& f, uint32_t var);

// Field measurement of one variable at a reference assignment, together with
// its occurrence counts. |z| <= ell_plus + ell_minus = degree.
struct FieldSample {
  uint32_t var;
  int64_t z;
  uint32_t ell_plus;
  uint32_t ell_minus;
};

FieldSample field_sample(const Formula& f, const Assignment& x, uint32_t var);

}  // namespace warpsat
