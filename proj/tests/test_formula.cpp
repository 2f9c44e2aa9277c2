#include "doctest.h"
#include "warpsat/formula.hpp"
#include "warpsat/generators.hpp"
#include "warpsat/rng.hpp"

#include <cstdlib>

using namespace warpsat;

namespace {

// Independent, index-free scorer: walks the clause list directly without
// touching the adjacency structure.
uint64_t naive_energy(const Formula& f, const Assignment& x) {
  uint64_t violated = 0;
  for (uint32_t a = 0; a < f.n_clauses(); ++a) {
    bool all_false = true;
    for (const Literal& lit : f.clause(a)) {
      const bool var_true = x[lit.var] == Value::kTrue;
      if (var_true == (lit.sign > 0)) all_false = false;
    }
    violated += all_false;
  }
  return violated;
}

Assignment random_total(uint32_t n, Rng& rng) {
  Assignment x(n);
  for (auto& v : x) v = rng.coin() ? Value::kTrue : Value::kFalse;
  return x;
}

}  // namespace

TEST_CASE("energy of an empty formula is zero") {
  Formula f(5, 3, {});
  Assignment x(5, Value::kFalse);
  CHECK(energy(f, x) == 0);
}

TEST_CASE("single positive clause violated by all-FALSE") {
  Formula f = Formula::from_clauses(3, 3, {{{0, 1}, {1, 1}, {2, 1}}});
  Assignment x(3, Value::kFalse);
  CHECK(energy(f, x) == 1);
  x[1] = Value::kTrue;
  CHECK(energy(f, x) == 0);
}

TEST_CASE("energy matches the naive scorer on random instances") {
  Rng rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    GenConfig cfg{10, 3, 40, rng.next_u64(), Dist::kUniform, 0};
    Formula f = gen_uniform(cfg);
    for (int t = 0; t < 10; ++t) {
      Assignment x = random_total(10, rng);
      CHECK(energy(f, x) == naive_energy(f, x));
    }
  }
}

TEST_CASE("energy requires a total assignment") {
  Formula f = Formula::from_clauses(3, 3, {{{0, 1}, {1, 1}, {2, 1}}});
  Assignment x(3, Value::kFalse);
  x[2] = Value::kUnset;
  CHECK_THROWS_AS(energy(f, x), std::invalid_argument);
}

TEST_CASE("flip field of an isolated variable is zero") {
  Formula f = Formula::from_clauses(4, 3, {{{0, 1}, {1, 1}, {2, 1}}});
  Assignment x(4, Value::kFalse);
  CHECK(flip_field(f, x, 3) == 0);
}

TEST_CASE("flip field on the single-clause example") {
  // f = (x1 or x2 or x3), x = (T, F, F): flipping x1 to FALSE violates it.
  Formula f = Formula::from_clauses(3, 3, {{{0, 1}, {1, 1}, {2, 1}}});
  Assignment x = {Value::kTrue, Value::kFalse, Value::kFalse};
  CHECK(flip_field(f, x, 0) == 1);
  CHECK_THROWS_AS(flip_field(f, x, 3), std::invalid_argument);
}

TEST_CASE("flip field equals the energy difference of forced settings") {
  Rng rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    const uint32_t n = 5 + static_cast<uint32_t>(rng.below(8));  // 5..12
    GenConfig cfg{n, 3, 4 * n, rng.next_u64(), Dist::kUniform, 0};
    Formula f = gen_uniform(cfg);
    Assignment x = random_total(n, rng);
    for (uint32_t v = 0; v < n; ++v) {
      Assignment lo = x, hi = x;
      lo[v] = Value::kFalse;
      hi[v] = Value::kTrue;
      CHECK(flip_field(f, x, v) ==
            static_cast<int64_t>(energy(f, lo)) - static_cast<int64_t>(energy(f, hi)));
    }
  }
}

TEST_CASE("flip field on planted instances counts root-violating clauses") {
  GenConfig cfg{50, 3, 500, 99, Dist::kPlanted, 0};
  PlantedInstance inst = gen_planted(cfg);
  for (uint32_t v = 0; v < 50; ++v) {
    // Direct clause scan: clauses that become violated when v is flipped
    // from the root give |z|; the sign tracks the root value.
    Assignment flipped = inst.root;
    flipped[v] = flipped[v] == Value::kTrue ? Value::kFalse : Value::kTrue;
    const int64_t broken = static_cast<int64_t>(energy(inst.formula, flipped));
    const int64_t expect = inst.root[v] == Value::kTrue ? broken : -broken;
    CHECK(flip_field(inst.formula, inst.root, v) == expect);
  }
}

TEST_CASE("occurrences split by polarity") {
  Formula f = Formula::from_clauses(
      4, 3, {{{0, 1}, {1, 1}, {2, 1}}, {{0, -1}, {1, 1}, {3, 1}}});
  auto c0 = occurrences(f, 0);
  CHECK(c0.ell_plus == 1);
  CHECK(c0.ell_minus == 1);
  auto c2 = occurrences(f, 2);
  CHECK(c2.ell_plus == 1);
  CHECK(c2.ell_minus == 0);
}

TEST_CASE("isolated variable has no occurrences") {
  Formula f = Formula::from_clauses(4, 3, {{{0, 1}, {1, 1}, {2, 1}}});
  auto c = occurrences(f, 3);
  CHECK(c.ell_plus == 0);
  CHECK(c.ell_minus == 0);
}

TEST_CASE("occurrence totals sum to K*M") {
  GenConfig cfg{30, 4, 120, 5, Dist::kUniform, 0};
  Formula f = gen_uniform(cfg);
  uint64_t total = 0;
  for (uint32_t v = 0; v < f.n_vars(); ++v) {
    auto c = occurrences(f, v);
    CHECK(c.ell_plus + c.ell_minus == f.degree(v));
    total += c.ell_plus + c.ell_minus;
  }
  CHECK(total == uint64_t{4} * 120);
}

TEST_CASE("field_sample bundles field and occurrence bounds") {
  GenConfig cfg{20, 3, 100, 3, Dist::kPlanted, 0};
  PlantedInstance inst = gen_planted(cfg);
  for (uint32_t v = 0; v < 20; ++v) {
    FieldSample s = field_sample(inst.formula, inst.root, v);
    CHECK(s.ell_plus + s.ell_minus == inst.formula.degree(v));
    CHECK(std::llabs(s.z) <= inst.formula.degree(v));
  }
}

TEST_CASE("formula construction rejects bad input") {
  CHECK_THROWS_AS(Formula::from_clauses(3, 3, {{{0, 1}, {0, -1}, {2, 1}}}),
                  std::invalid_argument);  // repeated variable
  CHECK_THROWS_AS(Formula::from_clauses(3, 3, {{{0, 1}, {1, 1}, {5, 1}}}),
                  std::invalid_argument);  // out of range
  CHECK_THROWS_AS(Formula::from_clauses(3, 3, {{{0, 1}, {1, 1}}}),
                  std::invalid_argument);  // wrong width
  CHECK_THROWS_AS(Formula::from_clauses(3, 3, {{{0, 1}, {1, 2}, {2, 1}}}),
                  std::invalid_argument);  // bad sign
}

TEST_CASE("adjacency reconstructs the clause list") {
  GenConfig cfg{25, 3, 100, 11, Dist::kUniform, 0};
  Formula f = gen_uniform(cfg);
  std::vector<std::vector<Literal>> rebuilt(f.n_clauses());
  for (uint32_t v = 0; v < f.n_vars(); ++v)
    for (const auto& occ : f.adjacency(v))
      rebuilt[occ.clause].push_back({v, occ.sign});
  for (uint32_t a = 0; a < f.n_clauses(); ++a) {
    auto cl = f.clause(a);
    REQUIRE(rebuilt[a].size() == cl.size());
    for (const Literal& lit : cl) {
      bool found = false;
      for (const Literal& r : rebuilt[a]) found |= r == lit;
      CHECK(found);
    }
  }
}
