#include "doctest.h"
#include "warpsat/dimacs.hpp"
#include "warpsat/generators.hpp"

using namespace warpsat;

TEST_CASE("minimal file parses to a single positive clause") {
  auto file = read_dimacs_string("p cnf 3 1\n1 2 3 0\n");
  CHECK(file.formula.n_vars() == 3);
  CHECK(file.formula.k() == 3);
  CHECK(file.formula.n_clauses() == 1);
  auto cl = file.formula.clause(0);
  for (int j = 0; j < 3; ++j) {
    CHECK(cl[j].var == static_cast<uint32_t>(j));
    CHECK(cl[j].sign == 1);
  }
}

TEST_CASE("seeded planted instance round-trips bit-exactly") {
  GenConfig cfg{40, 3, 160, 77, Dist::kPlanted, 0};
  PlantedInstance inst = gen_planted(cfg);
  DimacsMeta meta = instance_meta(cfg, inst);
  const std::string text = write_dimacs_string(inst.formula, meta);

  auto file = read_dimacs_string(text);
  CHECK(file.formula == inst.formula);
  REQUIRE(file.meta.root.has_value());
  CHECK(*file.meta.root == inst.root);
  CHECK(file.meta.seed == cfg.seed);
  CHECK(file.meta.planted_energy == uint64_t{0});

  // write(read(write(f))) is the identity on the text itself
  CHECK(write_dimacs_string(file.formula, file.meta) == text);
}

TEST_CASE("unknown comments survive a round trip") {
  const std::string text = "c k 3\nc generated by hand\np cnf 3 1\n-1 2 -3 0\n";
  auto file = read_dimacs_string(text);
  REQUIRE(file.meta.other_comments.size() == 1);
  CHECK(file.meta.other_comments[0] == "c generated by hand");
  CHECK(write_dimacs_string(file.formula, file.meta) == text);
}

TEST_CASE("each malformed input raises its own error kind") {
  auto kind_of = [](const std::string& text) {
    try {
      read_dimacs_string(text);
    } catch (const DimacsError& e) {
      return e.kind;
    }
    return DimacsErrorKind::kIo;  // sentinel: parse unexpectedly succeeded
  };

  CHECK(kind_of("p dnf 3 1\n1 2 3 0\n") == DimacsErrorKind::kBadHeader);
  CHECK(kind_of("p cnf 3\n1 2 3 0\n") == DimacsErrorKind::kBadHeader);
  CHECK(kind_of("p cnf 3 2\n1 2 3 0\n") == DimacsErrorKind::kBadHeader);  // clause count
  CHECK(kind_of("p cnf 3 1\n1 2 4 0\n") == DimacsErrorKind::kBadLiteral);
  CHECK(kind_of("c k 3\np cnf 3 1\n1 2 0\n") == DimacsErrorKind::kBadWidth);
  CHECK(kind_of("p cnf 4 2\n1 2 3 0\n1 2 0\n") == DimacsErrorKind::kBadWidth);
  CHECK(kind_of("p cnf 3 1\n1 1 2 0\n") == DimacsErrorKind::kDuplicateVar);
  CHECK(kind_of("c root 10\np cnf 3 1\n1 2 3 0\n") == DimacsErrorKind::kBadMeta);
  CHECK(kind_of("c k x\np cnf 3 1\n1 2 3 0\n") == DimacsErrorKind::kBadMeta);
}

TEST_CASE("width inference uses the first clause when no meta is given") {
  auto file = read_dimacs_string("p cnf 4 2\n1 2 0\n-3 4 0\n");
  CHECK(file.formula.k() == 2);
}

TEST_CASE("read_dimacs_file reports missing files") {
  CHECK_THROWS_AS(read_dimacs_file("/nonexistent/definitely_not_here.cnf"), DimacsError);
}
