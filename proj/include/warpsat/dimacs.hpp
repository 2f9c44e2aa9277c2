#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "warpsat/formula.hpp"

namespace warpsat {

// DIMACS CNF extended with metadata comments before the header:
//   c k <K>
//   c seed <u64>
//   c rng <algorithm name>
//   c root <bitstring of length N, '1' = TRUE>
//   c planted_energy <E>
// Literals use the DIMACS convention (1-based, negative = negated), clauses
// terminated by 0. Unknown comment lines survive a read/write round trip.
struct DimacsMeta {
  std::optional<uint32_t> k;
  std::optional<uint64_t> seed;
  std::optional<std::string> rng;
  std::optional<Assignment> root;
  std::optional<uint64_t> planted_energy;
  std::vector<std::string> other_comments;

  friend bool operator==(const DimacsMeta&, const DimacsMeta&) = default;
};

struct DimacsFile {
  Formula formula;
  DimacsMeta meta;
};

enum class DimacsErrorKind {
  kBadHeader,
  kBadLiteral,
  kBadWidth,
  kDuplicateVar,
  kBadMeta,
  kIo,
};

class DimacsError : public std::runtime_error {
 public:
  DimacsError(DimacsErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  DimacsErrorKind kind;
};

DimacsFile read_dimacs(std::istream& in);
DimacsFile read_dimacs_string(const std::string& text);
DimacsFile read_dimacs_file(const std::string& path);

void write_dimacs(std::ostream& out, const Formula& f, const DimacsMeta& meta = {});
std::string write_dimacs_string(const Formula& f, const DimacsMeta& meta = {});
void write_dimacs_file(const std::string& path, const Formula& f, const DimacsMeta& meta = {});

}  // namespace warpsat
