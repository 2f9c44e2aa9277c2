#include "warpsat/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace warpsat {

namespace {

bool parse_u64(const std::string& s, uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

void parse_comment(const std::string& line, DimacsMeta& meta) {
  // line starts with 'c'; keyed comments are "c <key> <value>"
  auto toks = split_ws(line);
  auto fail = [&](const char* what) {
    throw DimacsError(DimacsErrorKind::kBadMeta, std::string(what) + ": " + line);
  };
  if (toks.size() == 3 && toks[1] == "k") {
    uint64_t v;
    if (!parse_u64(toks[2], v) || v == 0) fail("bad k comment");
    meta.k = static_cast<uint32_t>(v);
  } else if (toks.size() == 3 && toks[1] == "seed") {
    uint64_t v;
    if (!parse_u64(toks[2], v)) fail("bad seed comment");
    meta.seed = v;
  } else if (toks.size() == 3 && toks[1] == "planted_energy") {
    uint64_t v;
    if (!parse_u64(toks[2], v)) fail("bad planted_energy comment");
    meta.planted_energy = v;
  } else if (toks.size() == 3 && toks[1] == "root") {
    Assignment root;
    root.reserve(toks[2].size());
    for (char c : toks[2]) {
      if (c == '0')
        root.push_back(Value::kFalse);
      else if (c == '1')
        root.push_back(Value::kTrue);
      else
        fail("bad root bitstring");
    }
    meta.root = std::move(root);
  } else if (toks.size() >= 3 && toks[1] == "rng") {
    meta.rng = line.substr(line.find("rng") + 4);
  } else {
    meta.other_comments.push_back(line);
  }
}

}  // namespace

DimacsFile read_dimacs(std::istream& in) {
  DimacsMeta meta;
  std::string line;
  uint32_t n_vars = 0;
  uint64_t n_clauses = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == 'c') {
      parse_comment(line, meta);
      continue;
    }
    if (line[0] == 'p') {
      auto toks = split_ws(line);
      uint64_t n = 0, m = 0;
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "cnf" ||
          !parse_u64(toks[2], n) || !parse_u64(toks[3], m))
        throw DimacsError(DimacsErrorKind::kBadHeader, "malformed header: " + line);
      n_vars = static_cast<uint32_t>(n);
      n_clauses = m;
      have_header = true;
      break;
    }
    throw DimacsError(DimacsErrorKind::kBadHeader, "expected comment or header, got: " + line);
  }
  if (!have_header) throw DimacsError(DimacsErrorKind::kBadHeader, "missing 'p cnf N M' header");

  uint32_t k = meta.k.value_or(0);
  std::vector<Literal> flat;
  std::vector<Literal> current;
  uint64_t clauses_read = 0;
  long long lit = 0;
  while (in >> lit) {
    if (lit == 0) {
      if (k == 0) {
        k = static_cast<uint32_t>(current.size());
        if (k == 0) throw DimacsError(DimacsErrorKind::kBadWidth, "empty clause");
      }
      if (current.size() != k)
        throw DimacsError(DimacsErrorKind::kBadWidth,
                          "clause " + std::to_string(clauses_read) + " has width " +
                              std::to_string(current.size()) + ", expected " + std::to_string(k));
      for (size_t i = 0; i < current.size(); ++i)
        for (size_t j = 0; j < i; ++j)
          if (current[i].var == current[j].var)
            throw DimacsError(DimacsErrorKind::kDuplicateVar,
                              "duplicate variable in clause " + std::to_string(clauses_read));
      flat.insert(flat.end(), current.begin(), current.end());
      current.clear();
      ++clauses_read;
      continue;
    }
    uint64_t idx = static_cast<uint64_t>(lit < 0 ? -lit : lit);
    if (idx == 0 || idx > n_vars)
      throw DimacsError(DimacsErrorKind::kBadLiteral,
                        "literal " + std::to_string(lit) + " out of range [1," +
                            std::to_string(n_vars) + "]");
    current.push_back({static_cast<uint32_t>(idx - 1), static_cast<int8_t>(lit < 0 ? -1 : 1)});
  }
  if (!current.empty())
    throw DimacsError(DimacsErrorKind::kBadLiteral, "trailing clause without terminating 0");
  if (clauses_read != n_clauses)
    throw DimacsError(DimacsErrorKind::kBadHeader,
                      "header promises " + std::to_string(n_clauses) + " clauses, found " +
                          std::to_string(clauses_read));
  if (meta.root && meta.root->size() != n_vars)
    throw DimacsError(DimacsErrorKind::kBadMeta, "root bitstring length differs from N");
  if (k == 0) k = meta.k.value_or(0);
  if (k == 0) throw DimacsError(DimacsErrorKind::kBadWidth, "cannot infer K from empty formula");
  meta.k = k;

  try {
    return {Formula(n_vars, k, std::move(flat)), std::move(meta)};
  } catch (const std::invalid_argument& e) {
    throw DimacsError(DimacsErrorKind::kBadLiteral, e.what());
  }
}

DimacsFile read_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

DimacsFile read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DimacsError(DimacsErrorKind::kIo, "cannot open " + path);
  return read_dimacs(in);
}

void write_dimacs(std::ostream& out, const Formula& f, const DimacsMeta& meta) {
  out << "c k " << f.k() << '\n';
  if (meta.seed) out << "c seed " << *meta.seed << '\n';
  if (meta.rng) out << "c rng " << *meta.rng << '\n';
  if (meta.root) {
    out << "c root ";
    for (Value v : *meta.root) out << (v == Value::kTrue ? '1' : '0');
    out << '\n';
  }
  if (meta.planted_energy) out << "c planted_energy " << *meta.planted_energy << '\n';
  for (const auto& line : meta.other_comments) out << line << '\n';
  out << "p cnf " << f.n_vars() << ' ' << f.n_clauses() << '\n';
  for (uint32_t a = 0; a < f.n_clauses(); ++a) {
    for (const Literal& lit : f.clause(a))
      out << (lit.sign > 0 ? static_cast<int64_t>(lit.var) + 1
                           : -(static_cast<int64_t>(lit.var) + 1))
          << ' ';
    out << "0\n";
  }
}

std::string write_dimacs_string(const Formula& f, const DimacsMeta& meta) {
  std::ostringstream out;
  write_dimacs(out, f, meta);
  return out.str();
}

void write_dimacs_file(const std::string& path, const Formula& f, const DimacsMeta& meta) {
  std::ofstream out(path);
  if (!out) throw DimacsError(DimacsErrorKind::kIo, "cannot open " + path + " for writing");
  write_dimacs(out, f, meta);
  if (!out.flush()) throw DimacsError(DimacsErrorKind::kIo, "write failed for " + path);
}

}  // namespace warpsat
