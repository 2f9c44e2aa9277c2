#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "warpsat/dimacs.hpp"
#include "warpsat/generators.hpp"
#include "warpsat/harness.hpp"
#include "warpsat/oracle.hpp"
#include "warpsat/rng.hpp"
#include "warpsat/theory.hpp"
#include "warpsat/wp.hpp"

namespace py = pybind11;
using namespace warpsat;

namespace {

// Python-facing assignments are lists of 0/1/None.
Assignment to_assignment(const std::vector<std::optional<int>>& values) {
  Assignment x(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    x[i] = !values[i] ? Value::kUnset : (*values[i] ? Value::kTrue : Value::kFalse);
  return x;
}

std::vector<std::optional<int>> from_assignment(const Assignment& x) {
  std::vector<std::optional<int>> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == Value::kUnset)
      out[i] = std::nullopt;
    else
      out[i] = x[i] == Value::kTrue ? 1 : 0;
  }
  return out;
}

Formula make_formula(uint32_t n_vars, uint32_t k,
                     const std::vector<std::vector<std::pair<uint32_t, int>>>& clauses) {
  std::vector<std::vector<Literal>> converted;
  converted.reserve(clauses.size());
  for (const auto& cl : clauses) {
    std::vector<Literal> lits;
    lits.reserve(cl.size());
    for (auto [var, sign] : cl) lits.push_back({var, static_cast<int8_t>(sign)});
    converted.push_back(std::move(lits));
  }
  return Formula::from_clauses(n_vars, k, converted);
}

GenConfig make_config(uint32_t n_vars, uint32_t k, uint32_t n_clauses, uint64_t seed,
                      const std::string& dist, uint32_t planted_energy) {
  GenConfig cfg;
  cfg.n_vars = n_vars;
  cfg.k = k;
  cfg.n_clauses = n_clauses;
  cfg.seed = seed;
  cfg.planted_energy = planted_energy;
  if (dist == "uniform")
    cfg.dist = Dist::kUniform;
  else if (dist == "planted")
    cfg.dist = Dist::kPlanted;
  else if (dist == "planted_energy")
    cfg.dist = Dist::kPlantedEnergy;
  else
    throw std::invalid_argument("dist must be uniform | planted | planted_energy");
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_warpsat, m) {
  m.doc() = "random K-SAT laboratory: generators, Warning Propagation, cavity theory";

  py::class_<Formula>(m, "Formula")
      .def(py::init(&make_formula), py::arg("n_vars"), py::arg("k"), py::arg("clauses"),
           "clauses: list of [(var, sign), ...] with sign +1/-1")
      .def_property_readonly("n_vars", &Formula::n_vars)
      .def_property_readonly("k", &Formula::k)
      .def_property_readonly("n_clauses", &Formula::n_clauses)
      .def("clause",
           [](const Formula& f, uint32_t a) {
             std::vector<std::pair<uint32_t, int>> out;
             for (const Literal& lit : f.clause(a)) out.emplace_back(lit.var, lit.sign);
             return out;
           })
      .def("degree", &Formula::degree)
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__repr__", [](const Formula& f) {
        std::ostringstream s;
        s << "Formula(n_vars=" << f.n_vars() << ", k=" << f.k()
          << ", n_clauses=" << f.n_clauses() << ")";
        return s.str();
      });

  m.def(
      "energy",
      [](const Formula& f, const std::vector<std::optional<int>>& x) {
        return energy(f, to_assignment(x));
      },
      py::arg("formula"), py::arg("assignment"));
  m.def(
      "flip_field",
      [](const Formula& f, const std::vector<std::optional<int>>& x, uint32_t var) {
        return flip_field(f, to_assignment(x), var);
      },
      py::arg("formula"), py::arg("assignment"), py::arg("var"));
  m.def(
      "occurrences",
      [](const Formula& f, uint32_t var) {
        auto c = occurrences(f, var);
        return std::make_pair(c.ell_plus, c.ell_minus);
      },
      py::arg("formula"), py::arg("var"));

  m.def(
      "read_dimacs",
      [](const std::string& text) {
        auto file = read_dimacs_string(text);
        py::dict meta;
        if (file.meta.seed) meta["seed"] = *file.meta.seed;
        if (file.meta.planted_energy) meta["planted_energy"] = *file.meta.planted_energy;
        if (file.meta.root) meta["root"] = from_assignment(*file.meta.root);
        if (file.meta.rng) meta["rng"] = *file.meta.rng;
        return py::make_tuple(file.formula, meta);
      },
      py::arg("text"));
  m.def(
      "write_dimacs",
      [](const Formula& f, std::optional<std::vector<std::optional<int>>> root,
         std::optional<uint64_t> seed, std::optional<uint64_t> planted_energy) {
        DimacsMeta meta;
        meta.k = f.k();
        meta.seed = seed;
        meta.planted_energy = planted_energy;
        if (root) meta.root = to_assignment(*root);
        return write_dimacs_string(f, meta);
      },
      py::arg("formula"), py::arg("root") = std::nullopt, py::arg("seed") = std::nullopt,
      py::arg("planted_energy") = std::nullopt);

  m.def(
      "gen_uniform",
      [](uint32_t n_vars, uint32_t k, uint32_t n_clauses, uint64_t seed) {
        return gen_uniform(make_config(n_vars, k, n_clauses, seed, "uniform", 0));
      },
      py::arg("n_vars"), py::arg("k"), py::arg("n_clauses"), py::arg("seed"));
  m.def(
      "gen_planted",
      [](uint32_t n_vars, uint32_t k, uint32_t n_clauses, uint64_t seed, uint32_t energy_e) {
        auto inst = gen_planted_energy(
            make_config(n_vars, k, n_clauses, seed, "planted_energy", energy_e));
        return py::make_tuple(inst.formula, from_assignment(inst.root), inst.planted_energy);
      },
      py::arg("n_vars"), py::arg("k"), py::arg("n_clauses"), py::arg("seed"),
      py::arg("planted_energy") = 0,
      "returns (formula, root, planted_energy); planted_energy=0 is the pure planted ensemble");
  m.def(
      "sample_psat_rejection",
      [](uint32_t n_vars, uint32_t k, uint32_t n_clauses, uint64_t seed, uint64_t max_attempts) {
        auto r = sample_psat_rejection(make_config(n_vars, k, n_clauses, seed, "uniform", 0),
                                       max_attempts);
        return py::make_tuple(r.formula ? py::cast(*r.formula) : py::none(), r.attempts);
      },
      py::arg("n_vars"), py::arg("k"), py::arg("n_clauses"), py::arg("seed"),
      py::arg("max_attempts"));

  m.def("enumerate_ground_states",
        [](const Formula& f, uint32_t optima_cap) {
          auto truth = enumerate_ground_states(f, optima_cap);
          py::dict out;
          out["e0"] = truth.e0;
          out["g0"] = truth.g0;
          std::vector<std::vector<std::optional<int>>> optima;
          for (const auto& x : truth.optima) optima.push_back(from_assignment(x));
          out["optima"] = optima;
          out["truncated"] = truth.optima_truncated;
          return out;
        },
        py::arg("formula"), py::arg("optima_cap") = 64);
  m.def("is_satisfiable", &is_satisfiable, py::arg("formula"));
  m.def("exact_fields", [](const Formula& f) {
    auto fields = exact_fields(f);
    return py::make_tuple(fields.z, fields.zero_field_fraction);
  });

  py::class_<Decision>(m, "Decision")
      .def_property_readonly("sat",
                             [](const Decision& d) { return d.verdict == Verdict::kSat; })
      .def_readonly("final_energy", &Decision::final_energy)
      .def_readonly("iterations", &Decision::iterations)
      .def_readonly("residual_size", &Decision::residual_size)
      .def_readonly("converged", &Decision::converged)
      .def_property_readonly("witness",
                             [](const Decision& d) { return from_assignment(d.witness); })
      .def("__repr__", [](const Decision& d) {
        std::ostringstream s;
        s << "Decision(" << (d.verdict == Verdict::kSat ? "SAT" : "UNSAT_DECLARED")
          << ", final_energy=" << d.final_energy << ")";
        return s.str();
      });

  m.def(
      "wp_run",
      [](const Formula& f, uint64_t seed, int64_t max_iters) {
        auto out = wp_run(f, seed, max_iters);
        py::dict d;
        d["converged"] = out.converged;
        d["iterations"] = out.iterations;
        d["local_fields"] = out.local_fields;
        d["partial"] = from_assignment(out.partial);
        return d;
      },
      py::arg("formula"), py::arg("seed"), py::arg("max_iters") = -1);
  m.def(
      "wp_decide",
      [](const Formula& f, uint64_t seed, int64_t max_iters, uint32_t restarts) {
        DecideParams params;
        params.max_iters = max_iters;
        params.restarts = restarts;
        return wp_decide(f, seed, params);
      },
      py::arg("formula"), py::arg("seed"), py::arg("max_iters") = -1, py::arg("restarts") = 0);
  m.def(
      "residual_optimize",
      [](const Formula& f, const std::vector<std::optional<int>>& partial, uint64_t seed) {
        auto done = residual_optimize(f, to_assignment(partial), seed);
        return py::make_tuple(from_assignment(done.assignment), done.energy_value);
      },
      py::arg("formula"), py::arg("partial"), py::arg("seed"));

  auto th = m.def_submodule("theory", "replica-symmetric cavity predictions");
  th.def("gamma_large_alpha", &theory::gamma_large_alpha, py::arg("k"), py::arg("alpha"));
  th.def(
      "solve_rho0",
      [](int k, double alpha) {
        auto r = theory::solve_rho0(k, alpha);
        return py::make_tuple(r.rho0, r.gamma_big);
      },
      py::arg("k"), py::arg("alpha"), "returns (rho0, Gamma(rho0))");
  th.def(
      "field_weights_inf",
      [](int k, double alpha) {
        auto d = theory::field_weights_inf(k, alpha);
        return py::make_tuple(d.weight, d.tail);
      },
      py::arg("k"), py::arg("alpha"));
  th.def(
      "planted_field_dist",
      [](int k, double alpha) {
        auto d = theory::planted_field_dist(k, alpha);
        return py::make_tuple(d.weight, d.tail);
      },
      py::arg("k"), py::arg("alpha"));
  th.def("bessel_i", [](int n, double z) { return theory::bessel_i(n, z); }, py::arg("n"),
         py::arg("z"));
  th.def(
      "big_i",
      [](double z, double nu) {
        auto r = theory::big_i(z, nu);
        return py::make_tuple(r.value, r.dz);
      },
      py::arg("z"), py::arg("nu"));
  th.def(
      "solve_finite_nu",
      [](int k, double alpha, double nu) {
        auto sol = theory::solve_finite_nu(k, alpha, nu);
        py::dict d;
        d["r0"] = sol.r0;
        d["b"] = sol.b;
        d["z"] = sol.z;
        d["weights"] = sol.weights.weight;
        d["tail"] = sol.weights.tail;
        d["iterations"] = sol.iterations;
        return d;
      },
      py::arg("k"), py::arg("alpha"), py::arg("nu"));
  th.def("free_energy", [](int k, double alpha, double nu) {
    return theory::free_energy(k, alpha, nu);
  });
  th.def(
      "gs_energy",
      [](int k, double alpha, double nu) {
        auto e = theory::gs_energy(k, alpha, nu);
        py::dict d;
        d["from_free_energy"] = e.from_free_energy;
        d["saddle"] = e.saddle;
        d["large_nu_closed_form"] = e.large_nu_closed_form;
        d["large_alpha"] = e.large_alpha;
        return d;
      },
      py::arg("k"), py::arg("alpha"), py::arg("nu"));
  th.def(
      "omega0",
      [](int k, double alpha) {
        auto om = theory::omega0(k, alpha);
        return py::make_tuple(om.exact, om.approx);
      },
      py::arg("k"), py::arg("alpha"));
  th.def(
      "relative_entropy_per_var",
      [](int k, double alpha) {
        auto s = theory::relative_entropy_per_var(k, alpha);
        return py::make_tuple(s.lo, s.hi, s.leading_order);
      },
      py::arg("k"), py::arg("alpha"));
  th.def(
      "bias_theory",
      [](int k, double alpha, std::optional<double> nu, std::optional<double> e) {
        if (nu && e) throw std::invalid_argument("choose at most one of nu / e");
        auto b = nu ? theory::bias_theory_at_nu(k, alpha, *nu)
                    : e ? theory::bias_theory_at_energy(k, alpha, *e)
                        : theory::bias_theory(k, alpha);
        py::dict d;
        d["bias"] = b.bias;
        d["ell_plus"] = b.ell_plus;
        d["ell_minus"] = b.ell_minus;
        d["outside_first_order_regime"] = b.outside_first_order_regime;
        return d;
      },
      py::arg("k"), py::arg("alpha"), py::arg("nu") = std::nullopt,
      py::arg("e") = std::nullopt);
  th.def(
      "occurrence_gf",
      [](int k, double alpha, double x) {
        auto g = theory::occurrence_gf(k, alpha, x);
        return py::make_tuple(g.value, g.poisson_reference);
      },
      py::arg("k"), py::arg("alpha"), py::arg("x"));
  th.def(
      "noninteger_check",
      [](int k, double alpha) {
        auto r = theory::noninteger_check(k, alpha);
        py::dict d;
        d["exists"] = r.exists;
        d["y"] = r.y;
        d["rhs"] = r.rhs;
        return d;
      },
      py::arg("k"), py::arg("alpha"));

  m.def(
      "finite_energy_sweep",
      [](uint32_t n_vars, uint32_t k, double alpha, const std::vector<uint32_t>& e_list,
         uint32_t trials, uint64_t seed, uint32_t jobs) {
        SweepConfig cfg;
        cfg.n_vars = n_vars;
        cfg.k = k;
        cfg.alpha = alpha;
        cfg.e_list = e_list;
        cfg.trials = trials;
        cfg.master_seed = seed;
        cfg.jobs = jobs;
        auto records = finite_energy_sweep(cfg);
        py::list out;
        for (const auto& r : records) {
          py::dict d;
          d["e"] = r.e;
          d["trials"] = r.trials;
          d["convergence_rate"] = r.convergence_rate;
          d["mean_iterations"] = r.mean_iterations;
          d["mean_unassigned"] = r.mean_unassigned;
          d["mean_agree_with_root"] = r.mean_agree_with_root;
          d["mean_final_energy_gap"] = r.mean_final_energy_gap;
          out.append(d);
        }
        return out;
      },
      py::arg("n_vars"), py::arg("k"), py::arg("alpha"), py::arg("e_list"), py::arg("trials"),
      py::arg("seed"), py::arg("jobs") = 1);

  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));
  m.attr("rng_algorithm") = Rng::kAlgorithm;
  m.attr("__version__") = "0.1.0";
}
