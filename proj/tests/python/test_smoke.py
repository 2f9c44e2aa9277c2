"""Python smoke tests for the _warpsat extension module."""

import math

import pytest

import warpsat
from warpsat import theory


def test_formula_and_energy():
    f = warpsat.Formula(3, 3, [[(0, 1), (1, 1), (2, 1)]])
    assert f.n_vars == 3 and f.k == 3 and f.n_clauses == 1
    assert warpsat.energy(f, [0, 0, 0]) == 1
    assert warpsat.energy(f, [1, 0, 0]) == 0
    assert warpsat.flip_field(f, [1, 0, 0], 0) == 1
    assert warpsat.occurrences(f, 0) == (1, 0)


def test_generators_are_deterministic():
    a = warpsat.gen_uniform(50, 3, 200, seed=42)
    b = warpsat.gen_uniform(50, 3, 200, seed=42)
    c = warpsat.gen_uniform(50, 3, 200, seed=43)
    assert a == b
    assert not (a == c)


def test_planted_root_is_a_solution():
    f, root, e = warpsat.gen_planted(100, 3, 1000, seed=7)
    assert e == 0
    assert warpsat.energy(f, root) == 0

    f10, root10, e10 = warpsat.gen_planted(100, 3, 1000, seed=7, planted_energy=10)
    assert e10 == 10
    assert warpsat.energy(f10, root10) == 10


def test_dimacs_round_trip():
    f, root, _ = warpsat.gen_planted(30, 3, 120, seed=5)
    text = warpsat.write_dimacs(f, root=root, seed=5, planted_energy=0)
    g, meta = warpsat.read_dimacs(text)
    assert g == f
    assert meta["root"] == root
    assert meta["seed"] == 5


def test_wp_solves_planted_instances():
    f, root, _ = warpsat.gen_planted(200, 3, 2000, seed=11)
    d = warpsat.wp_decide(f, seed=1)
    assert d.sat
    assert d.final_energy == 0
    assert warpsat.energy(f, d.witness) == 0

    run = warpsat.wp_run(f, seed=1)
    assert run["converged"]
    assigned = [v for v in run["partial"] if v is not None]
    assert len(assigned) >= 190


def test_oracle_matches_wp_on_small_instances():
    f = warpsat.gen_uniform(12, 3, 60, seed=3)
    truth = warpsat.enumerate_ground_states(f)
    d = warpsat.wp_decide(f, seed=9)
    assert d.final_energy >= truth["e0"]
    assert warpsat.is_satisfiable(f) == (truth["e0"] == 0)


def test_theory_values():
    rho0, gamma_big = theory.solve_rho0(3, 10.0)
    assert rho0 == pytest.approx(0.0074912640702, rel=1e-8)
    assert gamma_big == pytest.approx(4.2083338913, rel=1e-8)

    exact, approx = theory.omega0(3, 10.0)
    assert exact == pytest.approx(-0.6493409851, rel=1e-8)
    assert abs(exact - approx) <= 0.05

    weights, tail = theory.planted_field_dist(3, 10.0)
    assert weights[0] == pytest.approx(math.exp(-30.0 / 7.0), rel=1e-12)

    e = theory.gs_energy(3, 10.0, 5.0)
    assert e["from_free_energy"] == pytest.approx(e["saddle"], rel=1e-6)

    b = theory.bias_theory(3, 10.0)
    assert b["bias"] == pytest.approx(1.0 / 7.0, abs=0.01)


def test_rejection_sampler():
    f, attempts = warpsat.sample_psat_rejection(12, 3, 24, seed=1, max_attempts=100)
    assert f is not None
    assert attempts >= 1
    assert warpsat.is_satisfiable(f)


def test_finite_energy_sweep():
    records = warpsat.finite_energy_sweep(
        100, 3, 10.0, e_list=[0], trials=5, seed=1, jobs=2
    )
    assert len(records) == 1
    assert records[0]["convergence_rate"] >= 0.8
    assert records[0]["mean_final_energy_gap"] == 0.0
