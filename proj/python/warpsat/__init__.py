"""Random K-SAT laboratory.

Seeded instance generators (uniform / planted / energy-planted), a Warning
Propagation solver with residual optimization, an exhaustive small-N oracle,
and numerical evaluation of the replica-symmetric cavity predictions, all
backed by the C++ core.
"""

from ._warpsat import (
    Decision,
    Formula,
    derive_seed,
    energy,
    enumerate_ground_states,
    exact_fields,
    finite_energy_sweep,
    flip_field,
    gen_planted,
    gen_uniform,
    is_satisfiable,
    occurrences,
    read_dimacs,
    residual_optimize,
    rng_algorithm,
    sample_psat_rejection,
    theory,
    wp_decide,
    wp_run,
    write_dimacs,
)

__version__ = "0.1.0"

__all__ = [
    "Decision",
    "Formula",
    "derive_seed",
    "energy",
    "enumerate_ground_states",
    "exact_fields",
    "finite_energy_sweep",
    "flip_field",
    "gen_planted",
    "gen_uniform",
    "is_satisfiable",
    "occurrences",
    "read_dimacs",
    "residual_optimize",
    "rng_algorithm",
    "sample_psat_rejection",
    "theory",
    "wp_decide",
    "wp_run",
    "write_dimacs",
]
