"""SU(3) irreps, generator matrices, Clebsch-Gordan series, isoscalar factors
and Clebsch-Gordan coefficients, with a brute-force cross-check."""

from .core import (
    Irrep,
    State,
    Weight,
    WeightLattice,
    casimir_f,
    casimir_g,
    conjugate,
    dimension,
    enumerate_basis,
    highest_weight,
    i_range,
    irrep,
    triality,
    weight_multiplicity,
)
from .exact import IncompatibleRadicands, Surd, surd_add, surd_mul, surd_to_float
from .generators import build_generator_matrices, chi_kappa, isospin_ladder, ladder_coefficients, zw_squared
from .isoscalar import (
    closed_form_pp,
    closed_form_pq,
    closed_form_qq,
    conjugation_phase,
    hw_lattice,
    hw_solve,
    isoscalar_row,
    isoscalar_tables,
    lower_full_table,
    scalar_factors,
)
from .series import SeriesTerm, series_general, series_pp, series_pq, series_qq
from .su2 import su2_cgc, su2_couplings

__version__ = "0.1.0"

__all__ = [
    "IncompatibleRadicands", "Irrep", "SeriesTerm", "State", "Surd", "Weight", "WeightLattice",
    "build_generator_matrices", "casimir_f", "casimir_g", "chi_kappa", "closed_form_pp", "closed_form_pq",
    "closed_form_qq", "conjugate", "conjugation_phase", "dimension", "enumerate_basis", "highest_weight",
    "hw_lattice", "hw_solve", "i_range", "irrep", "isoscalar_row", "isoscalar_tables", "isospin_ladder",
    "ladder_coefficients", "lower_full_table", "scalar_factors", "series_general", "series_pp", "series_pq",
    "series_qq", "su2_cgc", "su2_couplings", "surd_add", "surd_mul", "surd_to_float", "triality",
    "weight_multiplicity", "zw_squared",
]
