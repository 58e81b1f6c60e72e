"""Kummerian orientations, cocycles and Massey products for finitely presented pro-p groups."""
from .padic import PadicScalar, UnitOneScalar, pow, qint
from .words import (
    Presentation,
    PresentationFile,
    RandomSource,
    Word,
    commutator,
    exponent_sums,
    free_product,
    k_generator,
    parse_presentation,
    parse_word,
    sample_lower_p_central,
)
from .cocycle import FoxMatrix, Orientation, ThetaNotWellDefined, evaluate, fox_matrix, theta_of_word
from .kummer import is_kummerian_at, refutation_report, search_orientations
from .magnus import cup_kernel, expand, labute_mildness, omega, pairing_table
from .massey import brute_force_massey, triple_massey, unipotent_eval

__version__ = "0.1.0"
