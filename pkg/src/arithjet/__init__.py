"""Exact pi-adic engine: Witt vectors, lateral Frobenius, jet-space
characters and filtered F-crystals of elliptic curves, all verified at
finite pi-adic precision."""

from .errors import (
    BadReduction,
    BasisExpansionFailed,
    DegreeCapTooSmall,
    EngineError,
    IncompatibleSpec,
    Inconclusive,
    IntegralityViolation,
    InvalidParameters,
    NonNilpotentComposition,
    NotDivisible,
    NotInImage,
    NotInVImage,
    PrecisionExhausted,
    UnsupportedDimension,
)
from .ring import BaseRingSpec, PadicScalar, c_pi, exact_div_pi, pi_derivation_scalar
from .series import FracSeries, TruncSeries, series_ops
from .witt import (
    WittVector,
    f_tilde,
    frobenius_W,
    structural_polynomials,
    teichmuller,
    verschiebung,
    witt_ring_op,
)
from .lateral import (
    TildeWittVector,
    from_witt,
    generic_tilde,
    lateral_frobenius,
    tilde_pack,
    tilde_unpack,
)
from .howell import (
    howell_form,
    left_kernel_basis,
    module_rank,
    right_kernel_basis,
)
from .fgl import (
    FormalGroupLaw,
    additive_law,
    formal_group_from_weierstrass,
    formal_logarithm,
    frobenius_unit_root,
    multiplicative_law,
    trace_of_frobenius,
)
from .characters import (
    Character,
    RankTable,
    expand_in_psi_basis,
    extract_lambda_gamma,
    frobenius_pullback,
    i_star,
    jet_group_law,
    kernel_group_law,
    lateral_pullback,
    psi_basis,
    rank_table,
    solve_additive,
    solve_delta_characters,
    splitting_number,
    u_star,
    upsilon,
)
from .crystal import (
    FilteredIsocrystal,
    build_crystal,
    de_rham_shadow,
    polygons,
    weak_admissibility,
)

__all__ = [
    "BadReduction", "BaseRingSpec", "BasisExpansionFailed", "Character",
    "DegreeCapTooSmall", "EngineError", "FilteredIsocrystal",
    "FormalGroupLaw", "FracSeries", "IncompatibleSpec", "Inconclusive",
    "IntegralityViolation", "InvalidParameters", "NonNilpotentComposition",
    "NotDivisible", "NotInImage", "NotInVImage", "PadicScalar",
    "PrecisionExhausted", "RankTable", "TildeWittVector", "TruncSeries",
    "UnsupportedDimension", "WittVector", "additive_law", "build_crystal",
    "c_pi", "de_rham_shadow", "exact_div_pi", "expand_in_psi_basis",
    "extract_lambda_gamma", "f_tilde", "formal_group_from_weierstrass",
    "formal_logarithm", "frobenius_W", "frobenius_pullback",
    "frobenius_unit_root", "from_witt", "generic_tilde", "howell_form",
    "i_star", "jet_group_law", "kernel_group_law", "lateral_frobenius",
    "lateral_pullback", "left_kernel_basis", "module_rank",
    "multiplicative_law", "pi_derivation_scalar", "polygons", "psi_basis",
    "rank_table", "right_kernel_basis", "series_ops", "solve_additive",
    "solve_delta_characters", "splitting_number", "structural_polynomials",
    "teichmuller", "tilde_pack", "tilde_unpack", "trace_of_frobenius",
    "u_star", "upsilon", "verschiebung", "weak_admissibility",
    "witt_ring_op",
]

__version__ = "0.1.0"
