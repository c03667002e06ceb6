"""Exact mod-2 computations for oriented Grassmann manifolds.

The package computes, exactly over GF(2): dual Stiefel-Whitney classes of
the canonical bundle and their variable-killing reductions, per-degree
cohomology of G(n,k) from the polynomial presentation, Betti numbers of the
oriented double cover through the Gysin sequence, the characteristic rank
of the pulled-back canonical bundle, and cup-length bounds for the cover.
"""

from .cohomology import (
    DegreeSlice,
    GrassmannCohomology,
    GrassmannContext,
    GysinReport,
    GysinRow,
    degree_slice,
    gysin_report,
    ideal_rows,
    pstar_nonzero,
    reduce_to_quotient,
    top_monomials_die,
    w1_operator,
)
from .duals import (
    DualTable,
    ReductionScan,
    dual_class,
    dual_table,
    g,
    reduced_dual_class,
    reduced_dual_classes,
    scan_vanishing,
    verify_iterated_recurrence,
    verify_iterated_recurrence_batch,
)
from .gf2poly import (
    Exponents,
    Poly,
    enumerate_monomials,
    monomial_count,
    monomial_degree,
    parse_poly,
    reduce_mod_vars,
)
from .rank_cup import (
    CharrankResult,
    ClosedForm,
    CupBoundReport,
    InconsistencyError,
    Prediction,
    SwLowerBound,
    charrank_oriented,
    charrank_prediction,
    cup_closed_form,
    cup_lower_sw,
    cup_report,
    cup_upper,
    verify_charrank_row,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Exponents",
    "Poly",
    "enumerate_monomials",
    "monomial_count",
    "monomial_degree",
    "parse_poly",
    "reduce_mod_vars",
    "DualTable",
    "ReductionScan",
    "dual_class",
    "dual_table",
    "g",
    "reduced_dual_class",
    "reduced_dual_classes",
    "scan_vanishing",
    "verify_iterated_recurrence",
    "verify_iterated_recurrence_batch",
    "DegreeSlice",
    "GrassmannCohomology",
    "GrassmannContext",
    "GysinReport",
    "GysinRow",
    "degree_slice",
    "gysin_report",
    "ideal_rows",
    "pstar_nonzero",
    "reduce_to_quotient",
    "top_monomials_die",
    "w1_operator",
    "CharrankResult",
    "ClosedForm",
    "CupBoundReport",
    "InconsistencyError",
    "Prediction",
    "SwLowerBound",
    "charrank_oriented",
    "charrank_prediction",
    "cup_closed_form",
    "cup_lower_sw",
    "cup_report",
    "cup_upper",
    "verify_charrank_row",
]
