"""MDS codes with constrained generator matrices over small fields."""

from .construct import GeneratorMatrix, assemble, build_row_polynomial, construct_mds, find_evaluation_points
from .gf import FieldSpec, field_new, smallest_field_at_least
from .multiset import ZFamily, check_conjecture, enumerate_outcomes, sweep_instances
from .pattern import ConditionReport, ZeroPattern, check_mds_condition, fits, reduce_supports
from .symdet import SparsePolynomial, symbolic_det
from .verify import is_mds, min_weight_check

__all__ = [
    "ConditionReport",
    "FieldSpec",
    "GeneratorMatrix",
    "SparsePolynomial",
    "ZFamily",
    "ZeroPattern",
    "assemble",
    "build_row_polynomial",
    "check_conjecture",
    "check_mds_condition",
    "construct_mds",
    "enumerate_outcomes",
    "field_new",
    "find_evaluation_points",
    "fits",
    "is_mds",
    "min_weight_check",
    "reduce_supports",
    "smallest_field_at_least",
    "sweep_instances",
    "symbolic_det",
]

__version__ = "0.1.0"
