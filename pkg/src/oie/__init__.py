"""Exact algebra of optional-interval events.

Events carry every feasible execution interval up front; ``csa`` and ``csm``
combine them into composite events, and the void OIE marks infeasible plans.
"""
from ._kernels import get_backend, set_backend, use_backend
from .analysis import (OperandOrdering, Operation, OrbitClass, OrbitSpace, ScheduleAssignment,
                       count_orderings, end_order, expand_schedule, fold_projection,
                       implement_first, implement_second, oie_perm_equivalent, orbit_space,
                       project_end_ts)
from .errors import (CapacityExceeded, InvalidChoice, InvalidInput, OIEError,
                     PreconditionViolated, Unsupported)
from .feasibility import (DEFAULT_MAX_PRODUCT, EMPTY_CONSTRAINTS, ConstraintSet, Forbidden,
                          IndexTuple, MinGap, NoOverlap, cartesian_by_index, feasible_combos,
                          infeasible_combos, is_mutually_independent)
from .model import (OIE, ComboSet, Interval, PermutationMap, ValidationReport, apply_permutation,
                    bound_combo, combo_perm_equivalent, derive_intervals, iv, make_atomic,
                    make_combo, max_second, min_first, oie_equal, to_rational, validate_oie,
                    void_oie)
from .ops import (AGGREGATE, PAIRWISE, DomainWindow, Outcome, asc_order_filtered_subset, csa, csm,
                  domain_filtered_subset, evaluate_operation, natural_csa, natural_window)
from .semigroup import (V_ABS, CayleyTable, SemigroupElement, cayley_table, element,
                        emit_full_csa_diagram, emit_svg, enumerate_elements, semigroup_op,
                        table_violations)

__version__ = "0.1.0"

__all__ = [
    "AGGREGATE", "apply_permutation", "asc_order_filtered_subset", "bound_combo",
    "CapacityExceeded", "cartesian_by_index", "cayley_table", "CayleyTable",
    "combo_perm_equivalent", "ComboSet", "ConstraintSet", "count_orderings", "csa", "csm",
    "DEFAULT_MAX_PRODUCT", "derive_intervals", "domain_filtered_subset", "DomainWindow", "element",
    "emit_full_csa_diagram", "emit_svg", "EMPTY_CONSTRAINTS", "end_order", "enumerate_elements",
    "evaluate_operation", "expand_schedule", "feasible_combos", "fold_projection", "Forbidden",
    "get_backend", "implement_first", "implement_second", "IndexTuple", "infeasible_combos",
    "Interval", "InvalidChoice", "InvalidInput", "is_mutually_independent", "iv", "make_atomic",
    "make_combo", "max_second", "min_first", "MinGap", "natural_csa", "natural_window",
    "NoOverlap", "OIE", "oie_equal", "oie_perm_equivalent", "OIEError", "OperandOrdering",
    "Operation", "orbit_space", "OrbitClass", "OrbitSpace", "Outcome", "PAIRWISE",
    "PermutationMap", "PreconditionViolated", "project_end_ts", "ScheduleAssignment",
    "semigroup_op", "SemigroupElement", "set_backend", "table_violations", "to_rational",
    "Unsupported", "use_backend", "V_ABS", "validate_oie", "ValidationReport", "void_oie",
]
