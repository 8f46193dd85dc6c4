"""Finite pointed metric spaces: seminorms, derived bounded metrics,
property classifiers and weighted-composition order isomorphisms.

The compiled core carries the implementation; this package re-exports it.
"""

from lipkit._core import (
    CompositionOperator,
    MonotoneMap,
    NetCertificationError,
    almost_expansive_witness,
    base_weight,
    build_net,
    check_order_iso,
    dprime_matrix,
    dprime_pair_oracle,
    expansive_at_inf_witness,
    factor_operator,
    family_trend,
    holder_transform,
    lip_constant,
    mcshane_extend,
    ofarrell_decompose,
    rho_matrix,
    scale_iso_lip,
    separation_gap,
    truncate_metric,
    truncation_witness,
    validate_metric,
    verify_suite,
)

__all__ = [
    "CompositionOperator",
    "MonotoneMap",
    "NetCertificationError",
    "almost_expansive_witness",
    "base_weight",
    "build_net",
    "check_order_iso",
    "dprime_matrix",
    "dprime_pair_oracle",
    "expansive_at_inf_witness",
    "factor_operator",
    "family_trend",
    "holder_transform",
    "lip_constant",
    "mcshane_extend",
    "ofarrell_decompose",
    "rho_matrix",
    "scale_iso_lip",
    "separation_gap",
    "truncate_metric",
    "truncation_witness",
    "validate_metric",
    "verify_suite",
]
