"""Exact norm, dual norm and construction tools for block-measure norming sets."""

from . import numeric  # noqa: F401  (sets mpmath precision)
from .configs import DESK, SHIPPED, TOY, WITNESS, builtin, load_config
from .norm import (
    DualNormDidNotConverge,
    DualNormResult,
    NormResult,
    dual_norm,
    enumerate_admissible,
    norm_bb,
    norm_exhaustive,
    section_extreme_points,
    window_measures,
)
from .ordinals import OMEGA, Ordinal, fundamental_sequence, ord_compare, parse_ordinal
from .schreier import ResourceLimitError, schreier_enumerate, schreier_maximal, schreier_member
from .space import (
    Admissible,
    PMeasure,
    SpaceConfig,
    SparseVector,
    StructuralError,
    Unit,
    admissible_check,
    config_validate,
    functional_restrict,
    functional_value,
    parse_config,
)

__all__ = [name for name in dir() if not name.startswith("_")]
