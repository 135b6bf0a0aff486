"""Moment closures (Kershaw, P_N, M_N) for slab-geometry kinetic transport."""

from ._core import (
    KershawError,
    NotRealizable,
    NonPositiveDensity,
    NoConvergence,
    DegenerateState,
    RealizabilityLost,
    ParseError,
    ValidationError,
    beam_moments,
    eigenvalues,
    flux,
    interpolation_constant,
    is_realizable,
    isotropic_moments,
    kershaw_close,
    mn_multipliers,
    moment_bounds,
    realizability_slack,
    reconstruct_atomic,
    run_config,
    run_scenario,
)
from .tables import SCHEMAS, Table, read_table

__all__ = [name for name in dir() if not name.startswith("_")]
