"""Mod-p homology growth of finite abelian covers.

Thin wrapper over the C++ core; ``run_cli`` runs the same commands as the
``homgrow`` executable.
"""

from ._core import (
    BudgetExceeded,
    InvariantViolation,
    ParseError,
    Presentation,
    complex_betti,
    cover_betti,
    level_bound,
    level_sweep,
    load_presentation,
    parse_presentation,
    run_cli,
    series,
    subgroup_counts,
)

__all__ = [
    "BudgetExceeded",
    "InvariantViolation",
    "ParseError",
    "Presentation",
    "complex_betti",
    "cover_betti",
    "level_bound",
    "level_sweep",
    "load_presentation",
    "parse_presentation",
    "run_cli",
    "series",
    "subgroup_counts",
]
