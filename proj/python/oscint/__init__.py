"""Asymptotics of fiber integrals and oscillating integrals.

Thin wrapper around the compiled extension. Structured results come back as
JSON or CSV text so the module stays dependency-free; ``pole_table`` decodes
the JSON for convenience.
"""

import json

from ._oscint import (
    Error,
    ParseError,
    components,
    cycle_points,
    fiber_csv,
    oscillatory_terms,
    oscillatory_value,
    pole_table_json,
    predict_pole_cosets,
    run_acceptance,
    spectrum_cosets,
)

__all__ = [
    "Error",
    "ParseError",
    "components",
    "cycle_points",
    "fiber_csv",
    "oscillatory_terms",
    "oscillatory_value",
    "pole_table",
    "pole_table_json",
    "predict_pole_cosets",
    "run_acceptance",
    "spectrum_cosets",
]


def pole_table(phase, **kwargs):
    """Continuation pole table as a dict (see pole_table_json for arguments)."""
    return json.loads(pole_table_json(phase, **kwargs))
