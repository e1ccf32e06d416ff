"""Exact certificates for local-global obstructions (Python front end)."""

import json

from ._brauerkit import (
    GroupCapExceeded,
    PipelineRefused,
    __version__,
    anisotropic_places,
    count_points,
    h1_invariant_factors,
    hilbert_symbol,
    is_isotropic_local,
    mod2_image_full,
    pipeline_names,
)
from . import _brauerkit

__all__ = [
    "GroupCapExceeded",
    "PipelineRefused",
    "anisotropic_places",
    "count_points",
    "h1_invariant_factors",
    "hilbert_symbol",
    "is_isotropic_local",
    "mod2_image_full",
    "pipeline_names",
    "recheck",
    "run_pipeline",
]


def run_pipeline(name, inputs=None, *, prime_bound=10000, height_bound=10000, coh_cap=5000):
    """Run a named pipeline and return the report as a dict."""
    text = _brauerkit.run_pipeline_json(name, json.dumps(inputs or {}), prime_bound, height_bound, coh_cap)
    return json.loads(text)


def recheck(report):
    """Re-verify a report dict; returns one row per check."""
    return _brauerkit.recheck_json(json.dumps(report))
