"""Entanglement bounds for two-mode squeezed thermal states.

The public surface re-exports the most used entry points; the submodules hold
the full API.
"""
from tmst_bounds.bound_lower import e_lf, qubit_projection
from tmst_bounds.bound_upper import e_uf, e_ur
from tmst_bounds.gaussian_core import TmstParams, tmst_from, tmst_from_squeezing
from tmst_bounds.measures import MeasureReport, coherent_info, e_ln, measure_report

__all__ = [
    "MeasureReport",
    "TmstParams",
    "coherent_info",
    "e_lf",
    "e_ln",
    "e_uf",
    "e_ur",
    "measure_report",
    "qubit_projection",
    "tmst_from",
    "tmst_from_squeezing",
]
__version__ = "0.1.0"
