"""Python access to the chromalg suites and constructions.

The extension returns JSON text; these wrappers decode it.
"""

import json

from . import _chromalg
from ._chromalg import REPORT_SCHEMA, ChromalgError, coaction_tables

__all__ = ["REPORT_SCHEMA", "ChromalgError", "coaction_tables", "run", "law", "p_series", "solve"]


def run(suite, p=3, n=1, xdeg=0, uprec=0, selection="", seed=1, samples=50):
    """Run a verification suite ("fgl", "iso", "hopf", "comod", "spaces" or "all") and return the report."""
    return json.loads(_chromalg.run(suite, p, n, xdeg, uprec, selection, seed, samples))


def law(name, p=3, n=1, N=10, uprec=0):
    """Coefficients of the "honda" or "e" law mod total degree N."""
    return json.loads(_chromalg.law(name, p, n, N, uprec))


def p_series(name, p=3, n=1, N=10, uprec=0):
    return json.loads(_chromalg.p_series(name, p, n, N, uprec))


def solve(p=3, n=1, xdeg=0, uprec=0):
    """Isomorphism from the E law to the Honda law, with its tower and adjunction steps."""
    return json.loads(_chromalg.solve(p, n, xdeg, uprec))
