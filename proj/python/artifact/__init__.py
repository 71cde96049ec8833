"""Exact verification of relative cyclic homology, the comparison map Psi and syntomic products."""

import json

from . import _artifact
from ._artifact import UsageError, run_cli, suite_keys

__all__ = [
    "UsageError",
    "homology",
    "mult_table",
    "run_cli",
    "suite",
    "suite_keys",
    "verify_hkr",
    "verify_psi",
]


def homology(**kwargs):
    """Integral and mod-p tables; same keys as `artifact homology`."""
    return json.loads(_artifact.homology(**kwargs))


def verify_psi(**kwargs):
    return json.loads(_artifact.verify_psi(**kwargs))


def verify_hkr(**kwargs):
    return json.loads(_artifact.verify_hkr(**kwargs))


def mult_table(**kwargs):
    return json.loads(_artifact.mult_table(**kwargs))


def suite(keys=(), workers=0):
    """Acceptance matrix as a dict; `keys` selects criteria by key or id."""
    return json.loads(_artifact.suite(list(keys), workers))
