"""Asymptotic complexity analysis of VASS Markov decision processes.

Models, strategies and graphs are accepted as JSON text, dicts or paths;
reports come back as dicts with the same layout as the CLI's --json output.
"""

import json
import os

from . import _core
from ._core import ScopeError, ValidationError, __version__

__all__ = [
    "ScopeError",
    "ValidationError",
    "__version__",
    "analyze",
    "canonical_model",
    "energy",
    "gen_hamiltonian",
    "mecs",
    "model_digest",
    "simulate",
    "types",
    "verify_report",
]


def _text(obj):
    if isinstance(obj, dict):
        return json.dumps(obj)
    if isinstance(obj, os.PathLike) or (isinstance(obj, str) and not obj.lstrip().startswith("{")):
        with open(obj, encoding="utf-8") as f:
            return f.read()
    return obj


def canonical_model(model):
    return json.loads(_core.canonical_model(_text(model)))


def model_digest(model):
    return _core.model_digest(_text(model))


def analyze(model, measures=(), max_type_len=4):
    return json.loads(_core.analyze(_text(model), list(measures), max_type_len))


def mecs(model):
    return json.loads(_core.mecs(_text(model)))


def types(model, max_type_len=4):
    return json.loads(_core.types(_text(model), max_type_len))


def energy(model, bound=1_000_000):
    return json.loads(_core.energy(_text(model), bound))


def simulate(model, strategy=None, n=(8, 16, 32), runs=1000, seed=1, theta=(1.5, 2.0), init_state="",
             measures=(), condition=(), horizons=(), min_cap=0, threads=0):
    return json.loads(_core.simulate(_text(model), None if strategy is None else _text(strategy), list(n), runs,
                                     seed, list(theta), init_state, list(measures), list(condition),
                                     list(horizons), min_cap, threads))


def gen_hamiltonian(graph, vertex):
    return json.loads(_core.gen_hamiltonian(_text(graph), vertex))


def verify_report(model, report):
    """Re-substitutes every witness of a report; returns {checked, failures}."""
    return json.loads(_core.verify_report(_text(model), json.dumps(report)))
