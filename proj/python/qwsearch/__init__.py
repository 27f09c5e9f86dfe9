"""Spectral solver and brute-force simulator for discrete-time quantum-walk
search with multiple marked vertices.

Thin wrappers over the compiled core: rich results cross the boundary as
JSON strings and are decoded here into plain dictionaries.
"""

import json

from _qwsearch import (
    analyze_json,
    c_estimate,
    conjecture_prediction,
    dense_smallest_eigenphase,
    find_lambda,
    hypercube_sums,
    lemma_b1,
    lemma_b2,
    model_json,
    probability_curve,
    series_coefficients,
)

__all__ = [
    "analyze",
    "c_estimate",
    "conjecture_prediction",
    "dense_smallest_eigenphase",
    "find_lambda",
    "hypercube_sums",
    "lemma_b1",
    "lemma_b2",
    "model",
    "probability_curve",
    "series_coefficients",
]


def analyze(graph, size, marked):
    """Solver output (lambda, t_opt, p_succ, t_run, amplitudes, ...) as a dict."""
    return json.loads(analyze_json(graph, size, list(marked)))


def model(graph, size, marked):
    """Spectral model (phase groups, blocks, overlaps) as a dict."""
    return json.loads(model_json(graph, size, list(marked)))
