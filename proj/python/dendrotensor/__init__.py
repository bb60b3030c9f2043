"""Trees, level forests, shuffles and set-level operad checks."""

import json

from ._core import (
    DomainError,
    Error,
    ParseError,
    StructureError,
    classify,
    edge_count,
    factorize,
    forest_dot,
    free_algebra_count,
    hom_count,
    normalize,
    omega,
    omega_dot,
    run_suite_json,
    shuffles,
    suite_names,
    tensor_hom_count,
)


def run_suite(suite, seed=42, **bounds):
    """Run a seeded check suite (or "all") and return its report as a dict."""
    return json.loads(run_suite_json(suite, seed, **bounds))


__all__ = [
    "DomainError",
    "Error",
    "ParseError",
    "StructureError",
    "classify",
    "edge_count",
    "factorize",
    "forest_dot",
    "free_algebra_count",
    "hom_count",
    "normalize",
    "omega",
    "omega_dot",
    "run_suite",
    "run_suite_json",
    "shuffles",
    "suite_names",
    "tensor_hom_count",
]
