"""Pointer-isolated clone detection with constraint-checked feedback."""

import json

from ._core import (
    NODE_KINDS,
    __version__,
    cluster,
    cluster_threshold,
    constraints,
    euclidean_distance,
    false_positive_feedback,
    function_names,
    hamming_distance,
    slices,
    verify,
)
from ._core import analyze_json


def analyze(corpus, **options):
    """Run the full pipeline and return the report as a dict."""
    return json.loads(analyze_json(str(corpus), **options))


__all__ = [
    "NODE_KINDS",
    "__version__",
    "analyze",
    "analyze_json",
    "cluster",
    "cluster_threshold",
    "constraints",
    "euclidean_distance",
    "false_positive_feedback",
    "function_names",
    "hamming_distance",
    "slices",
    "verify",
]
