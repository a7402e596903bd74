"""Exact combinatorics linking Burrows-Wheeler clustering, order conditions on
bispecial factors, return words and interval exchange transformations."""

from ._kernels import BACKEND
from .words import (
    OrderPair,
    TotalOrder,
    bwt,
    clustering_pairs,
    clusters_for,
    is_palindrome,
    is_perfectly_clustering,
    is_primitive,
    reverse,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "OrderPair", "TotalOrder", "bwt", "clustering_pairs", "clusters_for",
    "is_palindrome", "is_perfectly_clustering", "is_primitive", "reverse",
]
