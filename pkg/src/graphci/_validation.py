"""Input checks shared by the estimator and the CLI."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array

from .gf2 import BitMatrix
from .graphstate import BipartiteGraphState, biadjacency


def check_probabilities(P) -> np.ndarray:
    """Return ``P`` as a 1-D float array, rejecting values outside [0, 1]."""
    arr = check_array(np.atleast_1d(np.asarray(P, dtype=float)), ensure_2d=False)
    if arr.ndim != 1:
        raise ValueError(f"expected a scalar or 1-D array of probabilities, got shape {arr.shape}")
    if np.any((arr < 0.0) | (arr > 1.0)):
        raise ValueError("probabilities must lie in [0, 1]")
    return arr


def check_biadjacency(X) -> BitMatrix:
    """Accept a graph, a BitMatrix or a 2-D 0/1 array-like."""
    if isinstance(X, BipartiteGraphState):
        return biadjacency(X)
    if isinstance(X, BitMatrix):
        return X
    arr = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1)
    if not np.all((arr == 0) | (arr == 1)):
        raise ValueError("biadjacency entries must be 0 or 1")
    return BitMatrix.from_array(arr.astype(np.int64))


def probability_grid(p_start: float, p_end: float, steps: int) -> np.ndarray:
    """``steps + 1`` evenly spaced values from ``p_start`` to ``p_end`` inclusive."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if not 0.0 <= p_start <= p_end <= 1.0:
        raise ValueError("need 0 <= p_start <= p_end <= 1")
    return np.linspace(p_start, p_end, steps + 1)
