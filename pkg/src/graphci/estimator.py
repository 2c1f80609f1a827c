"""Scikit-learn style front end.

``fit`` does the noise-independent work (elimination, classification) for
one bipartite graph; ``transform`` evaluates entropies on a grid of ``P``.

>>> from graphci import CoherentInformation, star
>>> est = CoherentInformation().fit(star(3, 1))
>>> est.transform([1.0])[0].tolist()
[1.0, 1.0, 0.0, 1.0, 1.0]
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_biadjacency, check_probabilities
from .entropy import (
    DEFAULT_MAX_K,
    DEFAULT_MAX_NU,
    binary_entropy,
    extract_generator_matrix,
    side_entropy,
)
from .gf2 import rank
from .graphstate import classify

__all__ = ["CoherentInformation", "OUTPUT_COLUMNS"]

OUTPUT_COLUMNS = ("H_A", "H_B", "H_AB", "I_A", "I_B")


class CoherentInformation(TransformerMixin, BaseEstimator):
    """Coherent information across a fixed bipartition as a function of ``P``.

    Parameters
    ----------
    method : {"auto", "general", "closedform"}
        Path used for the subsystem entropies; see
        :func:`graphci.entropy.side_entropy`.
    max_nu, max_k : int
        Enumeration caps for the general path.
    n_jobs : int or None
        Threads used by the general path; ``-1`` means all cores.

    Attributes
    ----------
    biadjacency_ : BitMatrix
    rank_ : int
    generators_ : dict
        ``{"A": GeneratorMatrix, "B": GeneratorMatrix}``.
    structure_ : dict
        ``{"A": StructureClass, "B": StructureClass}``.
    """

    def __init__(self, method="auto", max_nu=DEFAULT_MAX_NU, max_k=DEFAULT_MAX_K, n_jobs=None):
        self.method = method
        self.max_nu = max_nu
        self.max_k = max_k
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        """Analyse a graph, BitMatrix or 0/1 biadjacency array."""
        if self.method not in ("auto", "general", "closedform"):
            raise ValueError(f"unknown method {self.method!r}")
        gab = check_biadjacency(X)
        self.biadjacency_ = gab
        self.n_A_, self.n_B_ = gab.shape
        self.rank_ = rank(gab)
        self.generators_ = {s: extract_generator_matrix(gab, s) for s in "AB"}
        self.structure_ = {s: classify(gab, s) for s in "AB"}
        return self

    def transform(self, X):
        """Rows of ``(H_A, H_B, H_AB, I_A, I_B)``, one per probability in ``X``."""
        check_is_fitted(self, "generators_")
        Ps = check_probabilities(X)
        out = np.empty((len(Ps), len(OUTPUT_COLUMNS)))
        self.paths_ = []
        for i, P in enumerate(Ps):
            H = {}
            tags = {}
            for s in "AB":
                H[s], tags[s] = side_entropy(
                    self.biadjacency_,
                    s,
                    P,
                    self.method,
                    gen=self.generators_[s],
                    structure=self.structure_[s],
                    max_nu=self.max_nu,
                    max_k=self.max_k,
                    n_jobs=self.n_jobs,
                )
            H_AB = (self.n_A_ + self.n_B_) * binary_entropy(P)
            out[i] = (H["A"], H["B"], H_AB, H["A"] - H_AB, H["B"] - H_AB)
            self.paths_.append(tags)
        return out

    def fit_transform(self, X, y=None, P=None):
        if P is None:
            raise TypeError("fit_transform needs the probability grid as P=")
        return self.fit(X).transform(P)
