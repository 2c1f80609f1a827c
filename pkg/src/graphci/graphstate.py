"""Bipartite graph states, graph families and row-structure classification.

Alice owns vertices ``0 .. n_A-1`` and Bob owns ``n_A .. n_A+n_B-1``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .gf2 import BitMatrix, rank

__all__ = [
    "BipartiteGraphState",
    "NoiseModel",
    "StructureClass",
    "GraphFormatError",
    "biadjacency",
    "star",
    "complete_bipartite",
    "block_graph",
    "from_biadjacency",
    "random_graph",
    "classify",
    "equitable_split",
    "read_graph",
    "write_graph",
    "parse_graph",
    "format_graph",
]

SIDES = ("A", "B")


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""


def _check_side(side: str) -> str:
    s = str(side).upper()
    if s not in SIDES:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return s


@dataclass(frozen=True)
class BipartiteGraphState:
    """Graph state split between Alice (low indices) and Bob.

    ``edges`` is normalised to a frozenset of ``(u, v)`` pairs with ``u < v``.
    Passing the same undirected edge twice is an error.
    """

    n_A: int
    n_B: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n_A < 0 or self.n_B < 0 or self.n_A + self.n_B < 1:
            raise ValueError(f"need n_A, n_B >= 0 and n >= 1, got ({self.n_A}, {self.n_B})")
        n = self.n_A + self.n_B
        seen = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", frozenset(seen))

    @classmethod
    def from_edges(cls, n_A: int, n_B: int, edges: Iterable[Sequence[int]]) -> "BipartiteGraphState":
        edges = list(edges)
        normalised = [(min(u, v), max(u, v)) for u, v in edges]
        if len(set(normalised)) != len(normalised):
            dup = next(e for e in normalised if normalised.count(e) > 1)
            raise ValueError(f"duplicate edge {dup}")
        return cls(n_A, n_B, frozenset(normalised))

    @property
    def n(self) -> int:
        return self.n_A + self.n_B

    def owner(self, v: int) -> str:
        return "A" if v < self.n_A else "B"

    def cross_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e in self.edges if (e[0] < self.n_A) != (e[1] < self.n_A))

    def local_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e in self.edges if (e[0] < self.n_A) == (e[1] < self.n_A))

    def without_local_edges(self) -> "BipartiteGraphState":
        return BipartiteGraphState(self.n_A, self.n_B, frozenset(self.cross_edges()))

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "BipartiteGraphState":
        """Return a copy with ``extra`` edges added (must be new edges)."""
        new = set(self.edges)
        for u, v in extra:
            key = (min(u, v), max(u, v))
            if key in new:
                raise ValueError(f"edge {key} already present")
            new.add(key)
        return BipartiteGraphState(self.n_A, self.n_B, frozenset(new))


@dataclass(frozen=True)
class NoiseModel:
    """Each qubit starts in ``|+>`` with probability ``P`` and in ``|->`` otherwise."""

    P: float

    def __post_init__(self):
        p = float(self.P)
        if not (0.0 <= p <= 1.0) or np.isnan(p):
            raise ValueError(f"P must lie in [0, 1], got {self.P!r}")
        object.__setattr__(self, "P", p)


@dataclass(frozen=True)
class StructureClass:
    """Row structure of one side of a biadjacency matrix.

    ``kind`` is one of ``"rank1"``, ``"rank2type1"``, ``"rank2type2"`` or
    ``"general"``. ``counts`` holds the class sizes (``(n_connected,)``,
    ``(n1, n2)`` or ``(n1, n2, n3)``; empty for ``"general"``). Classes are
    ordered by the first row in which they occur. ``disconnected`` counts the
    side's vertices that have no cross edge.
    """

    side: str
    kind: str
    counts: tuple[int, ...]
    rank: int
    disconnected: int

    @property
    def n_connected(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        label = {
            "rank1": "Rank1",
            "rank2type1": "Rank2Type1",
            "rank2type2": "Rank2Type2",
            "general": "General",
        }[self.kind]
        if self.kind == "general":
            inner = f"rank={self.rank}"
        elif self.kind == "rank1":
            inner = f"n_connected={self.counts[0]}"
        else:
            inner = ", ".join(f"n{i + 1}={c}" for i, c in enumerate(self.counts))
        return f"{self.side}: {label}{{{inner}}} disconnected={self.disconnected}"


def biadjacency(g: BipartiteGraphState) -> BitMatrix:
    """``n_A x n_B`` cross-edge matrix; local edges are ignored."""
    rows = [0] * g.n_A
    for u, v in g.cross_edges():
        rows[u] |= 1 << (v - g.n_A)
    return BitMatrix(g.n_A, g.n_B, tuple(rows))


def from_biadjacency(gab) -> BipartiteGraphState:
    """Graph with exactly the cross edges of ``gab`` (BitMatrix or 0/1 array)."""
    if not isinstance(gab, BitMatrix):
        gab = BitMatrix.from_array(gab)
    n_A = gab.n_rows
    edges = [
        (i, n_A + j)
        for i, r in enumerate(gab.rows)
        for j in range(gab.n_cols)
        if (r >> j) & 1
    ]
    return BipartiteGraphState(n_A, gab.n_cols, frozenset(edges))


def complete_bipartite(n_A: int, n_B: int) -> BipartiteGraphState:
    if n_A < 1 or n_B < 1:
        raise ValueError(f"complete_bipartite needs n_A, n_B >= 1, got ({n_A}, {n_B})")
    return BipartiteGraphState(
        n_A, n_B, frozenset((i, n_A + j) for i in range(n_A) for j in range(n_B))
    )


def star(n_A: int, n_B: int = 1) -> BipartiteGraphState:
    """Every Alice qubit joined to every Bob qubit.

    With one side of size 1 this is the usual star graph; larger values give
    the complete bipartite graph, which shares its biadjacency structure.
    """
    return complete_bipartite(n_A, n_B)


def block_graph(
    row_blocks: Sequence[int],
    col_blocks: Sequence[int],
    pattern,
) -> BipartiteGraphState:
    """Graph whose biadjacency is an all-ones/all-zeros block matrix.

    ``pattern[i][j] == 1`` puts an all-ones block between Alice's block ``i``
    and Bob's block ``j``.
    """
    pat = np.asarray(pattern, dtype=int)
    if pat.shape != (len(row_blocks), len(col_blocks)):
        raise ValueError(
            f"pattern shape {pat.shape} does not match blocks "
            f"({len(row_blocks)}, {len(col_blocks)})"
        )
    if any(b < 1 for b in row_blocks) or any(b < 1 for b in col_blocks):
        raise ValueError("block sizes must be >= 1")
    n_A, n_B = sum(row_blocks), sum(col_blocks)
    row_starts = np.concatenate([[0], np.cumsum(row_blocks)])
    col_starts = np.concatenate([[0], np.cumsum(col_blocks)])
    edges = set()
    for bi in range(len(row_blocks)):
        for bj in range(len(col_blocks)):
            if pat[bi, bj]:
                for i in range(row_starts[bi], row_starts[bi + 1]):
                    for j in range(col_starts[bj], col_starts[bj + 1]):
                        edges.add((int(i), int(n_A + j)))
    return BipartiteGraphState(n_A, n_B, frozenset(edges))


def random_graph(
    n_A: int,
    n_B: int,
    rng: np.random.Generator,
    density: float = 0.5,
    local_density: float = 0.0,
) -> BipartiteGraphState:
    """Random bipartite graph; ``local_density`` adds intra-party edges."""
    n = n_A + n_B
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            cross = (u < n_A) != (v < n_A)
            if rng.random() < (density if cross else local_density):
                edges.append((u, v))
    return BipartiteGraphState(n_A, n_B, frozenset(edges))


def classify(gab: BitMatrix, side: str) -> StructureClass:
    """Classify side ``A`` by the rows of ``gab`` and side ``B`` by its columns."""
    side = _check_side(side)
    vectors = gab.rows if side == "A" else gab.transpose().rows
    disconnected = sum(1 for v in vectors if v == 0)

    reps: list[int] = []
    counts: list[int] = []
    for v in vectors:
        if v == 0:
            continue
        if v in reps:
            counts[reps.index(v)] += 1
        else:
            reps.append(v)
            counts.append(1)

    r = rank(gab)
    if len(reps) == 1:
        return StructureClass(side, "rank1", (counts[0],), r, disconnected)
    if len(reps) == 2:
        return StructureClass(side, "rank2type1", tuple(counts), r, disconnected)
    if len(reps) == 3 and reps[0] ^ reps[1] ^ reps[2] == 0:
        return StructureClass(side, "rank2type2", tuple(counts), r, disconnected)
    return StructureClass(side, "general", (), r, disconnected)


def equitable_split(n: int, parts: int) -> tuple[int, ...]:
    """Near-equal split of ``n`` into ``parts`` positive counts, larger first.

    For two parts this is ``(ceil(n/2), floor(n/2))``; for three parts it is
    ``(k+1, k+1, k)`` when ``n % 3 == 2`` and ``(k+1, k, k)`` when
    ``n % 3 == 1``.
    """
    if n < parts:
        raise ValueError(f"cannot split {n} into {parts} positive parts")
    base, extra = divmod(n, parts)
    return tuple(base + 1 if i < extra else base for i in range(parts))


# -- text format ---------------------------------------------------------


def parse_graph(text: str) -> BipartiteGraphState:
    """Parse ``nA nB`` followed by one ``u v`` edge per line (0-based)."""
    lines = [
        (lineno, ln.strip())
        for lineno, ln in enumerate(text.splitlines(), 1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty graph file")
    lineno, header = lines[0]
    try:
        n_A, n_B = (int(x) for x in header.split())
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected 'nA nB', got {header!r}") from None
    edges = []
    for lineno, ln in lines[1:]:
        parts = ln.split("#", 1)[0].split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {ln!r}") from None
    try:
        return BipartiteGraphState.from_edges(n_A, n_B, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph(g: BipartiteGraphState) -> str:
    lines = [f"{g.n_A} {g.n_B}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def read_graph(path: str | os.PathLike) -> BipartiteGraphState:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: BipartiteGraphState, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
