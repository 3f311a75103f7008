"""Incidence-structure data model shared by the rest of the package.

Points are dense integers ``0..v-1``. A block is a strictly increasing tuple
of point ids. Containers keep blocks in the order given; duplicate blocks are
preserved so that verification can report them instead of hiding them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

Block = tuple[int, ...]
Pair = tuple[int, int]


class PentError(ValueError):
    """Base class for every error raised by this package."""


class DuplicatePoint(PentError):
    pass


class NegativeId(PentError):
    pass


class SearchFailed(PentError):
    """A randomized search ran out of budget.

    ``diagnostics`` carries whatever the search wants to report (attempts,
    best coverage, last girth, ...).
    """

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


def normalize_block(ids: Iterable[int]) -> Block:
    """Return ``ids`` as a sorted tuple.

    Repeated ids are an error rather than being merged.

    >>> normalize_block([49, 5, 24])
    (5, 24, 49)
    """
    pts = [int(i) for i in ids]
    if not pts:
        raise PentError("a block needs at least one point")
    neg = [i for i in pts if i < 0]
    if neg:
        raise NegativeId(f"negative point id {neg[0]}")
    out = tuple(sorted(pts))
    for a, b in zip(out, out[1:]):
        if a == b:
            raise DuplicatePoint(f"point {a} repeated in block {list(pts)}")
    return out


def pair_iterator(block: Sequence[int]) -> Iterator[Pair]:
    """Yield the C(k, 2) pairs of a normalized block, each as ``(small, large)``."""
    return combinations(block, 2)


def block_array(blocks: Sequence[Block], k: int) -> np.ndarray:
    """Stack equal-length blocks into an ``(n, k)`` integer array."""
    if not blocks:
        return np.zeros((0, k), dtype=np.int64)
    return np.asarray(blocks, dtype=np.int64).reshape(len(blocks), k)


@dataclass(frozen=True)
class Geometry:
    """A point/line incidence structure, the candidate PENT(k, r, w).

    ``k``, ``r`` and ``w`` may be left as ``None``; the verifier then infers
    them from the data.
    """

    v: int
    lines: tuple[Block, ...]
    k: int | None = None
    r: int | None = None
    w: int | None = None

    @classmethod
    def from_lines(cls, v: int, lines: Iterable[Iterable[int]], k=None, r=None, w=None) -> "Geometry":
        return cls(v, tuple(sorted(normalize_block(L) for L in lines)), k, r, w)

    @property
    def block_size(self) -> int:
        if self.k is not None:
            return self.k
        if not self.lines:
            raise PentError("cannot infer block size of an empty geometry")
        return len(self.lines[0])

    def point_degrees(self) -> list[int]:
        deg = [0] * self.v
        for L in self.lines:
            for x in L:
                if 0 <= x < self.v:
                    deg[x] += 1
        return deg

    def with_params(self, k: int, r: int, w: int) -> "Geometry":
        return Geometry(self.v, self.lines, k, r, w)


@dataclass(frozen=True)
class SteinerSystem:
    """A putative S(2, k, |points|); use ``designs.verify_steiner`` to check it."""

    points: tuple[int, ...]
    k: int
    blocks: tuple[Block, ...]

    @property
    def order(self) -> int:
        return len(self.points)

    def relabel(self, mapping: Sequence[int] | dict[int, int]) -> "SteinerSystem":
        pts = tuple(sorted(mapping[p] for p in self.points))
        blocks = tuple(sorted(normalize_block(mapping[x] for x in B) for B in self.blocks))
        return SteinerSystem(pts, self.k, blocks)


@dataclass(frozen=True)
class RegularGraph:
    """Simple undirected graph on ``0..v-1`` stored as sorted neighbour tuples.

    The name follows the domain usage; regularity is not enforced here, see
    ``graphs.regularity_degree``.
    """

    v: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adj) != self.v:
            raise PentError(f"adjacency has {len(self.adj)} rows for v={self.v}")
        for x, nb in enumerate(self.adj):
            if x in nb:
                raise PentError(f"self-loop at {x}")
            for y in nb:
                if x not in self.adj[y]:
                    raise PentError(f"asymmetric adjacency {x}->{y}")

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[Iterable[int]]) -> "RegularGraph":
        nbrs: list[set[int]] = [set() for _ in range(v)]
        for e in edges:
            a, b = e
            if a == b:
                raise PentError(f"self-loop at {a}")
            nbrs[a].add(b)
            nbrs[b].add(a)
        return cls(v, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> "RegularGraph":
        mat = np.asarray(mat, dtype=bool)
        return cls(len(mat), tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in mat))

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self.adj[x]

    def degree(self, x: int) -> int:
        return len(self.adj[x])

    def edges(self) -> list[Pair]:
        return [(x, y) for x in range(self.v) for y in self.adj[x] if x < y]

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def has_edge(self, x: int, y: int) -> bool:
        return y in self.adj[x]

    def matrix(self) -> np.ndarray:
        mat = np.zeros((self.v, self.v), dtype=bool)
        for x, nb in enumerate(self.adj):
            mat[x, list(nb)] = True
        return mat

    def to_text(self) -> str:
        """Debugging dump, one ``u: v1 v2 ...`` line per vertex."""
        return "".join(f"{x}: {' '.join(map(str, nb))}\n" for x, nb in enumerate(self.adj))


@dataclass(frozen=True)
class Gdd:
    """A putative k-GDD; ``designs.verify_gdd`` checks the axioms."""

    v: int
    k: int
    groups: tuple[tuple[int, ...], ...]
    blocks: tuple[Block, ...]

    def group_type(self) -> list[tuple[int, int]]:
        """Group type as ``[(size, multiplicity), ...]`` sorted by size."""
        counts: dict[int, int] = {}
        for g in self.groups:
            counts[len(g)] = counts.get(len(g), 0) + 1
        return sorted(counts.items())


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: list[int] | None = None
    required: bool = True

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "pass": self.passed, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if not self.required:
            out["advisory"] = True
        return out


@dataclass
class VerificationReport:
    """Ordered named checks; ``overall`` is the conjunction of required checks.

    ``properties`` holds observations that are not pass/fail criteria, such
    as the girth or connectivity of a deficiency graph.
    """

    parameters: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    properties: dict[str, Any] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def add(self, name: str, passed: bool, detail: str = "", witness=None, required: bool = True) -> bool:
        if witness is not None:
            witness = [int(x) for x in witness]
        self.checks.append(Check(name, bool(passed), detail, witness, required))
        return bool(passed)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.required and not c.passed]

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.witness, c.required))

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "params": _jsonable(self.parameters),
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
        }
        if self.properties:
            out["properties"] = _jsonable(self.properties)
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    return obj
