"""Verification of generalized pentagonal geometries and the derived views:
deficiency graph, opposite designs, pair census and the D/S/T decomposition.

The verifier recomputes everything from the line set; it never trusts
structure supplied by a constructor or a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import Geometry, PentError, RegularGraph, SteinerSystem, VerificationReport
from .designs import verify_steiner
from .graphs import components, girth
from .params import PreconditionViolated


class NotWRegular(PentError):
    pass


class TriangleFound(PentError):
    pass


class NotSteiner(PentError):
    pass


class CensusMismatch(PentError):
    pass


class DecompositionMismatch(PentError):
    pass


@dataclass(frozen=True)
class DeficiencyView:
    """Deficiency graph ``D`` plus, per point ``x``, ``W[x] = N_D(x)`` and the
    indices (into ``Geometry.lines``) of the lines inside ``W[x]``."""

    graph: RegularGraph
    W: tuple[tuple[int, ...], ...]
    opposite_blocks: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PairCensus:
    adjacent: int
    distance2: int
    distance_ge3: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.adjacent, self.distance2, self.distance_ge3)


@dataclass(frozen=True)
class Decomposition:
    """Edge partition of K_v into D, S (pairs inside opposite blocks) and T.

    ``S_blocks[x]`` lists the opposite lines of ``x``; ``T_lines`` the
    non-opposite lines, whose pairs are exactly the edges of T.
    """

    D: RegularGraph
    S: RegularGraph
    T: RegularGraph
    S_blocks: tuple[tuple[tuple[int, ...], ...], ...]
    T_lines: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IntersectionProfile:
    x: int
    y: int
    u: int
    common_points: tuple[int, ...]
    shared_blocks: tuple[tuple[int, ...], ...]
    subdesign_ok: bool | None


class _Analysis:
    """Everything derived from a geometry, computed once."""

    def __init__(self, g: Geometry):
        self.g = g
        v = g.v
        self.v = v
        lines = g.lines
        self.in_range = all(0 <= x < v for L in lines for x in L)
        self.sizes = sorted({len(L) for L in lines})
        self.k = g.k if g.k is not None else (len(lines[0]) if lines else 0)
        self.pls = VerificationReport()
        self.ok = False
        self._pls_checks()
        if not self.ok:
            return
        k = self.k
        arr = np.asarray(lines, dtype=np.int64).reshape(len(lines), k)
        self.arr = arr
        line_of = np.full((v, v), -1, dtype=np.int64)
        ids = np.arange(len(lines))
        for i, j in combinations(range(k), 2):
            line_of[arr[:, i], arr[:, j]] = ids
            line_of[arr[:, j], arr[:, i]] = ids
        self.line_of = line_of
        D = line_of < 0
        np.fill_diagonal(D, False)
        self.D = D
        self.adj = tuple(tuple(int(y) for y in np.flatnonzero(row)) for row in D)
        self.graph = RegularGraph(v, self.adj)
        self.degrees = D.sum(axis=1)
        self.w = g.w if g.w is not None else (int(self.degrees[0]) if v else 0)
        # Opposite lines of x: lines all of whose points lie in W_x.
        opp = []
        for x in range(v):
            W = self.adj[x]
            if len(W) < 2:
                opp.append(())
                continue
            sub = line_of[np.ix_(W, W)]
            cand = np.unique(sub[sub >= 0])
            inside = np.all(D[x][arr[cand]], axis=1) if cand.size else np.zeros(0, dtype=bool)
            opp.append(tuple(int(c) for c in cand[inside]))
        self.opp = tuple(opp)
        self._common = None

    def _pls_checks(self) -> None:
        g, rep, v = self.g, self.pls, self.v
        lines = g.lines
        bad = [L for L in lines if any(x < 0 or x >= v for x in L)]
        rep.add("point ids in range", not bad, f"all ids in 0..{v - 1}" if not bad else "line uses an id outside 0..v-1",
                bad[0] if bad else None)
        k = self.k
        wrong = [L for L in lines if len(L) != k]
        rep.add("line size", bool(lines) and not wrong and k >= 2,
                f"all {len(lines)} lines have {k} points" if not wrong else f"{len(wrong)} lines not of size {k}",
                wrong[0] if wrong else None)
        dup = next((a for a, b in zip(lines, lines[1:]) if a == b), None)
        rep.add("no duplicate lines", dup is None, "" if dup is None else "line occurs more than once", dup)
        if bad or wrong or not lines:
            return
        deg = np.bincount(np.asarray(lines, dtype=np.int64).ravel(), minlength=v)
        r = g.r if g.r is not None else int(deg[0])
        self.r = r
        off = np.flatnonzero(deg != r)
        rep.add("replication", off.size == 0,
                f"every point on {r} lines" if off.size == 0 else f"point {int(off[0])} lies on {int(deg[off[0]])} lines, expected {r}",
                [int(off[0])] if off.size else None)
        codes = np.asarray([a * v + b for L in lines for a, b in combinations(L, 2)], dtype=np.int64)
        uniq, counts = np.unique(codes, return_counts=True)
        multi = np.flatnonzero(counts > 1)
        if multi.size:
            a, b = divmod(int(uniq[multi[0]]), v)
            rep.add("pairs on at most one line", False, f"pair {{{a}, {b}}} lies on {int(counts[multi[0]])} lines", [a, b])
        else:
            rep.add("pairs on at most one line", True, "partial linear space")
        if any(p is not None for p in (g.k, g.r, g.w)):
            inferred_k = len(lines[0])
            inferred_r = int(deg[0])
            mism = []
            if g.k is not None and g.k != inferred_k:
                mism.append(f"k declared {g.k}, data has {inferred_k}")
            if g.r is not None and g.r != inferred_r:
                mism.append(f"r declared {g.r}, data has {inferred_r}")
            rep.add("declared parameters", not mism, "; ".join(mism))
        self.ok = rep.overall

    def common(self) -> np.ndarray:
        """``C[x, y] = |W_x & W_y|`` (float matmul is exact at these sizes)."""
        if self._common is None:
            A = self.D.astype(np.float32)
            self._common = np.rint(A @ A).astype(np.int64)
        return self._common


@lru_cache(maxsize=8)
def _analyze(g: Geometry) -> _Analysis:
    return _Analysis(g)


def verify_pls(g: Geometry) -> VerificationReport:
    """Uniform, regular partial linear space checks."""
    a = _analyze(g)
    rep = VerificationReport(_params(a))
    rep.extend(a.pls)
    return rep


def _params(a: _Analysis) -> dict:
    out = {"v": a.v, "lines": len(a.g.lines), "k": a.k}
    if hasattr(a, "r"):
        out["r"] = a.r
    if hasattr(a, "w"):
        out["w"] = a.w
    return out


def _require_pls(g: Geometry) -> _Analysis:
    a = _analyze(g)
    if not a.ok:
        failed = ", ".join(c.name for c in a.pls.failures())
        raise PreconditionViolated(f"not a uniform regular partial linear space ({failed})")
    return a


def deficiency(g: Geometry) -> DeficiencyView:
    """The deficiency graph; raises if it is not w-regular or has a triangle."""
    a = _require_pls(g)
    off = np.flatnonzero(a.degrees != a.w)
    if off.size:
        x = int(off[0])
        raise NotWRegular(f"point {x} has {int(a.degrees[x])} non-collinear points, expected {a.w}")
    tri = _find_triangle(a)
    if tri is not None:
        raise TriangleFound(f"deficiency graph contains triangle {tri}")
    return DeficiencyView(a.graph, a.adj, a.opp)


def _find_triangle(a: _Analysis) -> tuple[int, int, int] | None:
    D = a.D
    for x in range(a.v):
        for y in a.adj[x]:
            if y > x:
                both = np.flatnonzero(D[x] & D[y])
                if both.size:
                    return (x, y, int(both[0]))
    return None


def _opposite_failure(a: _Analysis, x: int) -> str | None:
    k, w = a.k, len(a.adj[x])
    blocks = [a.g.lines[i] for i in a.opp[x]]
    expect = w * (w - 1) / (k * (k - 1))
    if len(blocks) != expect:
        return f"point {x}: {len(blocks)} lines inside W_x, an S(2,{k},{w}) has {expect:g}"
    covered = {p for B in blocks for p in combinations(B, 2)}
    for p in combinations(a.adj[x], 2):
        if p not in covered:
            return f"point {x}: pair {{{p[0]}, {p[1]}}} of W_x not on a line inside W_x"
    return None


def opposite_design(g: Geometry, x: int) -> SteinerSystem:
    """``x^opp``: the lines inside ``W_x``, checked to form an S(2, k, w)."""
    a = _require_pls(g)
    if not 0 <= x < a.v:
        raise PentError(f"point {x} out of range")
    why = _opposite_failure(a, x)
    if why:
        raise NotSteiner(why)
    return SteinerSystem(a.adj[x], a.k, tuple(g.lines[i] for i in a.opp[x]))


def verify_pent(g: Geometry) -> VerificationReport:
    """Decide whether ``g`` is a PENT(k, r, w).

    Parameters not declared on ``g`` are inferred: k from the first line, r
    from point 0, w from the deficiency degree of point 0. Girth,
    connectivity and disjointness of the opposite designs are reported as
    properties; the equivalence of the last two with girth at least 5 is
    checked as an internal-consistency item.
    """
    a = _analyze(g)
    rep = VerificationReport()
    rep.extend(a.pls)
    if not a.ok:
        rep.parameters = _params(a)
        return rep
    v, k, r, w = a.v, a.k, a.r, a.w
    rep.parameters = {"k": k, "r": r, "w": w, "v": v, "lines": len(g.lines)}
    off = np.flatnonzero(a.degrees != w)
    rep.add("deficiency graph w-regular", off.size == 0,
            f"every point has {w} non-collinear points" if off.size == 0
            else f"point {int(off[0])} has {int(a.degrees[off[0]])} non-collinear points, expected {w}",
            [int(off[0])] if off.size else None)
    tri = _find_triangle(a)
    rep.add("deficiency graph triangle-free", tri is None, "" if tri is None else f"triangle {tri}", tri)
    first_bad = None
    nbad = 0
    for x in range(v):
        why = _opposite_failure(a, x)
        if why:
            nbad += 1
            if first_bad is None:
                first_bad = (x, why)
    rep.add("opposite designs", first_bad is None,
            f"every x^opp is an S(2,{k},{w})" if first_bad is None else f"{nbad} points fail; first: {first_bad[1]}",
            [first_bad[0]] if first_bad else None)
    rep.add("point count", v == r * (k - 1) + w + 1, f"v = {v}, r(k-1)+w+1 = {r * (k - 1) + w + 1}")

    gth = girth(a.graph)
    comps = components(a.graph)
    owners = np.zeros(len(g.lines), dtype=np.int64)
    for blocks in a.opp:
        owners[list(blocks)] += 1
    disjoint = bool(np.all(owners <= 1))
    C = a.common()
    off_diag = C[~np.eye(v, dtype=bool)] if v > 1 else np.zeros(1, dtype=np.int64)
    max_common = int(off_diag.max()) if off_diag.size else 0
    girth5 = gth >= 5
    consistent = disjoint == (max_common <= 1) == girth5
    rep.add("girth/disjointness consistency", consistent,
            f"girth {gth}, opposite designs block-disjoint: {disjoint}, max |W_x & W_y| = {max_common}")
    if w == 0 and off.size == 0:
        rep.extend(verify_steiner(SteinerSystem(tuple(range(v)), k, g.lines)), prefix="degenerate w=0: ")
    elif w == 1 and off.size == 0:
        from .core import Gdd
        from .designs import verify_gdd

        groups = tuple(a.graph.edges())
        rep.extend(verify_gdd(Gdd(v, k, groups, g.lines)), prefix="degenerate w=1: ")
    rep.properties = {
        "girth": gth,
        "connected": len(comps) == 1,
        "components": len(comps),
        "opposite_designs_block_disjoint": disjoint,
        "max_common_opposite_points": max_common,
    }
    return rep


def _require_girth5(g: Geometry) -> _Analysis:
    rep = verify_pent(g)
    if not rep.overall:
        raise PreconditionViolated("geometry does not verify as a PENT")
    if rep.properties["girth"] < 5:
        raise PreconditionViolated(f"deficiency graph has girth {rep.properties['girth']} < 5")
    return _analyze(g)


def pair_census(g: Geometry) -> PairCensus:
    """Counts of adjacent, distance-2 and further pairs of D, checked against
    ``(wv/2, w(w-1)v/2, (v-w^2-1)v/2)``."""
    a = _require_girth5(g)
    v, w = a.v, a.w
    C = a.common()
    iu = np.triu_indices(v, 1)
    adj = a.D[iu]
    adjacent = int(adj.sum())
    distance2 = int(((C[iu] > 0) & ~adj).sum())
    rest = v * (v - 1) // 2 - adjacent - distance2
    census = PairCensus(adjacent, distance2, rest)
    expect = (w * v // 2, w * (w - 1) * v // 2, (v - w * w - 1) * v // 2)
    if census.as_tuple() != expect:
        raise CensusMismatch(f"census {census.as_tuple()} differs from formula {expect}")
    return census


def decomposition(g: Geometry) -> Decomposition:
    """The D/S/T decomposition of K_v for a girth-5 PENT, with its regularity
    and K_k-covering properties checked."""
    a = _require_girth5(g)
    v, k, r, w = a.v, a.k, a.r, a.w
    lines = g.lines
    is_opp = np.zeros(len(lines), dtype=bool)
    for blocks in a.opp:
        is_opp[list(blocks)] = True
    S = np.zeros((v, v), dtype=bool)
    T = np.zeros((v, v), dtype=bool)
    for i, L in enumerate(lines):
        M = S if is_opp[i] else T
        for p, q in combinations(L, 2):
            M[p, q] = M[q, p] = True
    if np.any(S & T):
        raise DecompositionMismatch("a pair lies in both S and T")
    union = a.D | S | T
    np.fill_diagonal(union, True)
    if not union.all():
        raise DecompositionMismatch("D, S and T do not cover every pair")
    s_deg = set(S.sum(axis=1).tolist())
    t_deg = set(T.sum(axis=1).tolist())
    t_expect = v - 1 - w - w * (w - 1)
    if s_deg != {w * (w - 1)}:
        raise DecompositionMismatch(f"S degrees {sorted(s_deg)}, expected {w * (w - 1)}")
    if t_deg != {t_expect}:
        raise DecompositionMismatch(f"T degrees {sorted(t_deg)}, expected {t_expect}")
    t_lines = tuple(L for i, L in enumerate(lines) if not is_opp[i])
    if k >= 2 and (w * (w - 1)) % (k - 1) == 0 and r == w * (w - 1) // (k - 1) + 1:
        pts = sorted(x for L in t_lines for x in L)
        if pts != list(range(v)):
            raise DecompositionMismatch("non-opposite lines do not partition the points")
    to_graph = lambda M: RegularGraph(v, tuple(tuple(int(y) for y in np.flatnonzero(row)) for row in M))
    return Decomposition(
        a.graph,
        to_graph(S),
        to_graph(T),
        tuple(tuple(lines[i] for i in blocks) for blocks in a.opp),
        t_lines,
    )


def intersection_profile(g: Geometry, x: int, y: int) -> IntersectionProfile:
    """``u = |W_x & W_y|`` and the blocks shared by x^opp and y^opp; for
    ``u >= 2`` the shared blocks are checked to form an S(2, k, u) on the
    common points."""
    if x == y:
        raise PentError("intersection profile needs two distinct points")
    a = _require_pls(g)
    U = tuple(sorted(set(a.adj[x]) & set(a.adj[y])))
    shared = tuple(g.lines[i] for i in sorted(set(a.opp[x]) & set(a.opp[y])))
    ok = None
    if len(U) >= 2:
        inside = tuple(B for B in shared if set(B) <= set(U))
        ok = verify_steiner(SteinerSystem(U, a.k, inside)).overall
    return IntersectionProfile(x, y, len(U), U, shared, ok)


def distance2_characterization(g: Geometry) -> VerificationReport:
    """Check that two points are at distance 2 in D exactly when some
    opposite design has a line through both."""
    a = _require_pls(g)
    v = a.v
    rep = VerificationReport({"v": v})
    covered = np.zeros((v, v), dtype=bool)
    for blocks in a.opp:
        for i in blocks:
            L = g.lines[i]
            for p, q in combinations(L, 2):
                covered[p, q] = covered[q, p] = True
    dist2 = (a.common() > 0) & ~a.D
    np.fill_diagonal(dist2, False)
    diff = np.argwhere(np.triu(dist2 != covered, 1))
    if diff.size:
        p, q = (int(t) for t in diff[0])
        rep.add("distance 2 iff in a common opposite design", False,
                f"{len(diff)} pairs disagree; {{{p}, {q}}}: distance 2 = {bool(dist2[p, q])}, "
                f"on an opposite line = {bool(covered[p, q])}", [p, q])
    else:
        rep.add("distance 2 iff in a common opposite design", True, f"{int(np.triu(dist2, 1).sum())} pairs at distance 2")
    return rep


def opposite_design_pairs(g: Geometry) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Opposite design pairs ``(A, B)``: disjoint point sets with ``W_a = B``
    for every ``a`` in A and ``W_b = A`` for every ``b`` in B."""
    a = _require_pls(g)
    found = set()
    for x in range(a.v):
        B = a.adj[x]
        if not B:
            continue
        A = a.adj[B[0]]
        if x not in A or set(A) & set(B):
            continue
        if all(a.adj[b] == A for b in B) and all(a.adj[p] == B for p in A):
            found.add((min(A, B), max(A, B)))
    return sorted(found)
