"""Constructors: graph complements (k = 2), the pentagon-of-groups family,
Moore graph overlays and the randomized k = 3 pipeline."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .core import Block, Geometry, PentError, RegularGraph, SearchFailed, SteinerSystem, normalize_block
from .designs import complete_design, sts, verify_steiner
from .graphs import (
    GraphGenParams,
    complement,
    girth,
    random_regular_girth,
    regularity_degree,
    shift_automorphism,
)
from .params import PreconditionViolated, girth5_min_r, is_admissible, moore_bound
from .pent import verify_pent


class GirthTooSmall(PentError):
    pass


class NotRegular(PentError):
    pass


class NotMooreGraph(PentError):
    pass


class OverlayNotSteiner(PentError):
    pass


def pent2_from_graph(D: RegularGraph) -> Geometry:
    """PENT(2, v-1-w, w) whose lines are the edges of the complement of ``D``."""
    w = regularity_degree(D)
    if w is None:
        raise NotRegular("graph is not regular")
    gth = girth(D)
    if gth < 4:
        raise GirthTooSmall(f"girth {gth} < 4")
    if D.v < 2 * w:
        raise PreconditionViolated(f"need v >= 2w, got v={D.v}, w={w}")
    return Geometry.from_lines(D.v, complement(D).edges(), 2, D.v - 1 - w, w)


def figure1_family(m: int) -> Geometry:
    """PENT(2, 3m-1, 2m) on five groups ``{i*m, ..., i*m+m-1}`` placed around
    a pentagon: every pair inside a group is a line, and so is every pair
    between cyclically adjacent groups."""
    if m < 2:
        raise PreconditionViolated(f"m must be at least 2, got {m}")
    groups = [range(i * m, (i + 1) * m) for i in range(5)]
    lines = [p for grp in groups for p in combinations(grp, 2)]
    for i in range(5):
        lines += [(a, b) for a in groups[i] for b in groups[(i + 1) % 5]]
    return Geometry.from_lines(5 * m, lines, 2, 3 * m - 1, 2 * m)


Overlay = Callable[[tuple[int, ...]], SteinerSystem]


def complete_overlay(W: tuple[int, ...]) -> SteinerSystem:
    return complete_design(len(W)).relabel(list(W))


def sts_overlay(seed: int | None = None) -> Overlay:
    """Overlay placing ``sts(w)`` on a neighbourhood, in sorted order or via a
    seeded random bijection."""
    rng = random.Random(f"overlay:{seed}") if seed is not None else None

    def place(W: tuple[int, ...]) -> SteinerSystem:
        pts = list(W)
        if rng is not None:
            rng.shuffle(pts)
        return sts(len(W)).relabel(pts)

    return place


def moore_overlay(D: RegularGraph, overlay: Overlay) -> Geometry:
    """Lines are the blocks of an S(2, k, w) placed on every neighbourhood of
    a Moore graph of girth 5."""
    w = regularity_degree(D)
    if w is None or girth(D) != 5 or D.v != w * w + 1:
        raise NotMooreGraph(f"need a w-regular graph of girth 5 on w^2+1 vertices (v={D.v}, degree {w})")
    lines: list[Block] = []
    k = None
    for x in range(D.v):
        W = tuple(sorted(D.neighbors(x)))
        s = overlay(W)
        if tuple(sorted(s.points)) != W or not verify_steiner(s).overall:
            raise OverlayNotSteiner(f"overlay on N({x}) is not an S(2,k,{w}) on that set")
        if k is None:
            k = s.k
        elif s.k != k:
            raise OverlayNotSteiner("overlays use different block sizes")
        lines.extend(s.blocks)
    r = (D.v - w - 1) // (k - 1)
    return Geometry.from_lines(D.v, lines, k, r, w)


# Triangle decomposition -----------------------------------------------------


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _tri_edges(t) -> list[tuple[int, int]]:
    a, b, c = t
    return [_edge(a, b), _edge(a, c), _edge(b, c)]


def _orbit_exact_cover(T: RegularGraph, d: int, rng: random.Random, budget: int):
    """Exact cover of E(T) by orbits of triangles under ``x -> x + d``.

    Returns ``(triangles or None, nodes, exhausted)``; ``exhausted`` means the
    search space was fully explored within the node budget.
    """
    v = T.v
    adj = [set(nb) for nb in T.adj]
    cols: dict[tuple[int, int], set] = {e: set() for e in T.edges()}
    rows: dict[tuple, tuple[list, list]] = {}
    seen = set()
    for a in range(d):
        for b in adj[a]:
            for c in adj[a] & adj[b]:
                t = tuple(sorted((a, b, c)))
                if t in seen:
                    continue
                orb = {tuple(sorted(((a + s) % v, (b + s) % v, (c + s) % v))) for s in range(0, v, d)}
                seen |= orb
                es = [e for tt in orb for e in _tri_edges(tt)]
                if len(set(es)) == len(es):
                    rows[min(orb)] = (es, sorted(orb))
    for key, (es, _) in rows.items():
        for e in es:
            cols[e].add(key)
    nodes = 0
    sol: list = []

    def select(r):
        saved = []
        for j in rows[r][0]:
            for i in cols[j]:
                for e in rows[i][0]:
                    if e != j:
                        cols[e].discard(i)
            saved.append(cols.pop(j))
        return saved

    def deselect(r, saved):
        for j in reversed(rows[r][0]):
            cols[j] = saved.pop()
            for i in cols[j]:
                for e in rows[i][0]:
                    if e != j:
                        cols[e].add(i)

    def solve() -> bool:
        nonlocal nodes
        if not cols:
            return True
        nodes += 1
        if nodes > budget:
            return False
        c = min(cols, key=lambda e: len(cols[e]))
        cand = sorted(cols[c])
        rng.shuffle(cand)
        for r in cand:
            sol.append(r)
            saved = select(r)
            if solve():
                return True
            deselect(r, saved)
            sol.pop()
            if nodes > budget:
                return False
        return False

    ok = solve()
    tris = [t for r in sol for t in rows[r][1]] if ok else None
    return tris, nodes, (not ok and nodes <= budget)


class _Bag:
    """Set with O(1) add, remove and uniform sampling."""

    def __init__(self):
        self.items: list = []
        self.pos: dict = {}

    def add(self, x) -> None:
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def remove(self, x) -> None:
        i = self.pos.pop(x)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, x) -> bool:
        return x in self.pos

    def sample(self, rng: random.Random):
        return self.items[rng.randrange(len(self.items))]


def _stinson(T: RegularGraph, rng: random.Random, max_moves: int):
    """Live-point hill climb: take an uncovered edge ``xy``, a second uncovered
    edge ``xz`` with ``yz`` in T, drop the triangle on ``yz`` if any, add ``xyz``."""
    adj = [set(nb) for nb in T.adj]
    free = [set(nb) for nb in T.adj]
    uncovered = _Bag()
    for e in T.edges():
        uncovered.add(e)
    owner: dict[tuple[int, int], tuple] = {}
    best = 0
    total = T.edge_count
    for move in range(max_moves):
        if not uncovered:
            return sorted(set(owner.values())), move, total
        x, y = uncovered.sample(rng)
        if rng.random() < 0.5:
            x, y = y, x
        options = [z for z in free[x] if z != y and z in adj[y]]
        if not options:
            continue
        z = options[rng.randrange(len(options))]
        old = owner.get(_edge(y, z))
        if old is not None:
            for e in _tri_edges(old):
                del owner[e]
                uncovered.add(e)
                free[e[0]].add(e[1])
                free[e[1]].add(e[0])
        t = tuple(sorted((x, y, z)))
        for e in _tri_edges(t):
            owner[e] = t
            uncovered.remove(e)
            free[e[0]].discard(e[1])
            free[e[1]].discard(e[0])
        best = max(best, total - len(uncovered))
    if not uncovered:
        return sorted(set(owner.values())), max_moves, total
    return None, max_moves, best


def _odd_orbit_step(v: int, d: int) -> int:
    # Edges {x, x + v/2} have half-length orbits when v/d is even.
    while (v // d) % 2 == 0:
        d *= 2
    return d


def triangle_decompose(
    T: RegularGraph,
    seed: int,
    max_moves: int | None = None,
    exact_budget: int | None = None,
) -> list[tuple[int, int, int]]:
    """Partition the edges of ``T`` into triangles.

    If ``T`` has a shift automorphism, an exact cover over triangle orbits is
    tried first (refined so that orbits have odd length). Otherwise, or if
    that fails, a live-point hill climb runs for ``max_moves`` moves (default
    ``200 * |E(T)|``; 0 disables it). Raises :class:`SearchFailed` with
    diagnostics when no decomposition is found; that is not a proof that
    none exists.
    """
    odd = [x for x in range(T.v) if len(T.adj[x]) % 2]
    if odd:
        raise PreconditionViolated(f"vertex {odd[0]} has odd degree {len(T.adj[odd[0]])}")
    m = T.edge_count
    if m % 3:
        raise PreconditionViolated(f"|E(T)| = {m} is not divisible by 3")
    if m == 0:
        return []
    rng = random.Random(f"triangles:{seed}")
    adj = [set(nb) for nb in T.adj]
    dead = next((e for e in T.edges() if not adj[e[0]] & adj[e[1]]), None)
    diag = {"edges": m, "dead_edge": dead}
    if dead is not None:
        raise SearchFailed(f"edge {dead} lies in no triangle", diag)
    d = shift_automorphism(T)
    if d is not None:
        d = _odd_orbit_step(T.v, d)
        budget = exact_budget if exact_budget is not None else max(2000, m)
        tris, nodes, exhausted = _orbit_exact_cover(T, d, rng, budget)
        diag.update({"orbit_step": d, "exact_nodes": nodes, "orbit_search_exhausted": exhausted})
        if tris is not None:
            return sorted(tris)
    moves = 200 * m if max_moves is None else max_moves
    if moves > 0:
        tris, used, best = _stinson(T, rng, moves)
        diag.update({"moves": used, "best_covered_edges": best})
        if tris is not None:
            return tris
    raise SearchFailed(f"no triangle decomposition of a graph with {m} edges found", diag)


# Randomized PENT(3, r, w) ------------------------------------------------------


@dataclass(frozen=True)
class HillClimbParams:
    """Inputs to :func:`hill_climb_pent3`.

    ``graph_params`` overrides the deficiency graph generation (its ``v``
    and ``w`` must match); ``max_moves`` bounds the stochastic phase of each
    triangle decomposition and ``exact_budget`` the orbit search nodes.
    """

    w: int
    r: int
    seed: int = 0
    restarts: int = 50
    max_moves: int | None = 0
    exact_budget: int | None = None
    graph_params: GraphGenParams | None = field(default=None, compare=False)

    @property
    def v(self) -> int:
        return 2 * self.r + self.w + 1

    def __post_init__(self):
        if self.w % 6 not in (1, 3):
            raise PreconditionViolated(f"no STS({self.w}): need w = 1 or 3 (mod 6)")
        if not is_admissible((3, self.r, self.w)):
            raise PreconditionViolated(f"PENT(3, {self.r}, {self.w}) is not admissible")
        if self.r < girth5_min_r(3, self.w) or self.v < moore_bound(self.w, 5):
            raise PreconditionViolated(f"r = {self.r} is below the girth-5 bound {girth5_min_r(3, self.w)}")
        if self.restarts < 1:
            raise PreconditionViolated("restarts must be positive")
        gp = self.graph_params
        if gp is not None and (gp.v, gp.w, gp.min_girth) != (self.v, self.w, 5):
            raise PreconditionViolated("graph_params must describe a girth-5 graph with the same v and w")


def _place_opposites(D: RegularGraph, shift: int | None, rng: random.Random) -> list[Block]:
    """STS(w) on every neighbourhood; with a shift, points below the shift get
    random bijections and the rest are translates, keeping the shift."""
    v, w = D.v, len(D.adj[0])
    base = sts(w).blocks
    blocks: list[Block] = []
    reps = range(shift) if shift else range(v)
    for i in reps:
        N = list(D.neighbors(i))
        rng.shuffle(N)
        placed = [normalize_block(N[j] for j in B) for B in base]
        if shift:
            for s in range(0, v, shift):
                blocks.extend(normalize_block((x + s) % v for x in B) for B in placed)
        else:
            blocks.extend(placed)
    return blocks


def _attempt(p: HillClimbParams, restart: int) -> tuple[Geometry | None, dict]:
    rng = random.Random(f"hill:{p.seed}:{restart}")
    v, w = p.v, p.w
    gp = p.graph_params or GraphGenParams(v, w, 5, max_attempts=5)
    gp = GraphGenParams(gp.v, gp.w, 5, rng.getrandbits(63), gp.max_attempts, gp.max_swaps, gp.orbits)
    diag: dict = {"restart": restart}
    try:
        D = random_regular_girth(gp)
    except SearchFailed as exc:
        diag.update(stage="graph", **exc.diagnostics)
        return None, diag
    diag["graph_girth"] = girth(D)
    shift = shift_automorphism(D)
    opp = _place_opposites(D, shift, rng)
    S = {e for B in opp for e in combinations(B, 2)}
    Dset = set(D.edges())
    T_edges = [e for e in combinations(range(v), 2) if e not in S and e not in Dset]
    T = RegularGraph.from_edges(v, T_edges)
    try:
        tris = triangle_decompose(T, rng.getrandbits(63), p.max_moves, p.exact_budget)
    except SearchFailed as exc:
        diag.update(stage="triangles", **exc.diagnostics)
        return None, diag
    g = Geometry.from_lines(v, list(opp) + list(tris), 3, p.r, w)
    rep = verify_pent(g)
    if not rep.overall or rep.properties["girth"] < 5 or not rep.properties["connected"]:
        diag.update(stage="verify", failures=[c.name for c in rep.failures()])
        return None, diag
    return g, diag


def _attempt_star(args):
    return _attempt(*args)


def hill_climb_pent3(p: HillClimbParams, jobs: int = 1) -> Geometry:
    """A verified PENT(3, r, w) with connected girth-5 deficiency graph.

    Each restart draws a fresh random girth-5 graph from a seed derived from
    ``(seed, restart)``, overlays STS(w) on every neighbourhood and
    decomposes the remaining pairs into triangles. The first restart (in
    index order) that verifies is returned, so the result does not depend
    on ``jobs``. Raises :class:`SearchFailed` with per-stage failure counts
    when every restart fails.
    """
    stages: dict[str, int] = {}
    last: dict = {}
    best = 0
    indices = list(range(p.restarts))
    batch = max(1, jobs)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for start in range(0, len(indices), batch):
            chunk = [(p, i) for i in indices[start:start + batch]]
            results = list(pool.map(_attempt_star, chunk)) if pool else [_attempt(*a) for a in chunk]
            for g, diag in results:
                if g is not None:
                    return g
                stages[diag.get("stage", "?")] = stages.get(diag.get("stage", "?"), 0) + 1
                best = max(best, diag.get("best_covered_edges", 0))
                last = diag
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    raise SearchFailed(
        f"no PENT(3, {p.r}, {p.w}) after {p.restarts} restarts",
        {"attempts": p.restarts, "failures_by_stage": stages, "best_covered_edges": best,
         "last_graph_girth": last.get("graph_girth"), "last": last},
    )
