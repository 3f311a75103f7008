"""Regular-graph utilities: girth, connectivity, the named Moore graphs and
seeded random generation of connected w-regular graphs of bounded girth."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .core import PentError, RegularGraph, SearchFailed
from .params import PreconditionViolated, moore_bound

INFINITE = math.inf


def girth(g: RegularGraph) -> int | float:
    """Length of a shortest cycle, or ``INFINITE`` for a forest.

    Breadth-first search from every vertex; a search stops as soon as it can
    no longer improve the best cycle found so far.
    """
    best = INFINITE
    adj = g.adj
    for root in range(g.v):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if 2 * dx + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dx + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    best = min(best, dx + dist[y] + 1)
        if best == 3:
            return 3
    return best


def is_connected(g: RegularGraph) -> bool:
    if g.v <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.v


def components(g: RegularGraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen: set[int] = set()
    out = []
    for s in range(g.v):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def regularity_degree(g: RegularGraph) -> int | None:
    """The common vertex degree, or ``None`` if the graph is not regular."""
    degs = {len(nb) for nb in g.adj}
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


def complement(g: RegularGraph) -> RegularGraph:
    allv = set(range(g.v))
    return RegularGraph(g.v, tuple(tuple(sorted(allv - set(nb) - {x})) for x, nb in enumerate(g.adj)))


def cycle_graph(n: int) -> RegularGraph:
    return RegularGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> RegularGraph:
    return RegularGraph.from_edges(n, combinations(range(n), 2))


def petersen() -> RegularGraph:
    """Kneser graph K(5, 2): 2-subsets of {0..4} in lexicographic order,
    adjacent when disjoint."""
    subsets = list(combinations(range(5), 2))
    return RegularGraph.from_edges(
        10,
        [(i, j) for i, j in combinations(range(10), 2) if not set(subsets[i]) & set(subsets[j])],
    )


def hoffman_singleton() -> RegularGraph:
    """The 50-vertex (7, 5)-graph from five pentagons and five pentagrams.

    Pentagon ``h`` vertex ``j`` is ``5h + j``; pentagram ``i`` vertex ``l``
    is ``25 + 5i + l``. Pentagon vertex (h, j) joins pentagram vertex (i, l)
    when ``l = h*i + j (mod 5)``.
    """
    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((5 * h + j, 5 * h + (j + 1) % 5))
            edges.append((25 + 5 * h + j, 25 + 5 * h + (j + 2) % 5))
    for h in range(5):
        for j in range(5):
            for i in range(5):
                edges.append((5 * h + j, 25 + 5 * i + (h * i + j) % 5))
    return RegularGraph.from_edges(50, edges)


def shift_automorphism(g: RegularGraph) -> int | None:
    """Smallest ``d`` with ``d | v`` and ``d < v`` such that ``x -> x + d (mod v)``
    is an automorphism of ``g``, or ``None``."""
    v = g.v
    adj = [set(nb) for nb in g.adj]
    for d in range(1, v):
        if v % d:
            continue
        if all((y + d) % v in adj[(x + d) % v] for x in range(v) for y in adj[x]):
            return d
    return None


@dataclass(frozen=True)
class GraphGenParams:
    """Inputs to :func:`random_regular_girth`.

    ``orbits`` selects the generation strategy. ``None`` picks automatically;
    ``d >= 2`` (a divisor of ``v``) searches for a graph invariant under
    ``x -> x + d (mod v)``; ``1`` uses plain edge-swap repair with no imposed
    symmetry.
    """

    v: int
    w: int
    min_girth: int = 5
    seed: int = 0
    max_attempts: int = 20
    max_swaps: int = 20000
    orbits: int | None = None

    def __post_init__(self):
        if (self.v * self.w) % 2:
            raise PentError(f"v*w must be even, got v={self.v}, w={self.w}")
        if self.v <= self.w:
            raise PentError(f"need v > w, got v={self.v}, w={self.w}")
        if self.min_girth < 3:
            raise PentError(f"min_girth must be at least 3, got {self.min_girth}")
        if self.orbits is not None and (self.orbits < 1 or self.v % self.orbits):
            raise PentError(f"orbits must be a positive divisor of v={self.v}, got {self.orbits}")


def _random_simple_regular(v: int, w: int, rng: random.Random) -> list[set[int]] | None:
    # Stub pairing that only ever joins two stubs forming a new simple edge.
    adj: list[set[int]] = [set() for _ in range(v)]
    stubs = [x for x in range(v) for _ in range(w)]
    rng.shuffle(stubs)
    while stubs:
        a = stubs.pop()
        for _ in range(50):
            j = rng.randrange(len(stubs))
            b = stubs[j]
            if b != a and b not in adj[a]:
                break
        else:
            return None
        stubs[j] = stubs[-1]
        stubs.pop()
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _short_cycles_through(adj: list[set[int]], x: int, y: int, g: int) -> list[int]:
    """``out[l]`` is the number of cycles of length ``l < g`` using edge x-y."""
    out = [0] * g
    on_path = {x, y}

    # Simple paths y -> ... -> x of at most g-2 edges avoiding the edge x-y.
    def extend(u: int, depth: int) -> None:
        for z in adj[u]:
            if z == x:
                if depth >= 2:
                    out[depth + 1] += 1
                continue
            if depth < g - 2 and z not in on_path:
                on_path.add(z)
                extend(z, depth + 1)
                on_path.discard(z)

    extend(y, 1)
    return out


def _bad(adj: list[set[int]], x: int, y: int, g: int) -> int:
    return sum(_short_cycles_through(adj, x, y, g))


def _count_short_cycles(adj: list[set[int]], g: int) -> int:
    per_length = [0] * g
    for x in range(len(adj)):
        for y in adj[x]:
            if x < y:
                for length, c in enumerate(_short_cycles_through(adj, x, y, g)):
                    per_length[length] += c
    # Each cycle of length l was seen once from each of its l edges.
    return sum(c // length for length, c in enumerate(per_length) if length)


def _repair(adj: list[set[int]], g: int, rng: random.Random, max_swaps: int) -> bool:
    """Double-edge swaps that never increase the number of cycles shorter than g."""
    v = len(adj)
    cost = _count_short_cycles(adj, g)
    tabu: deque = deque(maxlen=64)
    edges = [(x, y) for x in range(v) for y in adj[x] if x < y]
    bad = [e for e in edges if _bad(adj, *e, g)]
    for _ in range(max_swaps):
        if cost == 0:
            return True
        if not bad:
            edges = [(x, y) for x in range(v) for y in adj[x] if x < y]
            bad = [e for e in edges if _bad(adj, *e, g)]
        i = rng.randrange(len(bad))
        a, b = bad[i]
        if b not in adj[a] or not _bad(adj, a, b, g):
            bad[i] = bad[-1]
            bad.pop()
            continue
        if rng.random() < 0.5:
            a, b = b, a
        c, d = edges[rng.randrange(len(edges))]
        if rng.random() < 0.5:
            c, d = d, c
        if len({a, b, c, d}) < 4 or c in adj[a] or d in adj[b] or d not in adj[c]:
            continue
        key = frozenset(((min(a, c), max(a, c)), (min(b, d), max(b, d))))
        if key in tabu:
            continue
        delta = -_bad(adj, a, b, g)
        adj[a].discard(b)
        adj[b].discard(a)
        delta -= _bad(adj, c, d, g)
        adj[c].discard(d)
        adj[d].discard(c)
        adj[a].add(c)
        adj[c].add(a)
        delta += _bad(adj, a, c, g)
        adj[b].add(d)
        adj[d].add(b)
        delta += _bad(adj, b, d, g)
        if delta <= 0:
            cost += delta
            tabu.append(frozenset(((min(a, b), max(a, b)), (min(c, d), max(c, d)))))
            edges = [(x, y) for x in range(v) for y in adj[x] if x < y]
            for e in ((min(a, c), max(a, c)), (min(b, d), max(b, d))):
                if _bad(adj, *e, g):
                    bad.append(e)
        else:
            for p, q in ((a, c), (b, d)):
                adj[p].discard(q)
                adj[q].discard(p)
            for p, q in ((a, b), (c, d)):
                adj[p].add(q)
                adj[q].add(p)
    return cost == 0


# Voltage lifts.  A base multigraph on d vertices carries a voltage in Z_n on
# every edge; the lift has vertex (i, x) for each base vertex i and x in Z_n,
# joined to (j, x + a) along a base edge i -> j of voltage a.  A cycle of the
# lift projects to a closed non-backtracking walk of net voltage zero, so
# girth >= g amounts to: no such walk of length < g sums to zero.


def _base_multigraph(d: int, w: int, rng: random.Random) -> list[tuple[int, int]] | None:
    # Two loops at one base vertex always close a 4-cycle (a + b - a - b), so
    # each vertex gets at most one loop and cross-degree w or w - 2.
    opts = [c for c in (w - 2, w) if c >= 1 and (d * c) % 2 == 0]
    if not opts:
        return None
    c = opts[0] if len(opts) == 1 or rng.random() < 0.75 else opts[1]
    for _ in range(100):
        stubs = [i for i in range(d) for _ in range(c)]
        rng.shuffle(stubs)
        pairs = [(stubs[2 * t], stubs[2 * t + 1]) for t in range(len(stubs) // 2)]
        if all(a != b for a, b in pairs):
            return pairs + [(i, i) for i in range(d) for _ in range((w - c) // 2)]
    return None


def _walks_through(edges, volt, t, g, by_src) -> list[tuple[int, int]]:
    """Closed non-backtracking walks of length < g starting along edge ``t``,
    each as (coefficient of t's voltage, sum of the other voltages)."""
    out = []
    i, j = edges[t]

    def rec(cur, coef, rest, last, length):
        for dart in by_src[cur]:
            if dart ^ 1 == last:
                continue
            e = dart >> 1
            sign = -1 if dart & 1 else 1
            head = edges[e][0] if sign < 0 else edges[e][1]
            if e == t:
                c2, r2 = coef + sign, rest
            else:
                c2, r2 = coef, rest + sign * volt[e]
            if head == i:
                out.append((c2, r2))
            if length + 1 < g - 1:
                rec(head, c2, r2, dart, length + 1)

    rec(j, 1, 0, 2 * t, 1)
    if i == j:
        out.append((1, 0))
    return out


def _voltage_conflicts(edges, volt, t, g, by_src, n) -> list[int]:
    """``conf[a]``: zero-sum short walks through edge ``t`` if its voltage were ``a``."""
    conf = [0] * n
    for c, r in _walks_through(edges, volt, t, g, by_src):
        c %= n
        r %= n
        if c == 0:
            if r == 0:
                conf = [x + 1 for x in conf]
            continue
        h = math.gcd(c, n)
        if r % h:
            continue
        m = n // h
        a0 = (-(r // h) * pow(c // h, -1, m)) % m
        for a in range(a0, n, m):
            conf[a] += 1
    return conf


def _lift_search(v: int, w: int, g: int, d: int, rng: random.Random, steps: int) -> list[set[int]] | None:
    """Min-conflicts search over voltages; vertex (i, x) is labelled d*x + i."""
    n = v // d
    edges = _base_multigraph(d, w, rng)
    if edges is None:
        return None
    by_src: list[list[int]] = [[] for _ in range(d)]
    for t, (i, j) in enumerate(edges):
        by_src[i].append(2 * t)
        by_src[j].append(2 * t + 1)
    volt = [rng.randrange(1, n) for _ in edges]
    ne = len(edges)
    bad: list[int] = []
    for step in range(steps + 1):
        if step % ne == 0:
            bad = [t for t in range(ne) if _voltage_conflicts(edges, volt, t, g, by_src, n)[volt[t]]]
            if not bad:
                break
        if step == steps:
            return None
        t = rng.choice(bad) if rng.random() < 0.8 else rng.randrange(ne)
        if rng.random() < 0.1:
            volt[t] = rng.randrange(n)
            continue
        conf = _voltage_conflicts(edges, volt, t, g, by_src, n)
        low = min(conf)
        volt[t] = rng.choice([a for a in range(n) if conf[a] == low])
    adj: list[set[int]] = [set() for _ in range(v)]
    for t, (i, j) in enumerate(edges):
        for x in range(n):
            p, q = d * x + i, d * ((x + volt[t]) % n) + j
            adj[p].add(q)
            adj[q].add(p)
    return adj


def _orbit_choice(v: int, w: int) -> int:
    # Prefer two orbits; an odd orbit length keeps every edge orbit full.
    divisors = [d for d in range(2, v // 3 + 1) if v % d == 0]
    if not divisors:
        return 1
    odd = [d for d in divisors if (v // d) % 2]
    return (odd or divisors)[0] if 2 not in divisors else 2


def random_regular_girth(params: GraphGenParams) -> RegularGraph:
    """A connected ``w``-regular graph on ``v`` vertices with girth at least
    ``min_girth``, deterministic in ``seed``.

    With ``d`` orbits the graph is a random voltage lift of a ``d``-vertex base
    multigraph over Z_{v/d}, found by min-conflicts search on the voltages and
    labelled so that ``x -> x + d (mod v)`` is an automorphism. With one orbit
    a configuration-model pairing is repaired by double-edge swaps. Each
    attempt uses a derived seed; :class:`SearchFailed` is raised once
    ``max_attempts`` are used up. The result is re-checked before return.
    """
    v, w, g = params.v, params.w, params.min_girth
    if g in (5, 6) and v < moore_bound(w, g):
        raise PreconditionViolated(f"v={v} is below the Moore bound {moore_bound(w, g)} for girth {g}")
    d = params.orbits if params.orbits is not None else _orbit_choice(v, w)
    last = None
    for attempt in range(params.max_attempts):
        rng = random.Random(f"graph:{params.seed}:{attempt}")
        if d > 1:
            adj = _lift_search(v, w, g, d, rng, min(params.max_swaps, 64 * w))
            if adj is None:
                last = "voltage search budget exhausted"
                continue
        else:
            adj = _random_simple_regular(v, w, rng)
            if adj is None:
                last = "stub pairing stuck"
                continue
            if not _repair(adj, g, rng, params.max_swaps):
                last = "swap budget exhausted"
                continue
        graph = RegularGraph(v, tuple(tuple(sorted(s)) for s in adj))
        if regularity_degree(graph) != w or girth(graph) < g:
            last = "candidate failed re-verification"
            continue
        if not is_connected(graph):
            last = "disconnected"
            continue
        return graph
    raise SearchFailed(
        f"no connected ({w},{g}+)-graph on {v} vertices after {params.max_attempts} attempts",
        {"attempts": params.max_attempts, "orbits": d, "last_failure": last},
    )
