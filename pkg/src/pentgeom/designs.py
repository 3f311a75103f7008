"""Ingredient designs: Steiner systems S(2, k, w), transversal designs and
group divisible design verification."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import Gdd, PentError, SteinerSystem, VerificationReport, normalize_block


class InadmissibleOrder(PentError):
    pass


class NotPrime(PentError):
    pass


class UnsupportedOrder(PentError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class GddType:
    """Group type ``g1^u1 g2^u2 ...`` as sorted ``(size, multiplicity)`` pairs."""

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for size, mult in self.parts:
            if size < 1 or mult < 1:
                raise PentError(f"bad group type part {size}^{mult}")

    @classmethod
    def parse(cls, text: str) -> "GddType":
        """Parse ``"78^3,74^1"`` (a bare ``"5"`` means ``5^1``)."""
        counts: dict[int, int] = {}
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise PentError(f"bad group type token {tok!r}")
            size, mult = int(m.group(1)), int(m.group(2) or 1)
            counts[size] = counts.get(size, 0) + mult
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def of(cls, gdd: Gdd) -> "GddType":
        return cls(tuple(gdd.group_type()))

    @property
    def point_count(self) -> int:
        return sum(s * m for s, m in self.parts)

    def __str__(self) -> str:
        return ",".join(f"{s}^{m}" for s, m in self.parts)


def _pair_codes(blocks, v: int) -> np.ndarray:
    codes = [a * v + b for B in blocks for a, b in combinations(B, 2)]
    return np.asarray(codes, dtype=np.int64)


def verify_steiner(s: SteinerSystem) -> VerificationReport:
    """Check that ``s`` is an S(2, k, |points|)."""
    pts = sorted(s.points)
    w, k = len(pts), s.k
    rep = VerificationReport({"k": k, "w": w, "blocks": len(s.blocks)})
    bad_size = [B for B in s.blocks if len(B) != k]
    rep.add("block size", not bad_size, f"every block has {k} points" if not bad_size
            else f"{len(bad_size)} blocks of wrong size", bad_size[0] if bad_size else None)
    ptset = set(pts)
    stray = [B for B in s.blocks if not set(B) <= ptset]
    rep.add("blocks inside point set", not stray, "" if not stray else "block uses a point outside the design",
            stray[0] if stray else None)
    expect = w * (w - 1) // (k * (k - 1)) if k >= 2 else 0
    integral = k >= 2 and (w * (w - 1)) % (k * (k - 1)) == 0
    rep.add("block count", integral and len(s.blocks) == expect,
            f"{len(s.blocks)} blocks, formula gives {w * (w - 1) / (k * (k - 1)) if k >= 2 else 'n/a'}")
    # Pair coverage on the dense relabelling of the point set.
    index = {p: i for i, p in enumerate(pts)}
    blocks = [tuple(sorted(index[x] for x in B if x in index)) for B in s.blocks]
    codes = _pair_codes(blocks, max(w, 1))
    cover = np.bincount(codes, minlength=w * w) if w else np.zeros(0, dtype=np.int64)
    upper = np.triu(np.ones((w, w), dtype=bool), 1).ravel()
    twice = np.flatnonzero((cover > 1) & upper)
    never = np.flatnonzero((cover == 0) & upper)
    if twice.size:
        a, b = divmod(int(twice[0]), w)
        rep.add("pair coverage", False, f"pair {{{pts[a]}, {pts[b]}}} lies in {int(cover[twice[0]])} blocks", [pts[a], pts[b]])
    elif never.size:
        a, b = divmod(int(never[0]), w)
        rep.add("pair coverage", False, f"pair {{{pts[a]}, {pts[b]}}} is uncovered ({never.size} uncovered pairs)",
                [pts[a], pts[b]])
    else:
        rep.add("pair coverage", True, "every pair in exactly one block")
    return rep


def complete_design(w: int) -> SteinerSystem:
    """S(2, 2, w): every pair is a block."""
    if w < 2:
        raise InadmissibleOrder(f"complete design needs w >= 2, got {w}")
    return SteinerSystem(tuple(range(w)), 2, tuple(combinations(range(w), 2)))


def _bose(w: int) -> list[tuple[int, ...]]:
    # w = 3n, n odd; x o y = (x + y)/2 mod n is idempotent and commutative.
    n = w // 3
    half = (n + 1) // 2
    blocks = [(x, x + n, x + 2 * n) for x in range(n)]
    for i in range(3):
        j = (i + 1) % 3
        for x, y in combinations(range(n), 2):
            blocks.append((x + i * n, y + i * n, ((x + y) * half) % n + j * n))
    return blocks


def skolem_pairs(n: int) -> list[tuple[int, int]]:
    """A Skolem (n = 0, 1 mod 4) or hooked Skolem (n = 2, 3 mod 4) sequence as
    pairs ``(a_i, b_i)`` with ``b_i - a_i = i`` for i = 1..n.

    Positions are 1..2n, or 1..2n-1 and 2n+1 in the hooked case. Found by
    deterministic backtracking that always fills the first free position,
    trying the largest unused difference first.
    """
    if n < 1:
        return []
    hooked = n % 4 in (2, 3)
    top = 2 * n + 1 if hooked else 2 * n
    free = [True] * (top + 2)
    free[0] = free[top + 1] = False
    if hooked:
        free[2 * n] = False
    used = [False] * (n + 1)
    pairs: dict[int, tuple[int, int]] = {}

    def place(p: int, left: int) -> bool:
        if left == 0:
            return True
        while not free[p]:
            p += 1
        for i in range(min(n, top - p), 0, -1):
            if not used[i] and free[p + i]:
                used[i] = True
                free[p] = free[p + i] = False
                pairs[i] = (p, p + i)
                if place(p + 1, left - 1):
                    return True
                used[i] = False
                free[p] = free[p + i] = True
        return False

    if not place(1, n):
        raise InadmissibleOrder(f"no Skolem-type sequence found for n={n}")
    return [pairs[i] for i in range(1, n + 1)]


def _skolem_sts(w: int) -> list[tuple[int, ...]]:
    # w = 6n + 1; base blocks {0, i, b_i + n} developed mod w.
    n = (w - 1) // 6
    blocks = []
    for i, (_, b) in enumerate(skolem_pairs(n), start=1):
        for s in range(w):
            blocks.append((s, (i + s) % w, (b + n + s) % w))
    return blocks


def sts(w: int) -> SteinerSystem:
    """A Steiner triple system of order ``w`` on points ``0..w-1``.

    Bose construction for w = 3 (mod 6); Skolem or hooked Skolem difference
    triples for w = 1 (mod 6).
    """
    if w in (0, 1):
        return SteinerSystem(tuple(range(w)), 3, ())
    if w % 6 == 3:
        blocks = _bose(w)
    elif w % 6 == 1 and w >= 7:
        blocks = _skolem_sts(w)
    else:
        raise InadmissibleOrder(f"no STS({w}): need w = 1 or 3 (mod 6)")
    return SteinerSystem(tuple(range(w)), 3, tuple(sorted(normalize_block(B) for B in blocks)))


def _require_prime(q: int) -> None:
    if not is_prime(q):
        raise NotPrime(f"order {q} is not prime; only prime orders are supported")


def projective_plane(q: int) -> SteinerSystem:
    """PG(2, q) for prime ``q``: points are normalized homogeneous triples."""
    _require_prime(q)
    pts = [(1, a, b) for a in range(q) for b in range(q)] + [(0, 1, a) for a in range(q)] + [(0, 0, 1)]
    blocks = []
    for L in pts:
        blocks.append(normalize_block(i for i, P in enumerate(pts) if sum(x * y for x, y in zip(L, P)) % q == 0))
    return SteinerSystem(tuple(range(len(pts))), q + 1, tuple(sorted(blocks)))


def affine_plane(q: int) -> SteinerSystem:
    """AG(2, q) for prime ``q``; point (x, y) is ``q*x + y``."""
    _require_prime(q)
    blocks = []
    for m in range(q):
        for c in range(q):
            blocks.append(normalize_block(q * x + (m * x + c) % q for x in range(q)))
    for c in range(q):
        blocks.append(normalize_block(q * c + y for y in range(q)))
    return SteinerSystem(tuple(range(q * q)), q, tuple(sorted(blocks)))


def td(k: int, n: int) -> Gdd:
    """Transversal design TD(k, n): groups ``{i*n, ..., i*n + n - 1}``.

    k = 2 and k = 3 work for every n (the latter from the cyclic Latin
    square); k >= 4 needs n prime and k <= n + 1.
    """
    if n < 1 or k < 2:
        raise UnsupportedOrder(f"TD({k},{n}) not supported")
    groups = tuple(tuple(range(i * n, (i + 1) * n)) for i in range(k))
    if k == 2:
        blocks = [(x, n + y) for x in range(n) for y in range(n)]
    elif k == 3:
        blocks = [(x, n + y, 2 * n + (x + y) % n) for x in range(n) for y in range(n)]
    else:
        if not is_prime(n) or k > n + 1:
            raise UnsupportedOrder(f"TD({k},{n}) needs n prime and k <= n+1")
        blocks = []
        for a in range(n):
            for b in range(n):
                B = [i * n + (a + b * i) % n for i in range(min(k, n))]
                if k == n + 1:
                    B.append(n * n + b)
                blocks.append(tuple(B))
    return Gdd(k * n, k, groups, tuple(sorted(normalize_block(B) for B in blocks)))


def verify_gdd(g: Gdd) -> VerificationReport:
    """Check the k-GDD axioms: groups partition the points, cross-group pairs
    lie in exactly one block, same-group pairs in none."""
    v, k = g.v, g.k
    rep = VerificationReport({"k": k, "v": v, "type": str(GddType.of(g)) if g.groups else "", "blocks": len(g.blocks)})
    flat = [x for grp in g.groups for x in grp]
    partition = sorted(flat) == list(range(v))
    rep.add("groups partition points", partition,
            "" if partition else f"groups cover {len(set(flat))} distinct of {v} points ({len(flat)} memberships)")
    bad_size = [B for B in g.blocks if len(B) != k]
    rep.add("block size", not bad_size, "" if not bad_size else f"{len(bad_size)} blocks not of size {k}",
            bad_size[0] if bad_size else None)
    stray = [B for B in g.blocks if any(x < 0 or x >= v for x in B)]
    rep.add("point ids in range", not stray, "", stray[0] if stray else None)
    if not partition or stray:
        return rep
    group_of = np.empty(v, dtype=np.int64)
    for i, grp in enumerate(g.groups):
        group_of[list(grp)] = i
    cover = np.bincount(_pair_codes(g.blocks, v), minlength=v * v).reshape(v, v)
    same = group_of[:, None] == group_of[None, :]
    upper = np.triu(np.ones((v, v), dtype=bool), 1)
    intra = np.argwhere(upper & same & (cover > 0))
    rep.add("intra-group pairs uncovered", intra.size == 0,
            "" if intra.size == 0 else f"{len(intra)} same-group pairs lie in blocks",
            intra[0].tolist() if intra.size else None)
    cross = upper & ~same
    wrong = np.argwhere(cross & (cover != 1))
    if wrong.size:
        a, b = wrong[0]
        rep.add("cross pairs covered once", False,
                f"{len(wrong)} cross pairs not covered exactly once; {{{a}, {b}}} covered {int(cover[a, b])} times",
                [int(a), int(b)])
    else:
        rep.add("cross pairs covered once", True, "")
    return rep
