"""Static reference data: orders of (w, 5+)-graphs next to the smallest
known PENT(3, r, w), known existence spectra, and per-r verdicts."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .params import (
    MOORE_CASE_TRIPLES,
    MOORE_DEGREES,
    PentError,
    Status,
    bound_plus_one_verdict,
    is_admissible,
    moore_case_verdict,
    steiner_admissible,
)


@dataclass(frozen=True)
class GraphOrderRow:
    """One row of the orders table; ``smallest_pent`` lists point counts of
    the smallest known PENT(3, r, w) with girth-5 deficiency graph."""

    w: int
    smallest_pent: tuple[int, ...]
    moore_girth6: int
    smallest_girth5: int
    moore_girth5: int

    def to_dict(self) -> dict:
        return asdict(self)


ORDERS_TABLE: dict[int, GraphOrderRow] = {
    row.w: row
    for row in (
        GraphOrderRow(7, (50, 74), 86, 50, 50),
        GraphOrderRow(9, (124,), 146, 96, 82),
        GraphOrderRow(13, (350,), 314, 226, 170),
        GraphOrderRow(15, (514,), 422, 310, 226),
        GraphOrderRow(19, (978,), 686, 500, 362),
        GraphOrderRow(21, (1330,), 842, 658, 442),
        GraphOrderRow(25, (2450,), 1202, 960, 626),
        GraphOrderRow(27, (2794,), 1406, 1054, 730),
        GraphOrderRow(31, (4298,), 1862, 1444, 962),
        GraphOrderRow(33, (5134,), 2114, 1664, 1090),
    )
}


def lookup_orders(w: int) -> GraphOrderRow | None:
    return ORDERS_TABLE.get(w)


@dataclass(frozen=True)
class Spectrum:
    """Existence of PENT(k, r, w) (girth-5 deficiency graph unless
    ``girth5`` is False) for ``r >= r_min`` in the listed residues mod
    ``modulus``, minus ``exceptions``. ``r_min = None`` means "all
    sufficiently large admissible r"; ``complete`` marks an if-and-only-if
    statement."""

    k: int
    w: int
    r_min: int | None
    modulus: int
    residues: tuple[int, ...]
    exceptions: tuple[int, ...] = ()
    girth5: bool = True
    complete: bool = False

    def covers(self, r: int) -> bool:
        if self.r_min is None or r < self.r_min or r in self.exceptions:
            return False
        return r % self.modulus in self.residues

    def describe(self) -> str:
        cond = "girth >= 5" if self.girth5 else "any deficiency graph"
        if self.r_min is None:
            rng = "all sufficiently large admissible r"
        else:
            res = ", ".join(map(str, self.residues))
            rng = f"r >= {self.r_min}, r = {res} (mod {self.modulus})"
        exc = f", except possibly r in {{{', '.join(map(str, self.exceptions))}}}" if self.exceptions else ""
        kind = "exactly when" if self.complete else "for"
        return f"PENT({self.k}, r, {self.w}), {cond}: exists {kind} {rng}{exc}"


SPECTRA: tuple[Spectrum, ...] = (
    Spectrum(3, 7, 21, 3, (0, 2), (23, 24, 26, 27, 29, 30, 32), complete=True),
    Spectrum(3, 9, 57, 3, (0, 1)),
    Spectrum(3, 13, 168, 3, (0, 2)),
    Spectrum(3, 19, 3411, 3, (0, 2)),
    Spectrum(3, 25, None, 1, (0,)),
    Spectrum(3, 27, None, 1, (0,)),
    Spectrum(3, 31, None, 1, (0,)),
    Spectrum(3, 33, None, 1, (0,)),
    Spectrum(4, 13, 253520, 2, (0,)),
    Spectrum(4, 13, 474, 2, (0,), girth5=False),
)

# Certified single instances with girth-5 deficiency graphs.
CERTIFIED_RANGES: tuple[tuple[int, int, int, int, int], ...] = (
    # (k, w, r_lo, r_hi, step over admissible r)
    (3, 7, 33, 149, 0),
    (3, 9, 57, 244, 0),
    (4, 13, 112, 164, 4),
)

KNOWN_CONNECTED: tuple[str, ...] = (
    "a few hand-made PENT(3, r), among them the Desargues configuration PENT(3, 3)",
    "hill-climbed PENT(3, r) for moderate r",
    "PENT(3, r) for every r = 3 (mod 6) with r >= 33",
    "PENT(4, r) for r in {13, 17, 20, 21, 24, 29, 33, 37, 40, 45, 49, 52, 53, 60, 61, 65, 69, 77, 80, 81, "
    "85, 93, 97, 100, 101, 108, 109, 117, 120, 125, 133, 140, 141, 149, 157, 160, 165, 173, 180}",
    "PENT(5, r) for r in {20, 25, 30, 35, 40}",
    "PENT(6, 7) and PENT(7, 7) from the Hoffman-Singleton graph",
)


def spectra_for(k: int, w: int) -> list[Spectrum]:
    return [s for s in SPECTRA if s.k == k and s.w == w]


def known_girth5(k: int, r: int, w: int) -> bool:
    """Whether the catalog records a PENT(k, r, w) with girth-5 deficiency graph."""
    if any(s.girth5 and s.covers(r) and is_admissible((k, r, w)) for s in spectra_for(k, w)):
        return True
    for kk, ww, lo, hi, step in CERTIFIED_RANGES:
        if (kk, ww) == (k, w) and lo <= r <= hi and is_admissible((k, r, w)):
            if step == 0 or (r - lo) % step == 0:
                return True
    return (k, r, w) in MOORE_CASE_TRIPLES


@dataclass(frozen=True)
class RVerdict:
    k: int
    w: int
    r: int
    verdict: str
    detail: str
    known: bool

    def to_row(self) -> dict:
        return asdict(self)


def girth5_verdict(k: int, w: int, r: int) -> RVerdict:
    """Classify PENT(k, r, w) with girth-5 deficiency graph as one of
    ``below-girth5-bound``, ``moore-case-possible``/``-excluded``/``-unknown``,
    ``bound+1-excluded``, ``bound+1-possible``, ``inadmissible``, ``possible``."""
    if k < 2 or w < k:
        raise PentError(f"need w >= k >= 2, got k={k}, w={w}")
    known = False
    num = w * (w - 1)
    bound = -(-num // (k - 1))
    if r < bound:
        return RVerdict(k, w, r, "below-girth5-bound", f"girth 5 needs r >= {bound}", known)
    integral = num % (k - 1) == 0
    if integral and r == bound:
        mv = moore_case_verdict(k, w)
        tag = {Status.POSSIBLE: "possible", Status.EXCLUDED: "excluded", Status.UNKNOWN: "unknown"}[mv.status]
        return RVerdict(k, w, r, f"moore-case-{tag}", mv.reason, known_girth5(k, r, w))
    if integral and r == bound + 1:
        ev = bound_plus_one_verdict(k, w)
        if ev.excluded:
            return RVerdict(k, w, r, "bound+1-excluded", ev.failing_step.value, False)
        return RVerdict(k, w, r, "bound+1-possible", ev.note, False)
    if not is_admissible((k, r, w)):
        return RVerdict(k, w, r, "inadmissible", f"{k} does not divide r(r-w-1) = {r * (r - w - 1)}", False)
    try:
        design = steiner_admissible(k, w)
    except PentError:
        design = steiner_admissible(k, w, strict=False)
    if not design:
        return RVerdict(k, w, r, "inadmissible", f"no S(2,{k},{w})", False)
    known = known_girth5(k, r, w)
    return RVerdict(k, w, r, "possible", "constructed" if known else "open", known)


__all__ = [
    "CERTIFIED_RANGES",
    "GraphOrderRow",
    "KNOWN_CONNECTED",
    "MOORE_DEGREES",
    "ORDERS_TABLE",
    "RVerdict",
    "SPECTRA",
    "Spectrum",
    "girth5_verdict",
    "known_girth5",
    "lookup_orders",
    "spectra_for",
]
