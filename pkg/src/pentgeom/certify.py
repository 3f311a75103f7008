"""Base-block certificates: parsing, development under ``x -> x + d (mod v)``
and emission for geometries with a shift automorphism.

Grammar::

    PENT(<k>, <r>, <w>), d = <d>: a, b, c; a, b, c; ...

Whitespace is insignificant, blocks are separated by ``;`` and a trailing
``;`` is optional. For k = 4 a flat comma-separated list of ``d*r`` numbers
is also accepted and grouped into consecutive quadruples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .core import Block, Geometry, PentError, VerificationReport, normalize_block
from .params import PentParams


class CertificateSyntaxError(PentError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} at offset {position}")
        self.position = position


class CountMismatch(PentError):
    pass


class BlockSizeMismatch(PentError):
    pass


class PeriodMismatch(PentError):
    pass


class DuplicateLine(PentError):
    pass


class OutOfRange(PentError):
    pass


class NotAutomorphism(PentError):
    pass


class CertificateInvalid(PentError):
    """Report-only parsing found one or more violations."""

    def __init__(self, violations: list[PentError]):
        super().__init__("; ".join(str(e) for e in violations))
        self.violations = violations


@dataclass(frozen=True)
class Certificate:
    k: int
    r: int
    w: int
    d: int
    base_blocks: tuple[Block, ...]
    source: str = field(default="", compare=False)

    @property
    def params(self) -> PentParams:
        return PentParams(self.k, self.r, self.w)

    @property
    def v(self) -> int:
        return self.r * (self.k - 1) + self.w + 1

    @property
    def opposite_size(self) -> int:
        """Blocks in one opposite design, w(w-1)/(k(k-1))."""
        return self.w * (self.w - 1) // (self.k * (self.k - 1))

    def to_text(self, per_line: int = 8) -> str:
        rows = [f"PENT({self.k}, {self.r}, {self.w}), d = {self.d}:"]
        blocks = ["".join(", ".join(map(str, B))) for B in self.base_blocks]
        for i in range(0, len(blocks), per_line):
            rows.append("; ".join(blocks[i:i + per_line]) + (";" if i + per_line < len(blocks) else ""))
        return "\n".join(rows) + "\n"


_HEADER = re.compile(r"\s*PENT\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*,\s*d\s*=\s*(\d+)\s*:")
_INT = re.compile(r"\s*(\d+)\s*")


def parse_certificate(text: str, strict: bool = True, source: str = "") -> Certificate:
    """Parse certificate text.

    With ``strict=False`` every violation is collected and reported together
    in a :class:`CertificateInvalid`; no repair is attempted in either mode.
    """
    m = _HEADER.match(text)
    if not m:
        raise CertificateSyntaxError("expected header 'PENT(k, r, w), d = n:'", 0)
    k, r, w, d = (int(x) for x in m.groups())
    problems: list[PentError] = []

    def fail(err: PentError) -> None:
        if strict:
            raise err
        problems.append(err)

    if k < 2 or d < 1:
        raise CertificateSyntaxError(f"bad header values k={k}, d={d}", m.start())
    body_start = m.end()
    body = text[body_start:]
    # Token pass: integers, ',' and ';' only.
    for bad in re.finditer(r"[^\d,;\s]", body):
        fail(CertificateSyntaxError(f"unexpected character {bad.group()!r}", body_start + bad.start()))
        break
    chunks = body.strip().rstrip(";").split(";") if body.strip() else []
    blocks: list[tuple[int, ...]] = []
    offset = body_start + (len(body) - len(body.lstrip()))
    for chunk in chunks:
        items = chunk.split(",")
        nums = []
        for it in items:
            mm = _INT.fullmatch(it)
            if mm:
                nums.append(int(mm.group(1)))
            elif it.strip():
                fail(CertificateSyntaxError(f"bad integer {it.strip()!r}", offset))
            else:
                fail(CertificateSyntaxError("empty entry", offset))
        blocks.append(tuple(nums))
        offset += len(chunk) + 1
    expected = d * r / k
    if k == 4 and len(blocks) == 1 and len(blocks[0]) == d * r and d * r != 4:
        flat = blocks[0]
        blocks = [flat[i:i + 4] for i in range(0, len(flat), 4)]
    wrong = [(i, B) for i, B in enumerate(blocks) if len(B) != k]
    for i, B in wrong[:1] if strict else wrong:
        fail(BlockSizeMismatch(f"base block {i} has {len(B)} entries, expected {k}"))
    if len(blocks) != expected:
        fail(CountMismatch(f"expected d*r/k = {expected:g} base blocks, got {len(blocks)}"))
    if problems:
        raise CertificateInvalid(problems)
    return Certificate(k, r, w, d, tuple(tuple(B) for B in blocks), source)


def _shift(B, s: int, v: int) -> Block:
    return normalize_block((x + s) % v for x in B)


def develop(c: Certificate) -> Geometry:
    """Develop the base blocks into the full line set and check its size."""
    v = c.v
    if c.d <= 0 or v % c.d:
        raise PeriodMismatch(f"d = {c.d} does not divide v = {v}")
    for i, B in enumerate(c.base_blocks):
        bad = [x for x in B if not 0 <= x < v]
        if bad:
            raise OutOfRange(f"base block {i} {B} has entry {bad[0]} outside 0..{v - 1}")
        if len(set(B)) != len(B):
            raise DuplicateLine(f"base block {i} {B} repeats a point")
    seen: dict[Block, int] = {}
    for i, B in enumerate(c.base_blocks):
        for s in range(0, v, c.d):
            L = _shift(B, s, v)
            if L in seen:
                raise DuplicateLine(f"line {L} arises from base blocks {seen[L]} and {i}")
            seen[L] = i
    return Geometry.from_lines(v, seen, c.k, c.r, c.w)


def claimed_opposites(c: Certificate) -> list[tuple[Block, ...]]:
    """Per point x = i + d*j, the translate by d*j of the i-th leading group
    of base blocks."""
    v, d, n = c.v, c.d, c.opposite_size
    out = []
    for x in range(v):
        i, s = x % d, x - x % d
        group = c.base_blocks[i * n:(i + 1) * n]
        out.append(tuple(sorted(_shift(B, s, v) for B in group)))
    return out


def check_claimed_opposites(c: Certificate, g: Geometry) -> VerificationReport:
    """Advisory comparison of the certificate's claimed opposite designs with
    the ones recomputed from the developed geometry."""
    from .pent import _analyze

    a = _analyze(g)
    rep = VerificationReport({"d": c.d})
    if not a.ok:
        rep.add("claimed opposite designs", False, "geometry is not a partial linear space", required=False)
        return rep
    claimed = claimed_opposites(c)
    for x in range(c.v):
        actual = tuple(sorted(g.lines[i] for i in a.opp[x]))
        if actual != claimed[x]:
            rep.add("claimed opposite designs", False, f"point {x}: claimed blocks differ from the lines inside W_x",
                    [x], required=False)
            return rep
    rep.add("claimed opposite designs", True, f"all {c.v} claims match", required=False)
    return rep


def is_shift_automorphism(g: Geometry, d: int) -> bool:
    lines = set(g.lines)
    return all(_shift(L, d, g.v) in lines for L in g.lines)


def emit_certificate(g: Geometry, d: int, source: str = "") -> Certificate:
    """Inverse of :func:`develop` for a geometry invariant under ``x -> x + d``.

    Opposite designs of points ``0..d-1`` come first, then one representative
    (the lexicographically least line) of each remaining orbit.
    """
    from .pent import _analyze

    v = g.v
    if d <= 0 or v % d:
        raise PeriodMismatch(f"d = {d} does not divide v = {v}")
    if not is_shift_automorphism(g, d):
        raise NotAutomorphism(f"x -> x + {d} (mod {v}) is not an automorphism")
    a = _analyze(g)
    if not a.ok:
        raise PentError("geometry is not a uniform regular partial linear space")
    k, r, w = a.k, a.r, a.w
    orbit_of: dict[Block, int] = {}
    reps: list[Block] = []

    def take(B: Block) -> None:
        if B in orbit_of:
            return
        idx = len(reps)
        reps.append(B)
        for s in range(0, v, d):
            orbit_of[_shift(B, s, v)] = idx

    for i in range(d):
        for li in sorted(a.opp[i], key=lambda t: g.lines[t]):
            take(g.lines[li])
    for L in g.lines:
        take(L)
    if len(reps) * (v // d) != len(g.lines):
        raise PeriodMismatch(f"some line orbit under x -> x + {d} is shorter than v/d = {v // d}")
    return Certificate(k, r, w, d, tuple(reps), source)


def corpus_names() -> list[str]:
    """Bundled certificate files."""
    return sorted(p.name for p in resources.files("pentgeom.data").iterdir() if p.name.endswith(".cert"))


def load_corpus(name: str) -> Certificate:
    """Load a bundled certificate by file name, e.g. ``"pent_3_33_7.cert"``."""
    text = resources.files("pentgeom.data").joinpath(name).read_text()
    return parse_certificate(text, source=name)
