"""Plain-text file formats and input auto-detection.

Line list::

    # optional comments
    74 3          <- v and k (k may be omitted)
    0 6 42        <- one line per row
    ...

GDD file::

    GDD 9 3       <- v and k
    g 0 1 2       <- a group
    b 0 3 6       <- a block

Steiner file::

    S(2, 3, 7)
    points 0 1 2 3 4 5 6   <- optional, defaults to 0..w-1
    0 1 3
    ...
"""

from __future__ import annotations

import re
from pathlib import Path

from .certify import Certificate, parse_certificate
from .core import Gdd, Geometry, PentError, SteinerSystem, normalize_block


class FormatError(PentError):
    pass


def _rows(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _ints(row: str, where: str) -> list[int]:
    try:
        return [int(t) for t in row.replace(",", " ").split()]
    except ValueError:
        raise FormatError(f"{where}: expected integers, got {row!r}") from None


def detect_kind(text: str) -> str:
    """``certificate``, ``gdd``, ``steiner`` or ``lines``, from the first token."""
    rows = _rows(text)
    if not rows:
        raise FormatError("empty input")
    head = rows[0]
    if head.startswith("PENT("):
        return "certificate"
    if head.startswith("GDD"):
        return "gdd"
    if head.startswith("S("):
        return "steiner"
    if head[0].isdigit():
        return "lines"
    raise FormatError(f"unrecognised input starting with {head[:20]!r}")


def parse_lines(text: str) -> Geometry:
    rows = _rows(text)
    if not rows:
        raise FormatError("empty line list")
    head = _ints(rows[0], "header")
    if len(head) not in (1, 2):
        raise FormatError("header must be 'v' or 'v k'")
    v = head[0]
    k = head[1] if len(head) == 2 else None
    lines = [tuple(_ints(row, f"row {i + 2}")) for i, row in enumerate(rows[1:])]
    return Geometry.from_lines(v, lines, k)


def format_lines(g: Geometry, comment: str | None = None) -> str:
    out = [f"# {comment}"] if comment else []
    k = g.k if g.k is not None else (len(g.lines[0]) if g.lines else 0)
    out.append(f"{g.v} {k}")
    out.extend(" ".join(map(str, L)) for L in g.lines)
    return "\n".join(out) + "\n"


def parse_gdd(text: str) -> Gdd:
    rows = _rows(text)
    m = re.fullmatch(r"GDD\s+(\d+)\s+(\d+)", rows[0]) if rows else None
    if not m:
        raise FormatError("GDD header must be 'GDD v k'")
    v, k = int(m.group(1)), int(m.group(2))
    groups, blocks = [], []
    for i, row in enumerate(rows[1:], start=2):
        tag, _, rest = row.partition(" ")
        if tag == "g":
            groups.append(tuple(sorted(_ints(rest, f"row {i}"))))
        elif tag == "b":
            blocks.append(normalize_block(_ints(rest, f"row {i}")))
        else:
            raise FormatError(f"row {i}: expected 'g' or 'b', got {tag!r}")
    return Gdd(v, k, tuple(groups), tuple(sorted(blocks)))


def format_gdd(g: Gdd) -> str:
    out = [f"GDD {g.v} {g.k}"]
    out += ["g " + " ".join(map(str, grp)) for grp in g.groups]
    out += ["b " + " ".join(map(str, B)) for B in g.blocks]
    return "\n".join(out) + "\n"


def parse_steiner(text: str) -> SteinerSystem:
    rows = _rows(text)
    m = re.fullmatch(r"S\(\s*2\s*,\s*(\d+)\s*,\s*(\d+)\s*\)", rows[0]) if rows else None
    if not m:
        raise FormatError("Steiner header must be 'S(2, k, w)'")
    k, w = int(m.group(1)), int(m.group(2))
    body = rows[1:]
    points = tuple(range(w))
    if body and body[0].startswith("points"):
        points = tuple(sorted(_ints(body[0][len("points"):], "points row")))
        body = body[1:]
    if len(points) != w:
        raise FormatError(f"header says w={w} but {len(points)} points are listed")
    blocks = tuple(sorted(normalize_block(_ints(row, f"block {i}")) for i, row in enumerate(body)))
    return SteinerSystem(points, k, blocks)


def format_steiner(s: SteinerSystem) -> str:
    out = [f"S(2, {s.k}, {len(s.points)})"]
    if tuple(s.points) != tuple(range(len(s.points))):
        out.append("points " + " ".join(map(str, s.points)))
    out += [" ".join(map(str, B)) for B in s.blocks]
    return "\n".join(out) + "\n"


def load(path: str | Path, strict: bool = True):
    """Read and parse a file; returns ``(kind, object)``."""
    text = Path(path).read_text()
    kind = detect_kind(text)
    if kind == "certificate":
        return kind, parse_certificate(text, strict=strict, source=str(path))
    if kind == "gdd":
        return kind, parse_gdd(text)
    if kind == "steiner":
        return kind, parse_steiner(text)
    return kind, parse_lines(text)


__all__ = [
    "Certificate",
    "FormatError",
    "detect_kind",
    "format_gdd",
    "format_lines",
    "format_steiner",
    "load",
    "parse_gdd",
    "parse_lines",
    "parse_steiner",
]
