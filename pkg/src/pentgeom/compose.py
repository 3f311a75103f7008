"""Wilson-type composition: place PENT ingredients on the groups of a GDD."""

from __future__ import annotations

from typing import Sequence

from .core import Gdd, Geometry, PentError, normalize_block
from .designs import verify_gdd
from .graphs import girth
from .params import PreconditionViolated
from .pent import verify_pent


class SizeMismatch(PentError):
    pass


class MixedParameters(PentError):
    pass


class GddInvalid(PentError):
    pass


class CompositionFailed(PentError):
    pass


def canonical_groups(gdd: Gdd) -> list[tuple[int, ...]]:
    """Groups sorted by their smallest point; ingredients align with this order."""
    return sorted((tuple(sorted(g)) for g in gdd.groups), key=lambda g: g[0])


def wilson_compose(gdd: Gdd, ingredients: Sequence[Geometry]) -> Geometry:
    """Overlay ``ingredients[i]`` on the i-th canonical group of ``gdd``.

    Each ingredient must verify as a PENT(k, r_i, w) with the GDD's block
    size and a common w, and (k-1) must divide (w+1). Ingredient points are
    mapped onto the group order-preservingly. The result is re-verified and
    must be a PENT(k, R + (N-1)(w+1)/(k-1), w) whose deficiency graph is the
    disjoint union of the ingredient deficiency graphs.
    """
    if not verify_gdd(gdd).overall:
        raise GddInvalid("GDD fails verification")
    groups = canonical_groups(gdd)
    if len(ingredients) != len(groups):
        raise SizeMismatch(f"{len(groups)} groups but {len(ingredients)} ingredients")
    k = gdd.k
    reports = []
    for i, (grp, ing) in enumerate(zip(groups, ingredients)):
        if ing.v != len(grp):
            raise SizeMismatch(f"group {i} has {len(grp)} points, ingredient {i} has {ing.v}")
        rep = verify_pent(ing)
        if not rep.overall:
            raise PreconditionViolated(f"ingredient {i} is not a verified PENT")
        reports.append(rep)
    ks = {rep.parameters["k"] for rep in reports}
    ws = {rep.parameters["w"] for rep in reports}
    if len(ws) != 1 or ks != {k}:
        raise MixedParameters(f"ingredients have k in {sorted(ks)} (GDD k={k}) and w in {sorted(ws)}")
    w = ws.pop()
    if (w + 1) % (k - 1):
        raise PreconditionViolated(f"(k-1) = {k - 1} does not divide (w+1) = {w + 1}")
    R = sum(rep.parameters["r"] for rep in reports)
    N = len(groups)
    r_out = R + (N - 1) * (w + 1) // (k - 1)
    lines = list(gdd.blocks)
    for grp, ing in zip(groups, ingredients):
        lines.extend(normalize_block(grp[x] for x in L) for L in ing.lines)
    out = Geometry.from_lines(gdd.v, lines, k, r_out, w)
    rep = verify_pent(out)
    if not rep.overall:
        raise CompositionFailed(f"composed geometry fails: {[c.name for c in rep.failures()]}")
    if min(r.properties["girth"] for r in reports) >= 5 and rep.properties["girth"] < 5:
        raise CompositionFailed("ingredients have girth >= 5 but the composition does not")
    union = {normalize_block((grp[a], grp[b])) for grp, ing in zip(groups, ingredients)
             for a, b in _deficiency_graph(ing).edges()}
    if set(_deficiency_graph(out).edges()) != union:
        raise CompositionFailed("deficiency graph is not the union of the ingredient deficiency graphs")
    return out


def _deficiency_graph(g: Geometry):
    from .pent import _analyze

    return _analyze(g).graph


def output_girth(g: Geometry) -> int | float:
    return girth(_deficiency_graph(g))
