from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pentgeom.core import Gdd, PentError, SteinerSystem
from pentgeom.designs import (
    GddType,
    InadmissibleOrder,
    NotPrime,
    UnsupportedOrder,
    affine_plane,
    complete_design,
    projective_plane,
    skolem_pairs,
    sts,
    td,
    verify_gdd,
    verify_steiner,
)


def pair_counts(blocks):
    counts = {}
    for B in blocks:
        for p in combinations(sorted(B), 2):
            counts[p] = counts.get(p, 0) + 1
    return counts


@given(st.integers(0, 120).filter(lambda w: w % 6 in (1, 3) or w in (0,)))
def test_sts_verifies(w):
    s = sts(w)
    assert verify_steiner(s).overall
    assert len(s.blocks) == w * (w - 1) // 6
    if w >= 3:
        assert set(pair_counts(s.blocks).values()) == {1}


@pytest.mark.parametrize("w", [2, 4, 5, 6, 8, 11])
def test_sts_inadmissible(w):
    with pytest.raises(InadmissibleOrder):
        sts(w)


@given(st.integers(1, 30))
def test_skolem_pairs(n):
    pairs = skolem_pairs(n)
    assert [b - a for a, b in pairs] == list(range(1, n + 1))
    used = [x for p in pairs for x in p]
    assert len(set(used)) == 2 * n
    if n % 4 in (0, 1):
        assert sorted(used) == list(range(1, 2 * n + 1))
    else:
        assert sorted(used) == list(range(1, 2 * n)) + [2 * n + 1]


def test_fano():
    s = sts(7)
    assert len(s.blocks) == 7


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_planes(q):
    pg = projective_plane(q)
    ag = affine_plane(q)
    assert len(pg.points) == q * q + q + 1 and len(pg.blocks) == q * q + q + 1
    assert len(ag.points) == q * q and len(ag.blocks) == q * q + q
    assert verify_steiner(pg).overall and verify_steiner(ag).overall


def test_plane_needs_prime():
    with pytest.raises(NotPrime):
        projective_plane(4)


def test_complete_design():
    s = complete_design(7)
    assert len(s.blocks) == 21 and verify_steiner(s).overall


def test_verify_steiner_detects_missing_and_double():
    s = sts(7)
    broken = SteinerSystem(s.points, 3, s.blocks[1:])
    rep = verify_steiner(broken)
    assert not rep.overall and not rep.check("pair coverage").passed
    doubled = SteinerSystem(s.points, 3, s.blocks[:-1] + (s.blocks[0],))
    assert not verify_steiner(doubled).overall


@pytest.mark.parametrize("k,n", [(2, 5), (3, 1), (3, 2), (3, 78), (4, 5), (6, 5), (5, 7), (8, 7)])
def test_td(k, n):
    g = td(k, n)
    assert len(g.blocks) == n * n
    assert verify_gdd(g).overall
    assert GddType.of(g) == GddType(((n, k),))


def test_td_unsupported():
    with pytest.raises(UnsupportedOrder):
        td(4, 6)
    with pytest.raises(UnsupportedOrder):
        td(7, 5)


def test_verify_gdd_failure():
    g = td(3, 5)
    bad = Gdd(g.v, 3, g.groups, g.blocks[1:] + ((0, 1, 10),))
    rep = verify_gdd(bad)
    assert not rep.overall
    assert not rep.check("intra-group pairs uncovered").passed


def test_gdd_type_parse():
    t = GddType.parse("78^3,74^1")
    assert t.parts == ((74, 1), (78, 3))
    assert t.point_count == 308
    assert str(t) == "74^1,78^3"
    with pytest.raises(PentError):
        GddType.parse("x^2")
