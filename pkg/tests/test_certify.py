import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_geometry
from pentgeom.certify import (
    BlockSizeMismatch,
    Certificate,
    CertificateInvalid,
    CertificateSyntaxError,
    CountMismatch,
    DuplicateLine,
    NotAutomorphism,
    OutOfRange,
    PeriodMismatch,
    check_claimed_opposites,
    claimed_opposites,
    corpus_names,
    develop,
    emit_certificate,
    is_shift_automorphism,
    load_corpus,
    parse_certificate,
)
from pentgeom.core import Geometry
from pentgeom.pent import opposite_design



def test_parse_3_33_7():
    c = load_corpus("pent_3_33_7.cert")
    assert (c.k, c.r, c.w, c.d) == (3, 33, 7, 2)
    assert len(c.base_blocks) == 22
    assert c.base_blocks[0] == (5, 24, 49)


def test_parse_4_112_13():
    c = load_corpus("pent_4_112_13.cert")
    assert len(c.base_blocks) == 56 and all(len(B) == 4 for B in c.base_blocks)


def test_flat_k4_list():
    c = load_corpus("pent_4_112_13.cert")
    flat = ", ".join(str(x) for B in c.base_blocks for x in B)
    parsed = parse_certificate(f"PENT(4, 112, 13), d = 2: {flat}")
    assert parsed.base_blocks == c.base_blocks
    assert sum(len(B) for B in parsed.base_blocks) == 224


def test_count_mismatch():
    c = load_corpus("pent_3_33_7.cert")
    text = "PENT(3, 33, 7), d = 2: " + "; ".join(", ".join(map(str, B)) for B in c.base_blocks[:21])
    with pytest.raises(CountMismatch):
        parse_certificate(text)


def test_block_size_mismatch():
    with pytest.raises(BlockSizeMismatch):
        parse_certificate("PENT(2, 2, 2), d = 1: 0, 2, 3")


def test_syntax_errors():
    with pytest.raises(CertificateSyntaxError):
        parse_certificate("PENT(3, 33, 7) d = 2: 1, 2, 3")
    with pytest.raises(CertificateSyntaxError) as info:
        parse_certificate("PENT(2, 2, 2), d = 5: 0, x")
    assert info.value.position is not None


def test_report_only_mode_lists_everything():
    with pytest.raises(CertificateInvalid) as info:
        parse_certificate("PENT(3, 33, 7), d = 2: 1, 2; 3, 4, 5", strict=False)
    kinds = {type(e) for e in info.value.violations}
    assert {BlockSizeMismatch, CountMismatch} <= kinds


def test_whitespace_and_trailing_semicolon():
    a = parse_certificate("PENT(2, 2, 2), d = 1: 0, 2;")
    b = parse_certificate("PENT( 2,2 ,2 ),d=1:\n 0 ,\n 2 ")
    assert a == b and a.base_blocks == ((0, 2),)


def test_develop_counts():
    g = develop(load_corpus("pent_3_33_7.cert"))
    assert g.v == 74 and len(g.lines) == 814
    g = develop(load_corpus("pent_4_112_13.cert"))
    assert g.v == 350 and len(g.lines) == 9800


def test_period_mismatch():
    # d must divide v = r(k-1)+w+1; v = 74 here.
    c = Certificate(3, 33, 7, 3, ((0, 1, 2),) * 33)
    with pytest.raises(PeriodMismatch):
        develop(c)


def test_out_of_range_and_duplicates():
    with pytest.raises(OutOfRange):
        develop(Certificate(2, 2, 2, 1, ((0, 7),)))
    with pytest.raises(DuplicateLine):
        develop(Certificate(2, 4, 3, 4, ((0, 1), (4, 5))))


@pytest.mark.parametrize("name", corpus_names())
def test_claimed_opposites_match(name):
    c = load_corpus(name)
    g = corpus_geometry(name)
    assert check_claimed_opposites(c, g).checks[0].passed
    claims = claimed_opposites(c)
    for x in range(c.d):
        assert claims[x] == opposite_design(g, x).blocks


@pytest.mark.parametrize("name", corpus_names())
def test_shift_is_automorphism(name):
    c = load_corpus(name)
    g = corpus_geometry(name)
    lines = set(g.lines)
    for L in g.lines[:200]:
        assert tuple(sorted((x + c.d) % g.v for x in L)) in lines
    assert is_shift_automorphism(g, c.d)


@pytest.mark.parametrize("name", ["pent_3_33_7.cert", "pent_3_57_9.cert"])
def test_emit_round_trip(name):
    g = corpus_geometry(name)
    c = load_corpus(name)
    e = emit_certificate(g, c.d)
    assert develop(e).lines == g.lines
    assert len(e.base_blocks) == c.d * c.r // c.k
    assert check_claimed_opposites(e, g).checks[0].passed


def test_emit_pentagon_d1():
    pentagon = Geometry.from_lines(5, [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)])
    e = emit_certificate(pentagon, 1)
    assert len(e.base_blocks) == 1
    assert develop(e).lines == pentagon.lines


def test_emit_not_automorphism():
    with pytest.raises(NotAutomorphism):
        emit_certificate(corpus_geometry("pent_3_33_7.cert"), 1)
    with pytest.raises(PeriodMismatch):
        emit_certificate(corpus_geometry("pent_3_33_7.cert"), 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(1, 40), st.integers(0, 10**6))
def test_text_round_trip(k, nblocks, seed):
    rng = random.Random(seed)
    d = rng.randint(1, 6)
    # Choose r so that d*r/k = nblocks.
    r = nblocks * k
    blocks = tuple(tuple(rng.sample(range(500), k)) for _ in range(nblocks * d))
    c = Certificate(k, r, rng.randint(0, 30), d, blocks)
    assert parse_certificate(c.to_text()) == c
