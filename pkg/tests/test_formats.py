import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentgeom.core import Geometry
from pentgeom.designs import projective_plane, sts, td
from pentgeom.formats import (
    FormatError,
    detect_kind,
    format_gdd,
    format_lines,
    format_steiner,
    load,
    parse_gdd,
    parse_lines,
    parse_steiner,
)


def test_detect_kind():
    assert detect_kind("PENT(3, 33, 7), d = 2: 1, 2, 3") == "certificate"
    assert detect_kind("# c\nGDD 9 3\n") == "gdd"
    assert detect_kind("S(2, 3, 7)\n0 1 3") == "steiner"
    assert detect_kind("5 2\n0 2\n") == "lines"
    with pytest.raises(FormatError):
        detect_kind("hello")
    with pytest.raises(FormatError):
        detect_kind("# only a comment\n")


def test_lines_round_trip(pent_3_33_7):
    assert parse_lines(format_lines(pent_3_33_7, "comment")).lines == pent_3_33_7.lines


def test_lines_errors():
    with pytest.raises(FormatError):
        parse_lines("5 2 7\n0 1")
    with pytest.raises(FormatError):
        parse_lines("5 2\n0 x")


def test_gdd_round_trip():
    g = td(3, 5)
    assert parse_gdd(format_gdd(g)) == g
    with pytest.raises(FormatError):
        parse_gdd("GDD 9 3\nz 1 2 3")


def test_steiner_round_trip():
    for s in (sts(9), projective_plane(3)):
        assert parse_steiner(format_steiner(s)) == s
    moved = sts(7).relabel({i: 10 + i for i in range(7)})
    assert parse_steiner(format_steiner(moved)) == moved
    with pytest.raises(FormatError):
        parse_steiner("S(2, 3, 7)\npoints 0 1 2\n0 1 2")


def test_load_all_kinds(tmp_path, data_dir):
    (tmp_path / "g.gdd").write_text(format_gdd(td(2, 5)))
    assert load(tmp_path / "g.gdd")[0] == "gdd"
    assert load(data_dir / "pent_3_33_7.cert")[0] == "certificate"


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30).flatmap(lambda v: st.tuples(
    st.just(v), st.lists(st.lists(st.integers(0, v - 1), min_size=2, max_size=2, unique=True), max_size=20))))
def test_lines_round_trip_property(case):
    v, lines = case
    g = Geometry.from_lines(v, [tuple(L) for L in lines], 2)
    assert parse_lines(format_lines(g)) == g
