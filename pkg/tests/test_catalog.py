import pytest

from pentgeom.catalog import (
    ORDERS_TABLE,
    SPECTRA,
    girth5_verdict,
    known_girth5,
    lookup_orders,
    spectra_for,
)
from pentgeom.core import PentError
from pentgeom.params import MOORE_CASE_TRIPLES, moore_bound


def test_orders_lookup():
    row = lookup_orders(7)
    assert (row.smallest_pent, row.moore_girth6, row.smallest_girth5, row.moore_girth5) == ((50, 74), 86, 50, 50)
    row = lookup_orders(33)
    assert (row.smallest_pent, row.moore_girth6, row.smallest_girth5, row.moore_girth5) == ((5134,), 2114, 1664, 1090)
    row = lookup_orders(13)
    assert (row.smallest_pent, row.moore_girth6, row.smallest_girth5, row.moore_girth5) == ((350,), 314, 226, 170)
    assert lookup_orders(10) is None


@pytest.mark.parametrize("w", sorted(ORDERS_TABLE))
def test_orders_moore_columns(w):
    row = ORDERS_TABLE[w]
    assert row.moore_girth5 == w * w + 1 == moore_bound(w, 5)
    assert row.moore_girth6 == 2 * (w * w - w + 1) == moore_bound(w, 6)
    assert row.smallest_girth5 >= row.moore_girth5
    assert min(row.smallest_pent) >= row.smallest_girth5


def test_verdicts_3_7():
    got = [girth5_verdict(3, 7, r).verdict for r in range(20, 24)]
    assert got == ["below-girth5-bound", "moore-case-possible", "bound+1-excluded", "possible"]
    assert girth5_verdict(3, 7, 23).detail == "open"
    assert girth5_verdict(3, 7, 33).detail == "constructed"
    assert girth5_verdict(3, 7, 34).verdict == "inadmissible"


def test_verdict_other_examples():
    assert girth5_verdict(2, 2, 2).verdict == "moore-case-possible"
    v = girth5_verdict(3, 9, 37)
    assert v.verdict == "bound+1-excluded" and "4w+1" in v.detail
    assert girth5_verdict(2, 57, 57 * 56).verdict == "moore-case-unknown"
    assert girth5_verdict(3, 9, 36).verdict == "moore-case-excluded"


def test_verdict_rejects_bad_k():
    with pytest.raises(PentError):
        girth5_verdict(4, 3, 10)


def test_spectra():
    (s7,) = spectra_for(3, 7)
    assert s7.complete and s7.covers(33) and not s7.covers(34) and not s7.covers(23)
    assert s7.covers(21) and "except possibly" in s7.describe()
    assert spectra_for(3, 13)[0].covers(168) and not spectra_for(3, 13)[0].covers(167)
    assert all(s.modulus >= 1 for s in SPECTRA)


def test_known_girth5():
    for k, r, w in MOORE_CASE_TRIPLES:
        assert known_girth5(k, r, w)
    assert known_girth5(3, 57, 9) and known_girth5(4, 112, 13)
    assert not known_girth5(3, 23, 7)
