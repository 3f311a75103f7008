from pentgeom.build import figure1_family
from pentgeom.catalog import girth5_verdict
from pentgeom.core import Geometry
from pentgeom.plotting import deficiency_figure, intersection_figure, verdict_figure

PNG = b"\x89PNG"


def test_geometry_figures(tmp_path, pent_3_33_7):
    for g, tag in ((pent_3_33_7, "a"), (figure1_family(3), "b")):
        p = deficiency_figure(g, tmp_path / f"d{tag}.png")
        q = intersection_figure(g, tmp_path / f"i{tag}.png")
        assert p.read_bytes()[:4] == PNG and q.read_bytes()[:4] == PNG


def test_figures_on_invalid_geometry(tmp_path):
    bad = Geometry.from_lines(4, [(0, 1, 2), (0, 1, 3)])
    assert deficiency_figure(bad, tmp_path / "d.png").exists()
    assert intersection_figure(bad, tmp_path / "i.png").exists()


def test_verdict_figure(tmp_path):
    rows = [girth5_verdict(3, 7, r).to_row() for r in range(18, 40)]
    assert verdict_figure(rows, tmp_path / "v.png").read_bytes()[:4] == PNG
