import csv
import io
import json

import pytest

from pentgeom.cli import main
from pentgeom.formats import parse_lines


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cert_path(data_dir):
    return str(data_dir / "pent_3_33_7.cert")


def test_verify_corpus(capsys, cert_path):
    code, out, _ = run(capsys, "verify", cert_path)
    data = json.loads(out)
    assert code == 0 and data["overall"] is True
    assert data["params"]["d"] == 2


def test_verify_broken_count(capsys, tmp_path, cert_path):
    text = open(cert_path).read()
    head, body = text.split(":", 1)
    triples = [t for t in body.split(";") if t.strip()]
    bad = tmp_path / "broken.cert"
    bad.write_text(head + ":" + ";".join(triples[:21]))
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "CountMismatch" in err


def test_verify_tampered(capsys, tmp_path, cert_path):
    text = open(cert_path).read()
    head, body = text.split(":", 1)
    triples = [t for t in body.split(";") if t.strip()]
    a, b, c = (int(x) for x in triples[3].split(","))
    triples[3] = f" {a}, {b}, {(c + 2) % 74}"
    bad = tmp_path / "tampered.cert"
    bad.write_text(head + ":" + ";".join(triples))
    code, out, _ = run(capsys, "verify", str(bad))
    data = json.loads(out)
    assert code == 1 and data["overall"] is False
    assert any(not c["pass"] for c in data["checks"])


def test_verify_bad_path(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/file.cert")
    assert code == 2 and err.startswith("error:")


def test_develop_then_verify(capsys, tmp_path, cert_path):
    out_path = tmp_path / "lines.txt"
    code, _, _ = run(capsys, "develop", cert_path, "-o", str(out_path))
    assert code == 0
    assert len(parse_lines(out_path.read_text()).lines) == 814
    direct = json.loads(run(capsys, "verify", cert_path)[1])["overall"]
    via = json.loads(run(capsys, "verify", str(out_path))[1])["overall"]
    assert direct == via is True


def test_develop_period_mismatch(capsys, tmp_path):
    bad = tmp_path / "period.cert"
    bad.write_text("PENT(3, 33, 7), d = 3: " + "; ".join(["0, 1, 2"] * 33))
    code, _, err = run(capsys, "develop", str(bad))
    assert code == 2 and "PeriodMismatch" in err


def test_verify_report_files(capsys, tmp_path, cert_path):
    rep = tmp_path / "rep"
    code, _, _ = run(capsys, "verify", cert_path, "--report", str(rep))
    assert code == 0
    for name in ("report.json", "checks.csv", "properties.csv", "deficiency.png", "intersections.png"):
        assert (rep / name).stat().st_size > 0
    rows = list(csv.DictReader(open(rep / "checks.csv")))
    assert rows and all(r["pass"] == "True" for r in rows)


def test_build_overlay(capsys, tmp_path):
    out = tmp_path / "hs.txt"
    code, stdout, _ = run(capsys, "build", "overlay", "--graph", "hs", "--design", "sts", "-o", str(out))
    data = json.loads(stdout)
    assert code == 0 and (data["params"]["k"], data["params"]["r"], data["params"]["w"]) == (3, 21, 7)
    assert len(parse_lines(out.read_text()).lines) == 350


def test_build_fig1(capsys):
    code, stdout, _ = run(capsys, "build", "fig1", "--m", "4")
    data = json.loads(stdout)
    assert code == 0 and (data["params"]["k"], data["params"]["r"], data["params"]["w"]) == (2, 11, 8)


def test_build_compose(capsys, tmp_path, data_dir):
    ing = str(data_dir / "pent_3_35_7.cert")
    code, stdout, _ = run(capsys, "--indent", "0", "build", "compose", "--gdd", "td:3:78",
                          "--ingredient", ing, "--ingredient", ing, "--ingredient", ing)
    data = json.loads(stdout)
    assert code == 0 and data["params"]["r"] == 113


def test_build_hill_climb(capsys, tmp_path):
    out = tmp_path / "hc.cert"
    code, stdout, _ = run(capsys, "build", "hill-climb", "--w", "7", "--r", "33", "--seed", "1",
                          "--restarts", "50", "--emit-cert", "-o", str(out))
    assert code == 0 and json.loads(stdout)["overall"]
    assert out.read_text().startswith("PENT(3, 33, 7)")
    code, _, _ = run(capsys, "verify", str(out))
    assert code == 0


def test_build_hill_climb_failure(capsys):
    code, stdout, _ = run(capsys, "build", "hill-climb", "--w", "7", "--r", "21", "--seed", "1", "--restarts", "1")
    assert code == 1 and json.loads(stdout)["overall"] is False


def test_build_bad_flags(capsys):
    with pytest.raises(SystemExit) as info:
        main(["build", "overlay", "--graph", "cube", "--design", "sts"])
    assert info.value.code == 2
    code, _, _ = run(capsys, "build", "hill-climb", "--w", "8", "--r", "40", "--seed", "1")
    assert code == 2


def test_admissible_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "admissible", "--k", "3", "--w", "7", "--r", "20:23", "--report", str(tmp_path))
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["verdict"] for r in rows] == ["below-girth5-bound", "moore-case-possible", "bound+1-excluded", "possible"]
    assert (tmp_path / "verdicts.csv").exists() and (tmp_path / "verdicts.png").stat().st_size > 0


def test_admissible_json(capsys):
    code, out, _ = run(capsys, "admissible", "--k", "2", "--w", "2", "--r", "2", "--format", "json")
    assert code == 0 and json.loads(out)[0]["verdict"] == "moore-case-possible"


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--w", "7")
    data = json.loads(out)
    assert code == 0 and data["smallest_pent"] == [50, 74] and data["moore_girth6"] == 86
    data = json.loads(run(capsys, "catalog", "--w", "10")[1])
    assert data["status"] == "not-in-table"
    data = json.loads(run(capsys, "catalog", "--known")[1])
    assert len(data["known_connected_girth5"]) == 6
