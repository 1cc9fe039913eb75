import json

import pytest
from click.testing import CliRunner

from vkh.cli import main
from vkh.diagram import cable, isomorphic, parse_diagram_json, parse_gauss


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def go(*args, files=None):
        for name, text in (files or {}).items():
            (tmp_path / name).write_text(text)
        return runner.invoke(main, [str(tmp_path / a) if a.startswith("@") is False and "." in a
                                    and (tmp_path / a).exists() else a for a in args])
    go.path = tmp_path
    return go


VT = {"vt.gauss": "O1+O2+U1+U2+\n"}


def test_bracket(run):
    r = run("bracket", "vt.gauss", files=VT)
    assert r.exit_code == 0 and r.output.strip() == "q^-1 - 1 + q + q^4"


def test_jones_variants(run):
    files = {"t.gauss": "O1+U2+O3+U1+O2+U3+\n"}
    assert run("jones", "t.gauss", files=files).output.strip() == "q + q^3 + q^5 - q^9"
    assert run("jones", "t.gauss", "--normalized").output.strip() == "q^2 + q^6 - q^8"
    assert run("jones", "t.gauss", "--variable", "a", "--normalized").output.strip() == \
        "-a^-16 + a^-12 + a^-4"


def test_homology_tsv_and_json(run):
    r = run("homology", "vt.gauss", files=VT)
    assert r.exit_code == 0 and "0\t1\t1" in r.output and r.output.strip().endswith("t^2 q^6")
    data = json.loads(run("homology", "vt.gauss", "--json").output)
    assert data["field"] == "z2" and len(data["table"]) == 6


def test_homology_rational_bad_diagram(run):
    r = run("homology", "vt.gauss", "--field", "q", files=VT)
    assert r.exit_code == 2 and "1->1" in r.output


def test_homology_doubled_and_cover(run):
    r = run("homology", "vt.gauss", "--doubled", "2", files=VT)
    assert r.exit_code == 0 and r.output.startswith("0\t6\t1")
    r = run("homology", "vt.gauss", "--cover")
    assert r.exit_code == 0 and r.output.startswith("0\t2\t1")
    assert run("homology", "vt.gauss", "--cover", "--doubled", "2").exit_code == 2


def test_atom(run):
    data = json.loads(run("atom", "vt.gauss", files=VT).output)
    assert data["orientable"] is False and data["crosscap"] == 1 and not data["good"]


def test_cover_and_cable_files(run):
    r = run("cable", "vt.gauss", "-n", "2", "-o", str(run.path / "c.json"), files=VT)
    assert r.exit_code == 0
    c = parse_diagram_json((run.path / "c.json").read_text())
    assert isomorphic(c, cable(parse_gauss("O1+O2+U1+U2+"), 2))
    r = run("cover", "vt.gauss", "-o", str(run.path / "v.json"))
    assert r.exit_code == 0 and parse_diagram_json((run.path / "v.json").read_text()).n == 4


def test_multi_line_input(run):
    r = run("bracket", "two.gauss", files={"two.gauss": "O1+O2+U1+U2+\nO1+U1+\n"})
    assert r.output.count("# diagram") == 2
    assert run("cover", "two.gauss").exit_code == 2


def test_sqrt(run):
    r = run("sqrt-poincare", "p.txt", files={"p.txt": "P(t,q) = q^-2 + 2 + q^2\n"})
    assert r.exit_code == 0 and r.output.strip() == "P(t,q) = q^-1 + q"
    r = run("sqrt-poincare", "r.txt", files={"r.txt": "q^2 + q^-2\n"})
    assert r.exit_code == 1 and "no root" in r.output


def test_classical_check(run):
    assert run("classical-check", "vt.gauss", files=VT).exit_code == 1
    r = run("classical-check", "t.gauss", files={"t.gauss": "O1+U2+O3+U1+O2+U3+\n"})
    assert r.exit_code == 0 and "inconclusive" in r.output


def test_input_errors(run):
    assert run("bracket", "missing.gauss").exit_code == 2
    assert run("bracket", "bad.gauss", files={"bad.gauss": "O1+X\n"}).exit_code == 2
    assert run("bracket", "bad.json", files={"bad.json": "{\"crossings\": 1}"}).exit_code == 2
    assert run("bracket", "empty.gauss", files={"empty.gauss": "# nothing\n"}).exit_code == 2


def test_budget_exceeded(run, monkeypatch):
    monkeypatch.setenv("VKH_STATE_BUDGET", "2")
    assert run("bracket", "vt.gauss", files=VT).exit_code == 2


def test_fuzz(run):
    r = run("fuzz", "--iters", "4", "--seed", "1", "--max-crossings", "4")
    assert r.exit_code == 0 and "0 mismatches" in r.output
    r = run("fuzz", "--iters", "10", "--moves", "R1", "--invariants", "bracket")
    assert r.exit_code == 1 and "mismatch bracket" in r.output
    r = run("fuzz", "--iters", "3", "--json")
    assert json.loads(r.output)["iterations"] == 3
    assert run("fuzz", "--moves", "R9").exit_code == 2
