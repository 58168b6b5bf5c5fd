import csv
import io
import json
from pathlib import Path

import pytest

from cpbounds import bounds, catalog
from cpbounds.cli import main
from cpbounds.parsing import parse_group

DATA = Path(__file__).parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_order():
    code, text = run("order", "Sz(8)")
    assert code == 0 and "order: 29120" in text and "2^6 * (7) * (65)" in text
    code, text = run("order", "Alt(5)")
    assert code == 0 and "order: 60" in text


def test_order_nonsimple_is_usage_error(capsys):
    code, _ = run("order", "L(2,3)")
    assert code == 2 and "nonsimple" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["order", "Foo(3)"], ["vp", "4", "12"], ["frobnicate"], ["verify", "nope"], ["cp", "C4", "2"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_vp():
    assert run("vp", "7", "L(3,2)") == (0, "v_7(|L(3,2)|) = 1\n")
    assert run("vp", "2", "96")[1].strip().endswith("= 5")


@pytest.mark.parametrize("factors, p, cp, cpn", [("A5", 2, 0, 0), ("C2,C2,A5", 2, 2, 0), ("L(2,7)", 3, 1, 1)])
def test_cp(factors, p, cp, cpn):
    code, text = run("cp", factors, str(p), "--json")
    rec = records(text)[1]
    assert code == 0 and rec["cp"] == cp and rec["cp_nonabelian"] == cpn


def test_verify_json_summary_matches_records():
    code, text = run("verify", "classical", "--p-max", "100", "--json")
    recs = records(text)
    assert code == 0
    assert recs[0]["type"] == "header" and recs[-1]["type"] == "summary"
    body = recs[1:-1]
    assert recs[-1]["checked"] == len(body) > 500
    assert recs[-1]["violated"] == 0
    assert all(r["anchor"] == "classical-valuation-3m" for r in body)


def test_verify_inline():
    code, text = run("verify", "inline", "--r-max", "1000")
    assert code == 0 and "999 held" in text


def test_verify_csv():
    code, text = run("verify", "alt", "--alt-m-max", "7", "--csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and rows and all(r["holds"] == "True" for r in rows)


def test_corrupted_order_table_is_detected(monkeypatch):
    real = bounds._order

    def corrupted(g):
        # pretend |G2(q)| carried a spurious 13^50
        return real(g) * 13**50 if g.family == "G2" else real(g)

    monkeypatch.setattr(bounds, "_order", corrupted)
    code, text = run("verify", "all", "--json")
    assert code == 1
    bad = [r for r in records(text)[1:-1] if r.get("holds") is False]
    assert bad and all(r["subject"].startswith("G2") for r in bad)


def test_config_precedence(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# small sweep\np-max = 50\nm-max = 3\n")
    _, text = run("verify", "classical", "--config", str(cfg), "--json")
    header = records(text)[0]
    assert header["config"]["p_max"] == 50 and header["config"]["m_max"] == 3
    _, text = run("verify", "classical", "--config", str(cfg), "--p-max", "30", "--json")
    header = records(text)[0]
    assert header["config"]["p_max"] == 30 and header["config"]["m_max"] == 3
    assert run("verify", "classical", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_estimate():
    code, text = run("estimate", "--json")
    est = {r["quantity"]: r for r in records(text)[1:-1]}
    assert code == 0
    assert est["inline_prefactor"]["supremum"] == "9"
    assert est["legendre_tightness"]["supremum"] == "1"
    assert est["quasisimple_ratio"]["witness"]


def test_orbital_examples():
    code, text = run("orbital", str(DATA / "trivial_f7.spec"), "--json")
    recs = records(text)[1:-1]
    assert code == 0 and {r["diameter"] for r in recs} == {6} and all(r["ms_bound_holds"] for r in recs)
    code, text = run("orbital", str(DATA / "scalars_f7.spec"), "--json")
    assert code == 0 and [r["diameter"] for r in records(text)[1:-1]] == [1]
    code, text = run("orbital", str(DATA / "rotation_f3.spec"), "--orbit", "all", "--factors", "C2,C2,C2", "--undirected", "--json")
    recs = records(text)[1:-1]
    assert code == 0 and len(recs) == 2 and all(r["diameter"] <= 4 for r in recs)
    assert all(r["cp_value"] == 0 and r["corollary_ratio"] is None for r in recs)


def test_orbital_single_orbit_and_errors(tmp_path):
    code, text = run("orbital", str(DATA / "rotation_f3.spec"), "--orbit", "1,1", "--cp", "2", "--json")
    recs = records(text)[1:-1]
    assert code == 0 and len(recs) == 1 and recs[0]["corollary_ratio"] == "1"
    bad = tmp_path / "bad.spec"
    bad.write_text("3 2\n1 1 1 1\n")
    assert run("orbital", str(bad))[0] == 2
    assert run("orbital", str(DATA / "trivial_f7.spec"), "--cap", "5")[0] == 2


def test_orbital_corpus():
    code, text = run("orbital", "--corpus", "--json")
    recs = records(text)
    assert code == 0 and recs[-1]["violated"] == 0 and recs[-1]["checked"] > 100
