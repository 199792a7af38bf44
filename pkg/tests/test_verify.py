import json

import pytest

from mfc.cli import main
from mfc.diagram import parse_symbol
from mfc.verify import (default_suite, run_suite, verify_counts,
                        verify_monomial, verify_orlik, verify_theorem_A,
                        verify_theorem_B)

SMALL_SUITE = {
    "mfc_suite": 1,
    "allow_skip": True,
    "entries": [
        {"symbol": "A3", "checks": ["counts", "orlik", "A", "B"]},
        {"symbol": "Z5", "checks": ["counts", "A", "B"]},
        {"symbol": "I2(5)", "checks": ["counts", "orlik", "A", "B"]},
        {"monomial": [2, 2], "checks": ["monomial"]},
    ],
}


def test_reports_have_schema_fields():
    rep = verify_theorem_A(parse_symbol("A3"))
    blob = rep.to_jsonable()
    assert blob["theorem"] == "A" and blob["status"] == "agree"
    assert "timing_ms" not in blob  # byte-reproducible by default


def test_predicted_side_is_diagram_only():
    # predicted values match the forbidden-subdiagram predicate directly
    assert verify_theorem_A(parse_symbol("H3")).predicted is True
    assert verify_theorem_A(parse_symbol("G26")).predicted is False
    assert verify_theorem_B(parse_symbol("D4")).predicted is False


def test_run_suite_deterministic_bytes():
    _c1, b1 = run_suite(dict(SMALL_SUITE))
    _c2, b2 = run_suite(dict(SMALL_SUITE))
    assert json.dumps(b1, sort_keys=True) == json.dumps(b2, sort_keys=True)


def test_run_suite_exit_codes(tmp_path):
    code, bundle = run_suite(dict(SMALL_SUITE))
    assert code == 0 and bundle["summary"]["disagree"] == 0
    # skipped entry with allow_skip
    spec = {"mfc_suite": 1, "allow_skip": True,
            "entries": [{"symbol": "E8", "checks": ["counts"]}]}
    code, bundle = run_suite(spec)
    assert code == 0 and bundle["summary"]["skipped"] == 1
    spec["allow_skip"] = False
    code, _b = run_suite(spec)
    assert code == 3
    # a disagreement: Theorem B on G26 (see the decisions notes)
    spec = {"mfc_suite": 1, "allow_skip": True,
            "entries": [{"symbol": "G26", "checks": ["B"]}]}
    code, bundle = run_suite(spec)
    assert code == 1 and bundle["summary"]["disagree"] == 1


def test_run_suite_from_file(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(SMALL_SUITE))
    code, bundle = run_suite(str(path), out_dir=str(tmp_path / "out"))
    assert code == 0
    written = json.loads((tmp_path / "out" / "mfc-report.json").read_text())
    assert written["mfc_report"] == 1
    assert written["summary"] == bundle["summary"]


def test_run_suite_bad_alias():
    spec = {"mfc_suite": 1, "entries": [{"symbol": "Q9", "checks": ["A"]}]}
    with pytest.raises(Exception):
        run_suite(spec)


def test_timings_flag():
    _c, bundle = run_suite(dict(SMALL_SUITE), timings=True)
    assert all("timing_ms" in r for r in bundle["entries"])


def test_default_suite_contents():
    suite = default_suite()
    symbols = [e.get("symbol") for e in suite["entries"] if "symbol" in e]
    for must in ("Z2000", "I2(1000)", "G(31,1,2)", "G17", "A3", "A4",
                 "B3", "B4", "D4", "H3", "H4", "F4", "G25", "G26",
                 "G(3,1,3)"):
        assert must in symbols, must
    assert "G32" not in symbols
    deep_symbols = [e.get("symbol") for e in default_suite(deep=True)["entries"]]
    assert "G32" in deep_symbols
    # monomial entries
    monos = [tuple(e["monomial"]) for e in suite["entries"] if "monomial" in e]
    assert monos == [(2, 2), (3, 2), (2, 3), (3, 3)]


def test_skipped_report_for_large_groups():
    rep = verify_theorem_A(parse_symbol("E7"))
    assert rep.status == "skipped"


def test_verdicts_invariant_under_symbol_reversal():
    # generator numbering runs left-to-right in the symbol; verdicts must
    # not depend on the choice of end
    for fn in (verify_theorem_A, verify_theorem_B, verify_counts):
        for sym, rev in (("3[3]3[4]2", "2[4]3[3]3"), ("2[4]3", "3[4]2")):
            a, b = fn(parse_symbol(sym)), fn(parse_symbol(rev))
            assert (a.predicted, a.computed, a.status) == \
                (b.predicted, b.computed, b.status), (fn.__name__, sym)


def test_monomial_wider_range():
    for m, n in ((4, 2), (4, 3)):
        rep = verify_monomial(m, n)
        assert rep.status == "agree", (m, n)
        assert rep.details["equivariant_isomorphism"]


def test_jobs_parallel_matches_serial():
    _c1, b1 = run_suite(dict(SMALL_SUITE), jobs=2)
    _c2, b2 = run_suite(dict(SMALL_SUITE), jobs=1)
    assert json.dumps(b1, sort_keys=True) == json.dumps(b2, sort_keys=True)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_classify(capsys):
    assert main(["classify", "3[3]3[4]2"]) == 0
    out = capsys.readouterr().out
    assert "G26" in out and "1296" in out


def test_cli_classify_error(capsys):
    assert main(["classify", "5[5]5"]) == 2


def test_cli_build_and_export(tmp_path, capsys):
    path = str(tmp_path / "a3.mfc")
    assert main(["build", "A3", "--export", path]) == 0
    from mfc.complexes import import_complex
    assert import_complex(path).f_vector() == (14, 36, 24)


def test_cli_walls(capsys):
    assert main(["walls", "G25"]) == 0
    out = capsys.readouterr().out
    assert "recognized as: not a Milnor fiber complex" in out
    assert "Milnor wall: yes, G(3,1,2)" in out


def test_cli_walls_class_filter(capsys):
    assert main(["walls", "G26", "--class", "1"]) == 0
    out = capsys.readouterr().out
    assert out.count("class ") == 1


def test_cli_verify(capsys):
    assert main(["verify", "A", "G25"]) == 0
    assert main(["verify", "B", "G26"]) == 1
    capsys.readouterr()
    assert main(["verify", "counts", "H3", "--json"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["theorem"] == "counts" and blob["status"] == "agree"
    assert main(["verify", "monomial", "3,2"]) == 0
    assert main(["verify", "A", "E8"]) == 3


def test_cli_suite(tmp_path, capsys):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(SMALL_SUITE))
    assert main(["suite", str(path), "--out", str(tmp_path / "rep")]) == 0
    out = capsys.readouterr().out
    assert "agree" in out
