import json

import pytest

from gallai.cli import main
from gallai.coloring import find_rainbow_triangle, load

E1 = "4 3\n1 3 3 3 3 2\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out


def report(out):
    return json.loads(out.out)


def test_gen_random(tmp_path, capsys):
    path = tmp_path / "g.gal"
    code, out = run(capsys, "gen", "--n", "50", "--r", "4", "--seed", "7", "--out", str(path))
    assert code == 0
    assert report(out)["verdicts"]["gallai"]
    assert find_rainbow_triangle(load(str(path))) is None


def test_gen_tree_golden(tmp_path, capsys):
    spec = tmp_path / "e1.sexp"
    spec.write_text("(sub (q 2 3 | 3) (child (leaf 2 3 | 1)) (child (leaf 2 3 | 2)))")
    path = tmp_path / "e1.gal"
    code, _ = run(capsys, "gen", "--tree", str(spec), "--out", str(path))
    assert code == 0 and path.read_text() == E1


def test_gen_zero_is_input_error(capsys):
    code, out = run(capsys, "gen", "--n", "0", "--r", "3")
    assert code == 3 and "InputError" in out.err


def test_check_rainbow(tmp_path, capsys):
    path = tmp_path / "rb.gal"
    path.write_text("3 3\n1 2 3\n")
    code, out = run(capsys, "check", "--file", str(path))
    assert code == 3
    rep = report(out)
    assert rep["result"]["verdict"] == "not-gallai" and rep["result"]["rainbow_triangle"] == [0, 1, 2]


def test_check_witness(tmp_path, capsys):
    path = tmp_path / "e1.gal"
    path.write_text(E1)
    code, out = run(capsys, "check", "--file", str(path), "--vertices", "0,1,2,3", "--colors", "1,3")
    assert code == 2 and not report(out)["verdicts"]["witness"]


def test_extract_cograph(tmp_path, capsys):
    path = tmp_path / "e1.gal"
    path.write_text(E1)
    code, out = run(capsys, "extract", "--alg", "cograph", "--file", str(path))
    rep = report(out)
    assert code == 0 and rep["result"]["witness"]["size"] >= 2 and rep["verdicts"]["valid"]


def test_extract_general_and_oracle(tmp_path, capsys):
    path = tmp_path / "g.gal"
    run(capsys, "gen", "--n", "80", "--r", "4", "--seed", "2", "--out", str(path))
    code, out = run(capsys, "extract", "--alg", "general", "--s", "3", "--file", str(path))
    assert code == 0 and report(out)["result"]["validation"]["valid"]
    code, out = run(capsys, "oracle", "--file", str(path), "--colors", "1,3")
    assert code == 0 and report(out)["verdicts"]["witness"]


def test_deterministic_reports(tmp_path, capsys):
    path = tmp_path / "g.gal"
    run(capsys, "gen", "--n", "120", "--r", "3", "--seed", "9", "--out", str(path))
    first = run(capsys, "--no-timings", "extract", "--alg", "tight3", "--file", str(path), "--m", "2^40")[1].out
    second = run(capsys, "--no-timings", "extract", "--alg", "tight3", "--file", str(path), "--m", "2^40")[1].out
    assert first == second


def test_construct(tmp_path, capsys):
    path = tmp_path / "c.gal"
    code, out = run(capsys, "construct", "--r", "4", "--s", "3", "--m", "2^12", "--seed", "1", "--out", str(path))
    rep = report(out)
    assert code == 0 and rep["result"]["n"] == 4096
    assert load(str(path)).n == 4096


def test_scale_cap(monkeypatch, capsys):
    monkeypatch.setattr("gallai.cli.SCALE_CAP", 10)
    code, _ = run(capsys, "gen", "--n", "11", "--r", "3")
    assert code == 4


def test_budget_exhausted(capsys):
    code, _ = run(capsys, "ramsey-search", "2", "1", "0", "--budget", "5")
    assert code == 5


def test_discrepancy(tmp_path, capsys):
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"r": 4, "weights": {"1,2": "6"}}))
    code, out = run(capsys, "discrepancy", "--weights", str(path), "--s", "3")
    rep = report(out)
    assert code == 0 and rep["result"]["deviation"]["F"] == "3"


def test_bench(capsys):
    code, out = run(capsys, "bench", "--t", "8,16")
    rows = report(out)["result"]["rows"]
    assert code == 0 and [r["n"] for r in rows] == [512, 4096]


def test_facts_c_reports_failure(capsys):
    code, out = run(capsys, "facts", "--appendix", "C", "--logm", "2^35", "--no-threshold")
    rep = report(out)
    assert set(rep["verdicts"]) == {"C1", "C2", "C3", "C4"}
    assert code == (0 if all(rep["verdicts"].values()) else 2)


def test_text_format(tmp_path, capsys):
    path = tmp_path / "e1.gal"
    path.write_text(E1)
    code, out = run(capsys, "--format", "text", "extract", "--alg", "triple", "--file", str(path))
    assert code == 0 and "verdicts.product_at_least_n = true" in out.out


def test_unknown_alg(capsys):
    with pytest.raises(SystemExit):
        main(["extract", "--alg", "nope", "--file", "x"])
