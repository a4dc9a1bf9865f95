import json

from transcert.cli import main, parse_grid, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_parse_helpers():
    assert parse_range("2..4") == (2, 4)
    assert parse_range("3") == (3, 3)
    grid = parse_grid("(-1,3]:1/10")
    assert len(grid) == 40 and str(grid[0]) == "-9/10" and grid[-1] == 3
    assert parse_grid("2") == [2]


def test_example_25(capsys):
    code, data = run_json(capsys, "example", "2.5")
    assert code == 0
    by_thm = {r["theorem"]: r for r in data["reports"]}
    assert by_thm["1.6"]["overall"] == "TranscendenceCriteriaMet"
    r14 = by_thm["1.4"]
    assert r14["overall"] == "NotApplicable"
    assert r14["bases"]["transcendence"] == "9" and r14["growth_base"] == "7"


def test_example_27_bases(capsys):
    code, data = run_json(capsys, "example", "2.7")
    rep = data["reports"][0]
    assert rep["bases"] == {"irrationality": "7", "transcendence_1": "13+2δ", "transcendence_2": "13"}
    assert rep["growth_by_base"]["transcendence_2"] == "Diverges"
    assert code == 0


def test_example_27_literal_params_refused(capsys):
    code, _, err = run(capsys, "example", "2.7", "--literal-params")
    assert code == 1 and "y1 >= 1" in err


def test_example_21_separation(capsys):
    code, data = run_json(capsys, "example", "2.1", "--x", "phibar")
    assert data["separation"]["verdict"] == "Separated"
    assert data["reports"][0]["index_convention"] == "adjacent"


def test_verify_user_sequence(capsys):
    code, data = run_json(capsys, "verify", "--a", "F(10^n)*F(10^n+1)", "--theorem", "1.4",
                          "--param", "beta=1/2", "--param", "y=1")
    assert code == 0
    assert data["growth_base"] == "10"
    assert data["growth_by_base"]["transcendence"] == "Diverges"
    assert data["overall"] == "TranscendenceCriteriaMet"


def test_verify_missing_zeta_is_inconclusive(capsys, tmp_path):
    f = tmp_path / "alt.json"
    f.write_text(json.dumps({"a": "2^(3^n)", "b": "(0-1)^n", "profile": {"g": "3", "A": "0.693"}}))
    code, data = run_json(capsys, "verify", "--sequence", str(f), "--theorem", "1.4")
    assert code == 2
    assert data["overall"] == "Inconclusive"
    assert {h["label"]: h["overall"] for h in data["hypotheses"]}["(4)"] == "Undecided"


def test_malformed_dsl_exit_3(capsys):
    code, _, err = run(capsys, "verify", "--a", "F(10^n", "--theorem", "1.4")
    assert code == 3 and "offset" in err


def test_applicability_preset(capsys):
    code, data = run_json(capsys, "applicability", "--preset", "2.3")
    assert code == 0
    mins = [b["min_base"] for b in data["branches"]]
    assert mins == ["103/10", "10", "17"]
    assert all(b["verdict"] == "not immediately applicable" for b in data["branches"])


def test_applicability_single_point(capsys):
    code, data = run_json(capsys, "applicability", "--d", "2", "--bound", "y1=1", "--bound", "y2=1/2",
                          "--bound", "beta=1/2", "--grid", "0")
    assert data["branches"][0]["min_base"] == "13"


def test_applicability_empty_grid_exit_4(capsys):
    code, _, _ = run(capsys, "applicability", "--grid", "[1,0]", "--bound", "y1=1")
    assert code == 4


def test_approximate_example_27(capsys):
    code, data = run_json(capsys, "approximate", "--builtin", "2.7", "--n-range", "2..3",
                          "--precision", "512")
    assert code == 0 and data["method"] == "general"
    assert data["err_strictly_decreasing"]
    for a in data["approximants"]:
        assert a["checks"]["(21)"] == "Holds"


def test_approximate_rational_delegates(capsys):
    code, data = run_json(capsys, "approximate", "--builtin", "2.1", "--n-range", "2..3")
    assert code == 0 and data["method"] == "rational"


def test_approximate_beyond_ceiling_refused(capsys):
    code, _, err = run(capsys, "approximate", "--builtin", "2.7", "--n-range", "2..9")
    assert code == 1 and "refused" in err


def test_approximate_not_galois_exit_5(capsys, tmp_path):
    f = tmp_path / "cubic.json"
    f.write_text(json.dumps({"field": {"minpoly": [-2, 0, 0, 1]}, "a": "(theta+1)^(3^n)", "b": "1",
                             "profile": {"g": "3", "A": "0.95"}}))
    code, _, err = run(capsys, "approximate", "--sequence", str(f), "--n-range", "2..2")
    assert code == 5


def test_sum_and_out_file(capsys, tmp_path):
    out = tmp_path / "sum.json"
    code, _, _ = run(capsys, "sum", "--builtin", "2.5", "--format", "json", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == 0 and data["lo"].startswith("3.44418538")


def test_invariants_command(capsys):
    code, data = run_json(capsys, "invariants", "--count", "10")
    assert code == 0 and data["all_hold"]


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "json", "--n-range", "2..3", "example", "2.4")
    assert code == 0 and json.loads(out)["n_range"] == [2, 3]


def test_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "example", "2.4", "--format", "json")
    _, b, _ = run(capsys, "example", "2.4", "--format", "json")
    assert a == b
    assert json.dumps(json.loads(a), indent=2, ensure_ascii=False) + "\n" == a
