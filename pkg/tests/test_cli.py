import json

import pytest

from olcomp.cli import main
from olcomp.errors import ParseError, ValidationError
from olcomp.instance import emit_report, parse_instance, parse_report

CHAIN = {"space": {"atoms": ["1", "2", "3"], "weights": [1, 1, 1]}, "map": {"1": "1", "2": "1", "3": "2"}}
INDICATOR = {
    "space": {"atoms": ["a", "b", "c"], "weights": ["3", "1", "1/2"]},
    "map": {"a": "a", "b": "b", "c": "c"},
    "young": {"family": "power", "parameters": {"p": 2}},
    "weight": {"family": "constant", "parameters": {"c": 1}},
    "function": {"a": 1, "b": 1, "c": 0},
}
SHIFT = {"seq": {"prefix": {}, "a": 1, "b": 1, "threshold": 1}}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="inst.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def body(text):
    return json.loads(text)["body"]


def test_parse_minimal():
    inst = parse_instance(json.dumps({"space": {"atoms": ["x", "y"], "weights": [1, "2/3"]}, "map": {"x": "x", "y": "y"}}))
    assert inst.space.weights[1].denominator == 3
    assert inst.map.table() == {"x": "x", "y": "y"}


def test_parse_errors():
    with pytest.raises(ValidationError) as exc:
        parse_instance(json.dumps({"space": {"atoms": ["1", "z"], "weights": [1, "-1"]}, "map": {"1": "1", "z": "z"}}))
    assert "z" in exc.value.locus
    with pytest.raises(ValidationError):
        parse_instance(json.dumps({"space": {"atoms": ["1"], "weights": [1]}, "map": {"1": "2"}}))
    with pytest.raises(ValidationError, match="unknown field"):
        parse_instance(json.dumps({**CHAIN, "extra": 1}))
    with pytest.raises(ValidationError):
        parse_instance(json.dumps({"space": {"atoms": ["1"], "weights": [0.5]}, "map": {"1": "1"}}))
    with pytest.raises(ParseError) as exc:
        parse_instance('{"space": \n  [}')
    assert exc.value.locus.startswith("line 2")


def test_rationals_are_exact():
    inst = parse_instance(json.dumps({"space": {"atoms": ["1"], "weights": ["1/3"]}, "map": {"1": "1"}}))
    w = inst.space.weights[0]
    assert (w.numerator, w.denominator) == (1, 3)


def test_verify_chain(capsys, write):
    code, out, _ = run(capsys, ["verify", write(CHAIN), "--cap", "4", "--format", "json"])
    assert code == 0
    res = body(out)["results"]
    assert res["ascent_matrix"] == res["ascent_measure"] == 2
    assert res["descent_matrix"] == 2


def test_norm_indicator(capsys, write):
    code, out, _ = run(capsys, ["norm", write(INDICATOR), "--format", "json"])
    assert code == 0
    res = body(out)["results"]
    assert res["norm"] == pytest.approx(2.0, rel=1e-9)
    assert res["indicator"]["closed_form"] == pytest.approx(2.0, rel=1e-12)


def test_norm_flags_unweighted_discrepancy(capsys, write):
    # nu(S) = 3 and W(3) = 2 * sqrt(3) != 3 (at nu(S) = 4 the two formulas coincide)
    doc = dict(INDICATOR, weight={"family": "power_decay", "parameters": {"alpha": "1/2"}}, function={"a": 1})
    code, out, _ = run(capsys, ["norm", write(doc), "--format", "json"])
    ind = body(out)["results"]["indicator"]
    assert code == 0 and ind["unweighted_formula_differs"] is True


def test_other_commands(capsys, write):
    path = write(CHAIN)
    code, out, _ = run(capsys, ["ascent", path, "--format", "json"])
    assert code == 0 and body(out)["results"]["kernel_dims"][:3] == [0, 1, 2]
    code, out, _ = run(capsys, ["descent", path, "--format", "json"])
    assert code == 0 and body(out)["results"]["descent"] == 2
    code, out, _ = run(capsys, ["rnd", path, "-m", "1", "--format", "json"])
    assert body(out)["results"]["rn_derivative"] == {"1": "2", "2": "1", "3": "0"}
    code, out, _ = run(capsys, ["bound-k", path, "--format", "json"])
    assert body(out)["results"]["K"] == "2"
    code, out, _ = run(capsys, ["bound-k", write({"space": {"atoms": ["1", "2"], "weights": [1, 0]}, "map": {"1": "2", "2": "2"}}, "s.json"), "--format", "json"])
    assert body(out)["results"]["K"] == "Unbounded"


def test_seq_commands(capsys, write):
    path = write(SHIFT)
    code, out, _ = run(capsys, ["seq-ascent", path, "--cap", "5", "--format", "json"])
    assert code == 0 and body(out)["results"]["display"] == "CertifiedInfinite"
    code, out, _ = run(capsys, ["seq-witness", path, "--count", "4", "--format", "json"])
    assert body(out)["results"]["witnesses"] == [1, 2, 3, 4]
    code, out, _ = run(capsys, ["seq-descent", path, "--cap", "3", "--format", "json"])
    assert body(out)["results"]["bound"] == "AllInjective"
    code, out, err = run(capsys, ["seq-ascent", write(CHAIN, "c.json"), "--cap", "3"])
    assert code == 2 and "seq" in err


def test_input_errors_exit_2(capsys, write):
    bad_weight = {"space": {"atoms": ["1", "2"], "weights": [1, "-1"]}, "map": {"1": "1", "2": "2"}}
    code, _, err = run(capsys, ["verify", write(bad_weight)])
    assert code == 2 and "space.weights[2]" in err
    dangling = {"space": {"atoms": ["1"], "weights": [1]}, "map": {"1": "7"}}
    code, _, err = run(capsys, ["verify", write(dangling)])
    assert code == 2 and "map[1]" in err
    code, _, err = run(capsys, ["verify", write("{not json")])
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, ["norm", write(CHAIN)])
    assert code == 2
    code, _, err = run(capsys, ["verify", write({"space": {"atoms": ["1", "2"], "weights": [1, 0]}, "map": {"1": "2", "2": "2"}})])
    assert code == 2 and "weight 0" in err


def test_fuzz_deterministic_and_passing(capsys):
    argv = ["fuzz", "--atoms", "6", "--trials", "10000", "--seed", "42", "--format", "json"]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == 0
    assert body(out1) == body(out2)
    assert body(out1)["results"]["accepted"] + body(out1)["results"]["rejected_not_well_defined"] == 10000


def test_reports_deterministic_and_round_trip(capsys, write):
    path = write(CHAIN)
    _, a, _ = run(capsys, ["verify", path, "--format", "json", "--seed", "9"])
    _, b, _ = run(capsys, ["verify", path, "--format", "json", "--seed", "9"])
    strip = lambda t: emit_report(json.loads(t)["body"])
    assert strip(a) == strip(b)
    assert emit_report(parse_report(a)) == a
    assert body(a)["seed"] == 9


def test_failed_verdict_exits_1(capsys, write, monkeypatch):
    import olcomp.criteria as criteria

    monkeypatch.setattr(criteria, "ascent_by_measures", lambda *a, **k: 99)
    code, out, _ = run(capsys, ["verify", write(CHAIN), "--format", "json"])
    b = body(out)
    assert code == 1
    assert b["verdicts"]["ascent_oracles_agree"] == "fail"
    assert b["counterexamples"][0]["map"] == CHAIN["map"]


def test_output_file_and_human_format(capsys, write, tmp_path):
    out_path = tmp_path / "report.txt"
    code, out, _ = run(capsys, ["verify", write(CHAIN), "-o", str(out_path)])
    assert code == 0 and out == ""
    assert "ascent_oracles_agree" in out_path.read_text()
