import json

import pytest

from homaloidal.cli import run


def capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def capture_json(capsys, argv):
    code, out, _ = capture(capsys, argv)
    return code, json.loads(out)


def test_type_classify_report(capsys):
    code, rep = capture_json(capsys, ["type", "classify", "7;4,2^6,1^2"])
    assert code == 0
    assert rep["schema"] == "homaloidal-report/1"
    assert rep["command"] == ["type", "classify", "7;4,2^6,1^2"]
    assert rep["config"]["modulus"] == 2147483647
    assert rep["wall_time_ms"] is None
    assert rep["result"]["classification"]["subhomaloidal_degree"] == 7
    assert rep["result"]["classification"]["homaloidal"] is False


def test_type_hudson_improper_report(capsys):
    code, rep = capture_json(capsys, ["type", "hudson", "13;8,4^6,2^2"])
    assert code == 0
    trace = rep["result"]["trace"]
    assert trace["verdict"] == "improper"
    assert trace["witness_position"] == 1
    assert trace["final"]["canonical"] == "4;2^2,1^6,-1"
    assert [s["chosen_positions"] for s in trace["steps"]][0] == [1, 2, 3]


def test_type_double_and_transform(capsys):
    code, rep = capture_json(capsys, ["type", "double", "5;2^4,1^4"])
    assert code == 0 and rep["result"]["doubled"]["canonical"] == "9;4^4,2^4"
    code, rep = capture_json(capsys, ["type", "transform", "9;4^4,2^4", "--at", "1,2,3"])
    assert code == 0
    assert rep["result"]["positions"] == [1, 2, 3]
    assert rep["result"]["transformed"]["mults"] == [1, 1, 1, 4, 2, 2, 2, 2]


def test_parse_error_exit_2_with_position(capsys):
    code, out, err = capture(capsys, ["type", "classify", "5;2,,1"])
    assert code == 2 and out == ""
    assert "position 4" in err


def test_domain_error_exit_2(capsys):
    code, _, err = capture(capsys, ["type", "double", "5;2^6"])
    assert code == 2 and "square sum" in err


def test_usage_error_exit_2(capsys):
    assert run(["nope"]) == 2
    capsys.readouterr()
    code, _, err = capture(capsys, ["hilbert", "3;1^6", "--format", "csv"])
    assert code == 2 and "csv" in err


def test_hilbert_report(capsys):
    code, rep = capture_json(capsys, ["hilbert", "5;2^4,1^4"])
    assert code == 0
    h = rep["result"]["hilbert"]
    assert h == {"degree": 5, "sampled_dim": 5, "expected": 5, "certified": True, "samples_used": 1}


def test_hilbert_uncertified_still_exits_0(capsys):
    code, rep = capture_json(capsys, ["hilbert", "4;2^5", "--retries", "2"])
    assert code == 0
    h = rep["result"]["hilbert"]
    assert h["sampled_dim"] == 1 and h["expected"] == 0 and not h["certified"]


def test_betti_report(capsys):
    code, rep = capture_json(capsys, ["betti", "5;2^4,1^4"])
    assert code == 0
    assert rep["result"]["generators"] == [[5, 5]]
    assert rep["result"]["syzygies"] == [[6, 3], [7, 1]]


def test_betti_window_failure_exits_1(capsys):
    code, out, err = capture(capsys, ["betti", "5;2^4,1^4", "--window", "1"])
    assert code == 1 and out == "" and "widen the window" in err


def test_powers_report(capsys):
    code, rep = capture_json(capsys, ["powers", "5;2^4,1^4", "--n", "2"])
    assert code == 0
    r = rep["result"]
    assert r["power_dim"] == 14 and r["predicted_power_dim"] == 14
    assert r["symbolic"]["sampled_dim"] == 14 and r["containment_ok"]


def test_search_json_and_csv(capsys):
    code, rep = capture_json(capsys, ["search", "--s", "5", "--proper-double"])
    assert code == 0
    rows = rep["result"]["rows"]
    assert len(rows) == 1 and rows[0]["canonical"] == "5;2^4,1^4"
    assert rows[0]["doubled"] == "9;4^4,2^4" and rows[0]["double_verdict"] == "proper"
    code, out, _ = capture(capsys, ["search", "--s", "5", "--format", "csv"])
    assert code == 0
    assert out.splitlines() == [
        "type,three_uniform,double_verdict",
        '"5;3,2,1^7",false,',
        '"5;2^4,1^4",true,',
    ]


def test_classify_842_csv(capsys):
    code, out, _ = capture(capsys, ["classify-842", "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "degree,r8,r4,r2,type,verdict"
    assert len(lines) == 7
    assert lines[1] == "5,0,0,6,5;2^6,proper"
    assert lines[3] == '13,1,6,2,"13;8,4^6,2^2",improper'


def test_reports_are_byte_identical(capsys):
    _, first, _ = capture(capsys, ["verify-paper", "--fast"])
    _, second, _ = capture(capsys, ["verify-paper", "--fast"])
    assert first == second
    _, third, _ = capture(capsys, ["hilbert", "5;2^4,1^4", "--seed", "7"])
    _, fourth, _ = capture(capsys, ["hilbert", "5;2^4,1^4", "--seed", "7"])
    assert third == fourth


def test_verify_paper_fast_passes(capsys):
    code, rep = capture_json(capsys, ["verify-paper", "--fast"])
    assert code == 0
    result = rep["result"]
    assert result["mode"] == "fast" and result["passed"]
    ids = [c["id"] for c in result["checks"]]
    assert ids == sorted(ids)
    assert "s7-engine" not in ids and "s3-engine" in ids
    for check in result["checks"]:
        for detail in check["details"]:
            assert set(detail) == {"name", "expected", "observed", "passed"}


def test_verify_paper_full_adds_property_suites(capsys):
    code, rep = capture_json(capsys, ["verify-paper"])
    assert code == 0
    ids = [c["id"] for c in rep["result"]["checks"]]
    assert "s7-engine" in ids and "prop-quad-random" in ids
    assert rep["result"]["counts"] == {"total": 16, "failed": 0}


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = capture(capsys, ["type", "classify", "3;1^6", "--out", str(target)])
    assert code == 0 and out == ""
    rep = json.loads(target.read_text())
    assert rep["result"]["classification"]["subhomaloidal_degree"] == 3


def test_text_format_renders(capsys):
    code, out, _ = capture(capsys, ["type", "classify", "3;1^6", "--format", "text"])
    assert code == 0
    assert "subhomaloidal_degree: 3" in out


def test_timing_flag_adds_integer(capsys):
    code, rep = capture_json(capsys, ["type", "classify", "3;1^6", "--timing"])
    assert code == 0 and isinstance(rep["wall_time_ms"], int)


def test_bad_prime_rejected(capsys):
    code, _, err = capture(capsys, ["hilbert", "3;1^6", "--prime", "1073741824"])
    assert code == 2 and "prime" in err


def test_step_limit_flag(capsys):
    code, rep = capture_json(capsys, ["type", "hudson", "13;8,4^6,2^2", "--step-limit", "2"])
    assert code == 0
    assert rep["result"]["trace"]["verdict"] == "nonterminating"
    assert rep["result"]["trace"]["step_limit"] == 2
