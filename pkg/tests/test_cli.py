import json

import pytest
from click.testing import CliRunner

from mfgap.cli import main
from mfgap.reporting import canonical_json, format_float


@pytest.fixture
def runner():
    return CliRunner()


def test_schottky_verify_exit_zero(runner, tmp_path):
    out = tmp_path / "cert.json"
    result = runner.invoke(main, ["schottky-verify", "--scan-len", "4", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert report["certificate"]["ok"] is True


def test_gap_test_zero_samples_is_usage_error(runner):
    result = runner.invoke(main, ["gap-test", "--samples", "0"])
    assert result.exit_code == 2


def test_unknown_flag_is_usage_error(runner):
    result = runner.invoke(main, ["orbit", "--no-such-flag"])
    assert result.exit_code == 2


def test_orbit_stdout(runner):
    result = runner.invoke(main, ["orbit", "--radius", "2"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["size"] == 17


def test_gap_test_csv(runner, tmp_path):
    out = tmp_path / "rep.json"
    csv = tmp_path / "ratios.csv"
    result = runner.invoke(
        main,
        [
            "gap-test", "--samples", "10", "--seed", "3", "--radius", "3",
            "--out", str(out), "--csv", str(csv),
        ],
    )
    assert result.exit_code == 0
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "sample,ratio"
    assert len(lines) == 11
    report = json.loads(out.read_text())
    assert "csv" not in report


def test_failing_suite_exits_one(runner, tmp_path):
    # a pair with identical generators cannot certify
    pair = {
        "gen_a": [["3", "1"], ["2", "1"]],
        "gen_b": [["3", "1"], ["2", "1"]],
        "ia_plus": {"lo": "41/20", "hi": "51/50"},
        "ia_minus": {"lo": "1/15", "hi": "-31/32"},
        "ib_plus": {"lo": "41/20", "hi": "51/50"},
        "ib_minus": {"lo": "1/15", "hi": "-31/32"},
    }
    pf = tmp_path / "pair.json"
    pf.write_text(json.dumps(pair))
    result = runner.invoke(
        main, ["schottky-verify", "--pair-file", str(pf), "--scan-len", "2"]
    )
    assert result.exit_code == 1


def test_cor43_explicit_point(runner):
    result = runner.invoke(main, ["cor43", "--point", "3,3,3", "--depth", "8"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert len(report["points"]) == 1


def test_cor43_bad_point_usage_error(runner):
    result = runner.invoke(main, ["cor43", "--point", "3;3;3"])
    assert result.exit_code == 2


def test_determinism_small(runner, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    for out in (out1, out2):
        result = runner.invoke(
            main, ["all", "--seed", "7", "--scale", "smoke", "--out", str(out)]
        )
        assert result.exit_code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_canonical_float_format():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(2.0) == "2.0"
    assert float(format_float(0.2679491924311228)) == 0.2679491924311228
    with pytest.raises(ValueError):
        format_float(float("inf"))


def test_canonical_json_sorted_and_stable():
    obj = {"b": [1.5, 2], "a": {"y": True, "x": None}}
    text = canonical_json(obj)
    assert text.index('"a"') < text.index('"b"')
    assert canonical_json(json.loads(text)) == text
