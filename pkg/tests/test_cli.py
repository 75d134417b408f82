import json

import pytest

from orthosign.cli import main, render_json
from orthosign.exact import matrix_to_json, parse_matrix_json
from orthosign.fixtures import fixture_text


@pytest.fixture()
def fixture_dir(tmp_path):
    assert main(["fixtures", "--out", str(tmp_path / "fx")]) == 0
    return tmp_path / "fx"


def test_fixtures_writes_parseable_files(fixture_dir, q1):
    files = sorted(p.name for p in fixture_dir.iterdir())
    assert files == ["pstar.pat", "q1.json", "q2.json", "r3.json", "s3.pat", "t3.pat"]
    assert parse_matrix_json((fixture_dir / "q1.json").read_text()) == q1


def test_verify_q1(fixture_dir, capsys):
    code = main(["verify", str(fixture_dir / "q1.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert "orthogonal: true" in out
    assert "det_sign: +1" in out
    assert "+++--++" in out


def test_verify_q2_json(fixture_dir, capsys):
    code = main(["verify", str(fixture_dir / "q2.json"), "--json"])
    out = capsys.readouterr().out
    assert code == 0
    report = json.loads(out)
    assert report["orthogonal"] is True
    assert report["det_sign"] == -1
    assert report["sign_pattern"][0] == "+++--++"


def test_verify_r3(fixture_dir, capsys):
    assert main(["verify", str(fixture_dir / "r3.json")]) == 0
    assert "det_sign: +1" in capsys.readouterr().out


def test_verify_non_orthogonal_exits_1(tmp_path, capsys):
    from orthosign.exact import RatMatrix

    path = tmp_path / "m.json"
    path.write_text(matrix_to_json(RatMatrix.from_rows([[1, 1], [1, 1]])))
    assert main(["verify", str(path)]) == 1
    out = capsys.readouterr().out
    assert "orthogonal: false" in out
    assert "det_sign: 0" in out


def test_pattern_t3_cites_columns(fixture_dir, capsys):
    code = main(["pattern", str(fixture_dir / "t3.pat")])
    out = capsys.readouterr().out
    assert code == 1
    assert "pass: false" in out
    assert "columns 1 and 2" in out


def test_pattern_s3_passes(fixture_dir, capsys):
    assert main(["pattern", str(fixture_dir / "s3.pat")]) == 0
    assert "pass: true" in capsys.readouterr().out


def test_pattern_json_failure_indices(fixture_dir, capsys):
    assert main(["pattern", str(fixture_dir / "t3.pat"), "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["pass"] is False
    assert {"axis": "col", "i": 0, "j": 1} in report["failures"]


def test_realize_s3(fixture_dir, capsys):
    code = main(["realize", str(fixture_dir / "s3.pat"), "--det", "+1", "--seed", "7"])
    out = capsys.readouterr().out
    assert code == 0
    assert "det +1: found" in out


def test_realize_t3_none(fixture_dir, capsys):
    assert main(["realize", str(fixture_dir / "t3.pat")]) == 1
    assert "no realization" in capsys.readouterr().out


def test_realize_json_roundtrip(fixture_dir, capsys):
    assert main(["realize", str(fixture_dir / "s3.pat"), "--seed", "3", "--json"]) == 0
    out = capsys.readouterr().out
    assert render_json(json.loads(out)) == out


def test_hunt_pstar_seeded(fixture_dir, capsys):
    seeds = f"{fixture_dir}/q1.json,{fixture_dir}/q2.json"
    code = main([
        "hunt", str(fixture_dir / "pstar.pat"),
        "--seed", "7", "--margin", "0.01", "--det", "any", "--seeds", seeds,
        "--denom-bound", "20014",
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "verdict: AmbiguousFound" in out
    assert "certificate: exact orthogonal matrix verified" in out


def test_hunt_one_sided(fixture_dir, capsys):
    code = main(["hunt", str(fixture_dir / "s3.pat"), "--det", "+1", "--seed", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "det +1: found" in out
    assert "det -1: none found" in out
    assert main(["hunt", str(fixture_dir / "s3.pat"), "--det", "-1", "--seed", "1",
                 "--restarts", "5", "--max-iters", "200"]) == 1


def test_hunt_single_sign_exits_1(fixture_dir, capsys):
    assert main(["hunt", str(fixture_dir / "s3.pat"), "--seed", "1"]) == 1
    assert "verdict: OnlyPlusFound" in capsys.readouterr().out


def test_hunt_seeded_json_deterministic(fixture_dir, capsys):
    seeds = f"{fixture_dir}/q1.json,{fixture_dir}/q2.json"
    argv = [
        "hunt", str(fixture_dir / "pstar.pat"),
        "--seed", "7", "--margin", "0.01", "--seeds", seeds, "--json",
    ]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert render_json(json.loads(first)) == first


def test_census_order_2(capsys):
    assert main(["census", "--order", "2"]) == 0
    out = capsys.readouterr().out
    assert "0 ambiguous" in out


def test_census_json_roundtrip_and_determinism(capsys):
    assert main(["census", "--order", "1", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["census", "--order", "1", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert render_json(json.loads(first)) == first


def test_census_requires_order(capsys):
    assert main(["census"]) == 2


def test_census_rejects_order_4_without_flag(capsys):
    assert main(["census", "--order", "4"]) == 2


def test_malformed_pattern_file(tmp_path, capsys):
    bad = tmp_path / "bad.pat"
    bad.write_text("+-\n+x\n")
    assert main(["pattern", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err
    assert "column 2" in err


def test_malformed_matrix_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 1, "cols": 1, "entries": [["1/x"]]}')
    assert main(["verify", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["verify", "/nonexistent/never.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["realize"])
    assert exc.value.code == 2


def test_float_seed_file(fixture_dir, tmp_path, capsys):
    # seeds may also be plain nested-array JSON
    from orthosign.realize import to_float

    q1 = parse_matrix_json((fixture_dir / "q1.json").read_text())
    arr = [[float(v) for v in row] for row in to_float(q1)]
    path = tmp_path / "q1f.json"
    path.write_text(json.dumps(arr))
    code = main([
        "hunt", str(fixture_dir / "pstar.pat"),
        "--seed", "2", "--margin", "0.01", "--seeds", str(path),
        "--restarts", "2", "--max-iters", "300",
    ])
    out = capsys.readouterr().out
    assert "det +1: found" in out
