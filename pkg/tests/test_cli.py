import csv
import io
import json

import pytest

from ponderation.cli import main


def rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_symbol_example(capsys):
    code, out, _ = run(capsys, "symbol", "--weight", "g1", "--n", "1", "--point", "1+0i,1+0i")
    assert code == 0
    assert out.startswith("# ponderation-table/1")
    row = rows(out)[0]
    assert float(row["kernel_re"]) == pytest.approx(0.36787944, abs=1e-8)
    assert "tail_bound" in row


def test_transform_example(capsys):
    code, out, _ = run(capsys, "transform", "--tag", "simple", "--alpha", "1", "--f", "z^1+3z^2", "--u", "0.5")
    assert code == 0
    row = rows(out)[0]
    assert float(row["val_re"]) == pytest.approx(0.5, abs=1e-10)
    assert float(row["residual"]) < 1e-10


def test_verify_example_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "hyperbolic_family", "--seed", "1")
    assert code == 0
    code, _, err = run(capsys, "verify", "--suite", "not_a_suite")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "symbol", "--n", "7")[0] == 2
    assert run(capsys, "transform", "--tag", "simple", "--f", "z", "--u", "0.5")[0] == 2


def test_domain_error_is_reported_per_row(capsys):
    code, out, _ = run(capsys, "symbol", "--weight", '{"generator": {"name": "factorial_power", "k": 3}, '
                       '"factor": {"n": 1, "terms": [{"set": "full", "ponderation": {"kind": "constant", "value": 1}}]}}',
                       "--point", "0.1,1", "--point", "0.2,1")
    assert code == 0
    table = rows(out)
    assert len(table) == 2 and all(r["error"] for r in table)


def test_output_is_byte_identical(tmp_path):
    path = tmp_path / "report.json"
    argv = ["verify", "--suite", "star_homomorphism", "--seed", "3", "--format", "json", "-o", str(path)]
    snapshots = []
    for _ in range(2):
        assert main(argv) == 0
        snapshots.append(path.read_bytes())
    assert snapshots[0] == snapshots[1]
    data = json.loads(snapshots[0])
    assert data["reports"][0]["passed"] is True


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": 2, "format": "json"}))
    code, out, _ = run(capsys, "symbol", "--config", str(cfg), "--weight", "g_ee", "--point", "0.5,0.5,1,1")
    assert code == 0
    data = json.loads(out)
    assert data["config"]["n"] == 2 and "zbar2_re" in data["columns"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nonsense": 1}))
    assert run(capsys, "symbol", "--config", str(bad))[0] == 2


def test_moments_and_theta_tables(capsys):
    code, out, _ = run(capsys, "moments", "--k-max", "4")
    assert code == 0
    for r in rows(out):
        assert float(r["rel_error"]) < 1e-10
    code, out, _ = run(capsys, "explore-theta", "--k-max", "3")
    assert code == 0 and len(rows(out)) == 4


def test_kernel_table_with_hankel(capsys):
    code, out, _ = run(capsys, "kernel", "--tag", "g3", "--hankel")
    assert code == 0
    table = rows(out)
    assert all(float(r["abs_diff"]) < 1e-12 for r in table)
    assert any(abs(float(r["hankel_J_re"]) - float(r["series_re"])) > 1e-3 for r in table)
