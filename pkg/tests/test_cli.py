"""End-to-end checks of the command line: output schemas, exit codes,
config merging, and determinism. Everything drives ``main`` directly."""

import json

import pytest

from rdpc import GaussianPairSource, rpc_gaussian
from rdpc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


RDC_EXAMPLE = ["rdc", "binary", "--a", "0.3", "--p1", "0.1", "--d", "0.1",
               "--c", "0.85"]


def test_point_query_payload(capsys):
    code, out, _ = run(capsys, *RDC_EXAMPLE)
    assert code == 0
    payload = json.loads(out)
    assert payload["rate"] == pytest.approx(0.342282530869852, abs=1e-12)
    assert payload["unit"] == "bits"
    assert payload["feasible"] is True
    assert payload["region"] == "distortion_limited"
    assert set(payload["witness"]) == {"p_a", "p_b"}
    assert payload["inputs"]["d"] == 0.1
    assert payload["tool_version"]


def test_point_json_round_trips(capsys):
    _, out, _ = run(capsys, *RDC_EXAMPLE)
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


def test_infeasible_point_exits_two(capsys):
    code, out, _ = run(capsys, "rdc", "binary", "--a", "0.3", "--p1", "0.1",
                       "--d", "0.3", "--c", "0.4")
    assert code == 2
    payload = json.loads(out)
    assert payload["rate"] is None
    assert payload["feasible"] is False
    assert payload["region"] == "infeasible"


def test_gaussian_point_matches_library(capsys):
    code, out, _ = run(capsys, "rpc", "gaussian", "--sigma-x", "1",
                       "--sigma-s", "0.7", "--theta1", "0.63",
                       "--p", "0.01", "--c", "0.562264")
    assert code == 0
    src = GaussianPairSource(0.0, 0.0, 1.0**2, 0.7**2, 0.63)
    expected = rpc_gaussian(src, 0.01, 0.562264)
    payload = json.loads(out)
    assert payload["rate"] == expected.rate
    assert payload["unit"] == "nats"


@pytest.mark.parametrize(
    "argv",
    [
        RDC_EXAMPLE + ["--units", "nats"],
        RDC_EXAMPLE + ["--format", "csv"],
        RDC_EXAMPLE + ["--emit-plot-script"],
        RDC_EXAMPLE[:-2],  # missing --c
        ["restore", "--units", "bits"],
        ["rpc-given-d", "--d", "0.5", "--rate", "0.4", "--p", "0.01"],
        ["rpc-given-d", "--d", "0.5", "0.6", "--p", "1", "--c", "0.9"],
        ["oracle", "--family", "binary", "--a", "0.3", "--p1", "0.1"],
        ["verify", "--format", "csv"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_bad_flags_exit_one(capsys):
    for argv in (["bogus"], [], ["rdc"], ["verify", "--suite", "nope"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        capsys.readouterr()
        assert exc.value.code == 1


def test_surface_csv_schema_and_order(capsys):
    code, out, _ = run(capsys, "surface", "--family", "rdc-binary",
                       "--a", "0.3", "--p1", "0.1",
                       "--d-min", "0", "--d-max", "0.3", "--d-steps", "2",
                       "--c-min", "0.5", "--c-max", "1", "--c-steps", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "d_or_p,c,rate,unit,region,feasible"
    assert len(lines) == 1 + 2 * 3
    # outer loop over D, inner over C
    first = [line.split(",")[:2] for line in lines[1:4]]
    assert [d for d, _ in first] == ["0", "0", "0"]
    assert [c for _, c in first] == ["0.5", "0.75", "1"]
    assert all(line.split(",")[3] == "bits" for line in lines[1:])


def test_surface_json_round_trips(capsys):
    code, out, _ = run(capsys, "surface", "--family", "rpc-gaussian",
                       "--p-min", "0.001", "--p-max", "0.01", "--p-steps", "2",
                       "--c-min", "0.4", "--c-max", "1.2", "--c-steps", "2",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 4
    assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == out
    assert all(row["unit"] == "nats" for row in payload["rows"])


def test_restore_csv_schema(capsys):
    code, out, _ = run(capsys, "restore", "--a-min", "0.5", "--a-max", "1.0",
                       "--a-steps", "6")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "a,mse,kl_nats,error_rate"
    assert len(lines) == 7
    assert lines[1].startswith("0.5,")


def test_frontier_csv_schema(capsys):
    code, out, _ = run(capsys, "rpc-given-d", "--d", "0.5", "--rate", "0.4",
                       "--c-steps", "4")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "C_nats,min_P_nats,rate_nats,sigma_xh"
    assert len(lines) == 5


def test_frontier_default_distortion_triple(capsys, tmp_path):
    out_base = tmp_path / "front.csv"
    code, _, _ = run(capsys, "rpc-given-d", "--rate", "0.4", "--c-steps", "3",
                     "--out", str(out_base), "--emit-plot-script")
    assert code == 0
    emitted = sorted(p.name for p in tmp_path.iterdir())
    assert emitted == [
        "front.csv.plot.py", "front_d0.5.csv", "front_d0.6.csv",
        "front_d0.8.csv",
    ]
    script = (tmp_path / "front.csv.plot.py").read_text()
    compile(script, "front.csv.plot.py", "exec")
    assert "front_d0.8.csv" in script


def test_point_query_needs_single_distortion(capsys):
    code, out, _ = run(capsys, "rpc-given-d", "--d", "0.5", "--p", "1",
                       "--c", "0.9")
    assert code == 0
    assert json.loads(out)["inputs"]["d"] == 0.5


def test_plot_script_needs_out(capsys):
    code, _, err = run(capsys, "restore", "--a-steps", "3",
                       "--emit-plot-script")
    assert code == 1
    assert "--out" in err


def test_out_writes_file_and_nothing_to_stdout(capsys, tmp_path):
    target = tmp_path / "pt.json"
    code, out, _ = run(capsys, *RDC_EXAMPLE, "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["unit"] == "bits"


def test_config_supplies_defaults_flags_win(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"a": 0.3, "p1": 0.1, "d": 0.1}))
    code, out, _ = run(capsys, "rdc", "binary", "--config", str(cfg),
                       "--c", "0.85")
    assert code == 0
    assert json.loads(out)["rate"] == pytest.approx(0.342282530869852, abs=1e-12)

    code, out, _ = run(capsys, "rdc", "binary", "--config", str(cfg),
                       "--d", "0.3", "--c", "0.85")
    assert json.loads(out)["inputs"]["d"] == 0.3


def test_config_must_be_an_object(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    code, _, err = run(capsys, "rdc", "binary", "--config", str(cfg),
                       "--a", "0.3", "--p1", "0.1", "--d", "0.1", "--c", "0.9")
    assert code == 1
    assert "object" in err


def test_workers_env_default(capsys, monkeypatch):
    monkeypatch.setenv("RDPC_WORKERS", "2")
    code, out, _ = run(capsys, "oracle", "--family", "binary", "--a", "0.3",
                       "--p1", "0.1", "--c", "0.99", "--resolution", "0.01")
    assert code == 0
    monkeypatch.setenv("RDPC_WORKERS", "many")
    code, _, err = run(capsys, "oracle", "--family", "binary", "--a", "0.3",
                       "--p1", "0.1", "--c", "0.99", "--resolution", "0.01")
    assert code == 1
    assert "RDPC_WORKERS" in err


def test_oracle_exit_codes(capsys):
    code, out, _ = run(capsys, "oracle", "--family", "binary", "--a", "0.3",
                       "--p1", "0.1", "--c", "0.4", "--resolution", "0.01")
    assert code == 2
    assert json.loads(out)["rate"] is None


def test_verify_subcommand(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "entropy", "--seed", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert payload["seed"] == 0
    assert "tool_version" in payload


def test_repeated_runs_are_byte_identical(capsys):
    argv = ["surface", "--family", "rdc-gaussian", "--d-min", "0.1",
            "--d-max", "1.0", "--d-steps", "4", "--c-min", "0.4",
            "--c-max", "1.1", "--c-steps", "4"]
    _, first, _ = run(capsys, *argv)
    _, again, _ = run(capsys, *argv)
    assert first == again
