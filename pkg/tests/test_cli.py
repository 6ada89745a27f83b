"""Command-line behavior: artifacts, config precedence, exit codes."""

import json
import subprocess
import sys

import numpy as np
import pytest

from varq.cli import main

TRAIN_ARGS = ["train", "--task", "setosa-vs-versicolor", "--epochs", "3"]


def run_train(tmp_path, extra=(), epochs=3, task="setosa-vs-versicolor"):
    args = [
        "train",
        "--task",
        task,
        "--epochs",
        str(epochs),
        "--out-metrics",
        str(tmp_path / "metrics.jsonl"),
        "--out-summary",
        str(tmp_path / "summary.json"),
        "--out-params",
        str(tmp_path / "params.json"),
        *extra,
    ]
    return main(args)


def read_metrics(tmp_path):
    lines = (tmp_path / "metrics.jsonl").read_text().splitlines()
    return [json.loads(line) for line in lines]


class TestTrainCommand:
    def test_writes_all_three_artifacts(self, tmp_path, capsys):
        assert run_train(tmp_path) == 0
        rows = read_metrics(tmp_path)
        assert [row["epoch"] for row in rows] == [1, 2, 3]
        for row in rows:
            assert set(row) == {"epoch", "loss", "train_acc", "test_acc"}
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["task"] == "setosa-vs-versicolor"
        assert summary["epochs_run"] == 3
        assert summary["final_loss"] == rows[-1]["loss"]
        params = json.loads((tmp_path / "params.json").read_text())
        assert len(params) == 8
        out = capsys.readouterr().out
        assert "setosa" in out and "versicolor" in out

    def test_single_epoch_emits_single_row(self, tmp_path):
        assert run_train(tmp_path, epochs=1) == 0
        assert len(read_metrics(tmp_path)) == 1

    def test_summary_echo_reproduces_the_run(self, tmp_path):
        assert run_train(tmp_path) == 0
        echo = json.loads((tmp_path / "summary.json").read_text())["config"]
        rerun = tmp_path / "rerun"
        rerun.mkdir()
        args = [
            "train",
            "--task", echo["task"],
            "--data", echo["data"],
            "--n", str(echo["n"]),
            "--layers", str(echo["layers"]),
            "--epochs", str(echo["epochs"]),
            "--lr", str(echo["lr"]),
            "--fd-eps", str(echo["fd_eps"]),
            "--cadence", echo["cadence"],
            "--seed-split", str(echo["seed_split"]),
            "--seed-init", str(echo["seed_init"]),
            "--seed-batch", str(echo["seed_batch"]),
            "--out-metrics", str(rerun / "metrics.jsonl"),
            "--out-summary", str(rerun / "summary.json"),
            "--out-params", str(rerun / "params.json"),
        ]
        assert main(args) == 0
        assert (rerun / "metrics.jsonl").read_bytes() == (
            tmp_path / "metrics.jsonl"
        ).read_bytes()
        assert (rerun / "params.json").read_bytes() == (
            tmp_path / "params.json"
        ).read_bytes()

    def test_identical_runs_write_identical_metrics(self, tmp_path):
        first = tmp_path / "a"
        second = tmp_path / "b"
        first.mkdir()
        second.mkdir()
        assert run_train(first) == 0
        assert run_train(second) == 0
        assert (first / "metrics.jsonl").read_bytes() == (
            second / "metrics.jsonl"
        ).read_bytes()

    def test_missing_dataset_exits_2(self, tmp_path, capsys):
        code = run_train(tmp_path, extra=["--data", str(tmp_path / "absent.csv")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_unknown_species_exits_2(self, tmp_path):
        assert run_train(tmp_path, task="setosa-vs-slugs") == 2

    def test_malformed_task_exits_2(self, tmp_path):
        assert run_train(tmp_path, task="setosa") == 2

    def test_infinite_learning_rate_exits_3(self, tmp_path, capsys):
        code = run_train(tmp_path, extra=["--lr", "inf"], epochs=1)
        assert code == 3
        assert "optimization" in capsys.readouterr().err

    def test_shots_mode_completes(self, tmp_path):
        code = run_train(tmp_path, extra=["--shots", "64", "--seed-shots", "11"], epochs=1)
        assert code == 0
        assert len(read_metrics(tmp_path)) == 1

    def test_invalid_cadence_is_an_argparse_error(self, tmp_path):
        with pytest.raises(SystemExit):
            run_train(tmp_path, extra=["--cadence", "sometimes"])


class TestConfigFile:
    def test_values_are_read_from_config(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"task": "setosa-vs-versicolor", "epochs": 1}))
        args = [
            "train",
            "--config", str(config),
            "--out-metrics", str(tmp_path / "m.jsonl"),
            "--out-summary", str(tmp_path / "s.json"),
            "--out-params", str(tmp_path / "p.json"),
        ]
        assert main(args) == 0
        assert len((tmp_path / "m.jsonl").read_text().splitlines()) == 1

    def test_flags_override_config_values(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"task": "setosa-vs-versicolor", "epochs": 50}))
        args = [
            "train",
            "--config", str(config),
            "--epochs", "2",
            "--out-metrics", str(tmp_path / "m.jsonl"),
            "--out-summary", str(tmp_path / "s.json"),
            "--out-params", str(tmp_path / "p.json"),
        ]
        assert main(args) == 0
        summary = json.loads((tmp_path / "s.json").read_text())
        assert summary["epochs_run"] == 2
        assert summary["config"]["epochs"] == 2

    def test_unknown_config_key_exits_2(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"task": "setosa-vs-versicolor", "lerning_rate": 1}))
        assert main(["train", "--config", str(config)]) == 2
        assert "lerning_rate" in capsys.readouterr().err

    def test_invalid_json_exits_2(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text("{not json")
        assert main(["train", "--config", str(config)]) == 2

    def test_missing_config_file_exits_2(self, tmp_path):
        assert main(["train", "--config", str(tmp_path / "absent.json")]) == 2


class TestEvalCommand:
    def test_matches_the_producing_run_exactly(self, tmp_path, capsys):
        assert run_train(tmp_path) == 0
        summary = json.loads((tmp_path / "summary.json").read_text())
        capsys.readouterr()
        code = main(
            [
                "eval",
                "--task", "setosa-vs-versicolor",
                "--params", str(tmp_path / "params.json"),
            ]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["train_acc"] == summary["final_train_acc"]
        assert report["test_acc"] == summary["final_test_acc"]

    def test_zero_parameters_still_evaluate(self, tmp_path, capsys):
        params = tmp_path / "zeros.json"
        params.write_text(json.dumps([0.0] * 8))
        code = main(
            ["eval", "--task", "setosa-vs-versicolor", "--params", str(params)]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert 0.0 <= report["train_acc"] <= 1.0
        assert 0.0 <= report["test_acc"] <= 1.0

    def test_wrong_parameter_count_exits_2(self, tmp_path):
        params = tmp_path / "short.json"
        params.write_text(json.dumps([0.0, 0.0]))
        code = main(
            ["eval", "--task", "setosa-vs-versicolor", "--params", str(params)]
        )
        assert code == 2

    def test_missing_parameter_file_exits_2(self, tmp_path):
        code = main(
            [
                "eval",
                "--task", "setosa-vs-versicolor",
                "--params", str(tmp_path / "absent.json"),
            ]
        )
        assert code == 2


class TestCostCommand:
    def parse_rows(self, out):
        lines = [line for line in out.strip().splitlines() if line.strip()]
        header = lines[0].split()
        return [dict(zip(header, map(int, line.split()))) for line in lines[1:]]

    def test_total_increment_is_constant(self, capsys):
        assert main(["cost", "--n-min", "2", "--n-max", "4"]) == 0
        rows = self.parse_rows(capsys.readouterr().out)
        totals = [row["total"] for row in rows]
        assert totals[1] - totals[0] == totals[2] - totals[1]

    def test_swap_test_gates_at_two_controls(self, capsys):
        assert main(["cost", "--n-min", "2", "--n-max", "2"]) == 0
        rows = self.parse_rows(capsys.readouterr().out)
        assert rows[0]["swap_test_gates"] == 5

    def test_baseline_ratio_1024_vs_4(self, capsys):
        assert main(["cost", "--n-min", "2", "--n-max", "10"]) == 0
        rows = self.parse_rows(capsys.readouterr().out)
        by_n = {row["N"]: row["sequential_baseline"] for row in rows}
        assert by_n[1024] / by_n[4] == 256

    def test_default_range_is_1_to_12(self, capsys):
        assert main(["cost"]) == 0
        rows = self.parse_rows(capsys.readouterr().out)
        assert [row["N"] for row in rows] == [1 << n for n in range(1, 13)]

    def test_invalid_range_exits_2(self):
        assert main(["cost", "--n-min", "5", "--n-max", "3"]) == 2
        assert main(["cost", "--n-min", "0", "--n-max", "3"]) == 2
        assert main(["cost", "--n-min", "1", "--n-max", "30"]) == 2


class TestEntryPoints:
    def test_module_invocation_smoke(self):
        proc = subprocess.run(
            [sys.executable, "-m", "varq", "cost", "--n-min", "1", "--n-max", "2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "sequential_baseline" in proc.stdout

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "varq" in capsys.readouterr().out
