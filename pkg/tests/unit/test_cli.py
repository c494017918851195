"""Tests for config validation, run outputs and the command-line runner."""

import copy
import csv
import json
import math

import pytest

from src.semigroup.cli import (
    COMMANDS,
    CriterionResult,
    RunOutputs,
    load_config,
    main,
    run_command,
    validate_config,
)
from src.semigroup.cli import experiment_cli
from src.semigroup.cli.outputs import format_cell
from src.semigroup.errors import ConfigError, Flag
from src.semigroup.skew import IdentityCheck

pytestmark = pytest.mark.cli

VALID = {
    "name": "valid",
    "system": {"metric": "circle", "maps": [{"kind": "linear_mod1", "slope": 2}, {"kind": "linear_mod1", "slope": 3}]},
    "potential": {"kind": "zero"},
    "region": {"kind": "interval", "a": 0.0, "b": 1.0, "resolution": 0.001},
    "schedule": {"word_lengths": [2, 3, 4], "epsilons": [0.1], "seed": 4},
}


def _config(**changes):
    raw = copy.deepcopy(VALID)
    for path, value in changes.items():
        target = raw
        keys = path.split("__")
        for key in keys[:-1]:
            target = target[key]
        if value is None:
            del target[keys[-1]]
        else:
            target[keys[-1]] = value
    return raw


def _read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


class TestValidateConfig:
    def test_valid_document(self):
        experiment = validate_config(_config())

        assert experiment.name == "valid"
        assert experiment.system.m == 2
        assert experiment.schedule.word_lengths == (2, 3, 4)
        assert len(experiment.cloud()) == 1000

    @pytest.mark.parametrize(
        "changes, path",
        [
            ({"system__maps": None}, "config.system.maps"),
            ({"system__maps": []}, "config.system.maps"),
            ({"system__maps": [{"kind": "linear_mod1", "slope": 2}, {"kind": "linear_mod1", "slope": 2.5}]},
             "config.system.maps[1].slope"),
            ({"system__maps": [{"kind": "tent"}]}, "config.system.maps[0].kind"),
            ({"system__metric": "torus"}, "config.system.metric"),
            ({"potential": {"kind": "constant", "value": "high"}}, "config.potential.value"),
            ({"potential": [{"kind": "zero"}]}, "config.potential"),
            ({"region__resolution": None}, "config.region.resolution"),
            ({"region__kind": "disc"}, "config.region.kind"),
            ({"schedule__epsilons": [0.1, -0.2]}, "config.schedule.epsilons[1]"),
            ({"schedule__word_lengths": [2, 3.5, 4]}, "config.schedule.word_lengths[1]"),
            ({"schedule__seed": -1}, "config.schedule.seed"),
            ({"commands": {"plot": {}}}, "config.commands.plot"),
        ],
    )
    def test_violations_name_their_path(self, changes, path):
        with pytest.raises(ConfigError) as info:
            validate_config(_config(**changes))
        assert info.value.path == path

    def test_sampled_schedule_needs_a_seed(self):
        raw = _config(schedule={"word_lengths": [10, 12, 15], "epsilons": [0.1]})

        with pytest.raises(ConfigError) as info:
            validate_config(raw)
        assert info.value.path == "config.schedule.seed"
        assert validate_config(raw, seed_override=3).schedule.seed == 3

    def test_lebesgue_local_pressure_needs_a_seed(self):
        raw = _config(schedule__seed=None, commands={"local_pressure": {"points": [0.3]}})

        with pytest.raises(ConfigError) as info:
            validate_config(raw)
        assert info.value.path == "config.schedule.seed"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.json")

    def test_malformed_file(self, test_data_path):
        with pytest.raises(ConfigError):
            load_config(test_data_path / "malformed.json")

    def test_example_configs_validate(self, example_configs_path):
        paths = sorted(example_configs_path.glob("*.json"))

        assert paths
        for path in paths:
            experiment = validate_config(load_config(path))
            assert experiment.name == path.stem


class TestRunOutputs:
    def test_format_cell(self):
        assert format_cell(True) == "true"
        assert format_cell(math.nan) == "nan"
        assert format_cell(None) == ""
        assert format_cell(1 / 3) == "0.333333333333"
        assert format_cell(Flag.PROXY) == "PROXY"

    def test_manifest_lists_written_files(self, tmp_path):
        outputs = RunOutputs(tmp_path / "run")
        outputs.write_csv("b.csv", ("x",), [{"x": 1.0}])
        outputs.write_csv("a.csv", ("x",), [])
        manifest = json.loads(outputs.write_manifest("pressure", {"name": "n"}, 3, 2).read_text())

        assert manifest["files"] == ["a.csv", "b.csv"]
        assert manifest["seed"] == 3
        assert set(manifest["versions"]) == {"semigroup", "python", "numpy", "scipy", "sympy"}


class TestRunCommand:
    def test_unknown_command(self, tmp_path):
        with pytest.raises(ConfigError):
            run_command("plot", None, RunOutputs(tmp_path), 1)

    def test_commands_other_than_acceptance_need_a_config(self, tmp_path):
        with pytest.raises(ConfigError):
            run_command("entropy", None, RunOutputs(tmp_path), 1)

    def test_dimension_reports_proxy(self, tmp_path, test_data_path):
        experiment = validate_config(load_config(test_data_path / "doubling_small.json"))
        outputs = RunOutputs(tmp_path)
        flags = run_command("dimension", experiment, outputs, 1)
        rows = _read_csv(tmp_path / "dimension.csv")

        assert flags == {Flag.PROXY}
        assert rows[0]["method"] == "box_counting"
        assert float(rows[0]["value"]) == pytest.approx(1.0, abs=1e-9)

    def test_lyapunov_rows(self, tmp_path, test_data_path):
        experiment = validate_config(load_config(test_data_path / "doubling_small.json"))
        run_command("lyapunov", experiment, RunOutputs(tmp_path), 1)
        rows = _read_csv(tmp_path / "lyapunov.csv")

        assert len(rows) == 8
        assert all(float(row["min_lambda"]) == pytest.approx(math.log(2)) for row in rows)


class TestMain:
    def test_command_list(self):
        assert "bowen-root" in COMMANDS and "skew-check" in COMMANDS

    def test_entropy_run_writes_outputs(self, tmp_path, test_data_path):
        code = main(["entropy", "--config", str(test_data_path / "doubling_small.json"), "--out", str(tmp_path)])

        assert code == 0
        assert {p.name for p in tmp_path.iterdir()} == {
            "pressure.csv",
            "slopes.csv",
            "manifest.json",
            "summary.txt",
        }
        assert (tmp_path / "summary.txt").read_text().startswith("h = 0.693 ± 0.05")
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["exit_code"] == 0
        assert manifest["seed"] == 1
        assert manifest["command"] == "entropy"
        assert len(_read_csv(tmp_path / "pressure.csv")) == 3

    def test_reruns_are_byte_identical(self, tmp_path, test_data_path):
        config = str(test_data_path / "doubling_small.json")
        assert main(["entropy", "--config", config, "--out", str(tmp_path / "a")]) == 0
        assert main(["entropy", "--config", config, "--out", str(tmp_path / "b"), "--threads", "3"]) == 0

        for name in ("pressure.csv", "slopes.csv", "summary.txt"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_seed_override_lands_in_the_manifest(self, tmp_path, test_data_path):
        main(["entropy", "--config", str(test_data_path / "doubling_small.json"), "--out", str(tmp_path), "--seed", "9"])

        assert json.loads((tmp_path / "manifest.json").read_text())["seed"] == 9

    @pytest.mark.parametrize("name", ["malformed.json", "missing_maps.json", "absent.json"])
    def test_invalid_configs_exit_with_two(self, tmp_path, test_data_path, capsys, name):
        code = main(["pressure", "--config", str(test_data_path / name), "--out", str(tmp_path / "run")])

        assert code == 2
        assert "Error:" in capsys.readouterr().err
        assert not (tmp_path / "run").exists()

    def test_missing_config_flag(self, tmp_path):
        assert main(["pressure", "--out", str(tmp_path)]) == 2

    def test_threads_must_be_positive(self, tmp_path, test_data_path):
        config = str(test_data_path / "doubling_small.json")

        assert main(["entropy", "--config", config, "--out", str(tmp_path), "--threads", "0"]) == 2

    def test_unresolved_run_keeps_partial_output(self, tmp_path, test_data_path):
        code = main(["pressure", "--config", str(test_data_path / "unresolved.json"), "--out", str(tmp_path)])

        assert code == 3
        assert len(_read_csv(tmp_path / "pressure.csv")) == 3
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["flags"] == ["UNRESOLVED"]
        assert manifest["exit_code"] == 3
        assert "UNRESOLVED" in (tmp_path / "summary.txt").read_text()

    def test_cantor_entropy(self, tmp_path, example_configs_path):
        code = main(["entropy", "--config", str(example_configs_path / "cantor.json"), "--out", str(tmp_path)])
        first_line = (tmp_path / "summary.txt").read_text().splitlines()[0]

        assert code == 0
        assert float(first_line.split()[2]) == pytest.approx(math.log(2), abs=0.05)


class TestFailedChecks:
    @staticmethod
    def _criteria(*passed):
        return [
            CriterionResult(k + 1, f"criterion {k + 1}", ok, "1.0", "1.0" if ok else "0.5", 0.05)
            for k, ok in enumerate(passed)
        ]

    def test_failed_criterion_exits_with_three(self, tmp_path, monkeypatch):
        results = self._criteria(True, False)
        monkeypatch.setattr(experiment_cli, "run_acceptance", lambda criteria=None, threads=None: results)

        assert main(["acceptance", "--out", str(tmp_path)]) == 3
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["flags"] == ["CHECK_FAIL"]
        assert [row["passed"] for row in _read_csv(tmp_path / "acceptance.csv")] == ["true", "false"]
        assert "1/2 criteria passed" in (tmp_path / "summary.txt").read_text()

    def test_passing_criteria_exit_with_zero(self, tmp_path, monkeypatch):
        results = self._criteria(True, True)
        monkeypatch.setattr(experiment_cli, "run_acceptance", lambda criteria=None, threads=None: results)

        assert main(["acceptance", "--out", str(tmp_path)]) == 0
        assert json.loads((tmp_path / "manifest.json").read_text())["flags"] == []

    def test_failed_skew_identity_exits_with_three(self, tmp_path, test_data_path, monkeypatch):
        failed = IdentityCheck(
            left=1.2, right=0.7, fibre_pressure=0.7, log_m=0.0, c=0.0, tol=0.1, passed=False, bounds=()
        )
        monkeypatch.setattr(experiment_cli, "verify_pressure_identity", lambda *args, **kwargs: failed)
        config = str(test_data_path / "doubling_small.json")

        assert main(["skew-check", "--config", config, "--out", str(tmp_path)]) == 3
        assert json.loads((tmp_path / "manifest.json").read_text())["flags"] == ["CHECK_FAIL"]
        assert "fails" in (tmp_path / "summary.txt").read_text()
