"""
Unit tests for config parsing, dispatch and exit codes of the lab CLI.
"""

import json

import pytest

from src.cli.config import DecayParams, IndicesParams, RunConfig, parse_config
from src.cli.main import main, parse_extras
from src.cli.runner import EXIT_ERROR, EXIT_FAILED_ESTIMATE, EXIT_OK, run
from src.common.config import settings
from src.common.errors import ConfigError
from src.common.types import Command, CriterionKind

ENDPOINT = ["indices", "--n", "3", "--alpha", "-2/3", "--s", "3", "--p", "3", "--ptilde", "inf", "--criterion", "global"]
SMALL_NORMS = ["norms", "--grid", "16", "--box", "4"]
SMALL_HEAT = ["heat-decay", "--grid", "32", "--box", "8", "--t_min", "0.1", "--t_max", "1.5", "--samples", "9"]


def artifact(directory, command, suffix):
    [path] = sorted(directory.glob(f"{command}-*{suffix}"))
    return path


class TestParseConfig:
    """Strict config validation"""

    def test_minimal_indices_config(self):
        """✅ PASS: defaults filled, seed 0"""
        cfg = parse_config({"command": "indices", "params": {"alpha": "-2/3", "p": "3", "ptilde": "inf"}})
        assert cfg.command is Command.INDICES
        assert cfg.seed == 0
        assert cfg.jobs == 1
        params = cfg.command_params()
        assert isinstance(params, IndicesParams)
        assert params.n == 3
        assert params.s == "inf"
        assert params.criterion is CriterionKind.GLOBAL

    def test_inf_exponent(self):
        """✅ PASS: ptilde = "inf" parses to INF"""
        cfg = parse_config({"command": "indices", "params": {"alpha": 0, "p": 2, "ptilde": "inf"}})
        t = cfg.command_params().index_tuple()
        assert t.ptilde.is_inf
        assert not t.p.is_inf

    def test_config_file(self, tmp_path):
        """✅ PASS: JSON file with grid and tolerances"""
        path = tmp_path / "run.json"
        path.write_text(
            json.dumps(
                {
                    "command": "heat-decay",
                    "grid": {"n": 3, "points": 32, "half_width": 8.0},
                    "params": {"q": "6", "qtilde": 6, "alpha": "-1/2", "ptilde": 4},
                    "tolerances": {"slope_tolerance": 0.1},
                }
            )
        )
        cfg = parse_config(path)
        assert cfg.grid.points == 32
        assert cfg.tolerances == {"slope_tolerance": 0.1}
        params = cfg.command_params()
        assert isinstance(params, DecayParams)
        assert params.indices(3).alpha == -0.5

    def test_unknown_param_key(self):
        """❌ FAIL: typo 'pttilde' is named in the error"""
        with pytest.raises(ConfigError, match="pttilde"):
            parse_config({"command": "indices", "params": {"alpha": 0, "p": 2, "pttilde": 2}})

    def test_unknown_top_level_key(self):
        """❌ FAIL: unknown run option"""
        with pytest.raises(ConfigError, match="outdir"):
            parse_config({"command": "indices", "outdir": "runs", "params": {"alpha": 0, "p": 2, "ptilde": 2}})

    def test_missing_required_key(self):
        """❌ FAIL: indices need alpha"""
        with pytest.raises(ConfigError, match="missing required key 'params.alpha'"):
            parse_config({"command": "indices", "params": {"p": 2, "ptilde": 2}})

    def test_malformed_rational(self):
        """❌ FAIL: alpha must be a rational"""
        with pytest.raises(ConfigError, match="alpha"):
            parse_config({"command": "indices", "params": {"alpha": "one half", "p": 2, "ptilde": 2}})

    def test_unknown_tolerance(self):
        """❌ FAIL: tolerance overrides must name a setting"""
        with pytest.raises(ConfigError, match="slope_tol"):
            parse_config({"command": "heat-decay", "tolerances": {"slope_tol": 0.1}})

    def test_grid_power_of_two(self):
        """❌ FAIL: N = 48"""
        with pytest.raises(ConfigError, match="power of two"):
            parse_config({"command": "norms", "grid": {"points": 48}})

    def test_missing_file(self, tmp_path):
        """❌ FAIL: config path does not exist"""
        with pytest.raises(ConfigError, match="not found"):
            parse_config(tmp_path / "absent.json")


class TestParseExtras:
    """Per-field flags"""

    def test_negative_rational_value(self):
        """✅ PASS: a value may start with a single dash"""
        assert parse_extras(["--alpha", "-2/3", "--p", "3"]) == {"alpha": "-2/3", "p": "3"}

    def test_equals_and_switch(self):
        """✅ PASS: --key=value and bare switches"""
        assert parse_extras(["--beta=-1/2", "--diagonal", "--local-only"]) == {
            "beta": "-1/2",
            "diagonal": "true",
            "local_only": "true",
        }

    def test_stray_value(self):
        """❌ FAIL: a value without a key"""
        with pytest.raises(ConfigError):
            parse_extras(["3"])


class TestMain:
    """End-to-end invocations"""

    def test_endpoint_tuple_admissible(self, tmp_path, capsys):
        """✅ PASS: (3, -2/3, 3, 3, inf) is globally admissible"""
        assert main(ENDPOINT + ["--out", str(tmp_path)]) == EXIT_OK
        summary = json.loads(artifact(tmp_path, "indices", ".json").read_text())
        assert summary["admissible"] is True
        assert summary["tuple"]["ptilde"] == "inf"
        assert json.loads(capsys.readouterr().out)["admissible"] is True

    def test_finite_ptilde_inadmissible_still_completes(self, tmp_path):
        """✅ PASS: an inadmissible tuple is a result, not an error"""
        argv = ENDPOINT[:-4] + ["--ptilde", "6", "--criterion", "global", "--out", str(tmp_path)]
        assert main(argv) == EXIT_OK
        summary = json.loads(artifact(tmp_path, "indices", ".json").read_text())
        assert summary["admissible"] is False

    def test_initial_data_block(self, tmp_path):
        """✅ PASS: initial-data verdict attached to the JSON"""
        argv = ENDPOINT + ["--initial_data", "GLOBAL", "--alpha0", "0", "--p0", "3", "--ptilde0", "3", "--out", str(tmp_path)]
        assert main(argv) == EXIT_OK
        summary = json.loads(artifact(tmp_path, "indices", ".json").read_text())
        assert summary["initial_data"]["derived"]["variant"] == "GLOBAL"

    def test_non_integrable_weight(self, tmp_path, capsys):
        """❌ FAIL: alpha p + n = 0 exits 1"""
        argv = SMALL_NORMS + ["--alpha", "-3", "--p", "1", "--out", str(tmp_path)]
        assert main(argv) == EXIT_ERROR
        assert "non-integrable weight" in capsys.readouterr().err

    def test_unknown_flag(self, tmp_path, capsys):
        """❌ FAIL: unknown per-field flag exits 1 naming it"""
        assert main(["indices", "--alpha", "0", "--p", "2", "--pttilde", "2", "--out", str(tmp_path)]) == EXIT_ERROR
        assert "pttilde" in capsys.readouterr().err

    def test_config_command_mismatch(self, tmp_path, capsys):
        """❌ FAIL: positional command disagrees with the file"""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"command": "norms"}))
        assert main(["indices", "--config", str(path)]) == EXIT_ERROR
        assert "does not match" in capsys.readouterr().err

    def test_norm_table(self, tmp_path):
        """✅ PASS: one CSV row per ptilde"""
        assert main(SMALL_NORMS + ["--ptilde", "2,inf", "--out", str(tmp_path)]) == EXIT_OK
        lines = artifact(tmp_path, "norms", ".csv").read_text().splitlines()
        assert lines[0] == "t,alpha,s,p,ptilde,value,err"
        assert [line.split(",")[4] for line in lines[1:]] == ["2", "inf"]

    def test_deterministic_artifacts(self, tmp_path):
        """✅ PASS: same config, byte-identical artifacts in two directories"""
        first, second = tmp_path / "a", tmp_path / "b"
        for out in (first, second):
            assert main(SMALL_NORMS + ["--out", str(out)]) == EXIT_OK
            assert main(ENDPOINT + ["--out", str(out)]) == EXIT_OK
        names = sorted(p.name for p in first.iterdir())
        assert names == sorted(p.name for p in second.iterdir())
        assert len(names) == 3
        for name in names:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_seed_changes_hash(self, tmp_path):
        """✅ PASS: the seed is part of the artifact name"""
        assert main(ENDPOINT + ["--out", str(tmp_path)]) == EXIT_OK
        assert main(ENDPOINT + ["--seed", "7", "--out", str(tmp_path)]) == EXIT_OK
        assert len(list(tmp_path.glob("indices-*.json"))) == 2

    def test_heat_decay_passes(self, tmp_path):
        """✅ PASS: Gaussian L^2 -> L^6 decay, CSV + PASS, exit 0"""
        assert main(SMALL_HEAT + ["--out", str(tmp_path)]) == EXIT_OK
        summary = json.loads(artifact(tmp_path, "heat-decay", ".json").read_text())
        assert summary["verdict"] == "PASS"
        assert len(artifact(tmp_path, "heat-decay", ".csv").read_text().splitlines()) == 10

    def test_failed_estimate_exit_code(self, tmp_path):
        """❌ FAIL: an impossible slope tolerance turns the verdict into exit 2"""
        assert main(SMALL_HEAT + ["--slope_tolerance", "-1", "--out", str(tmp_path)]) == EXIT_FAILED_ESTIMATE
        summary = json.loads(artifact(tmp_path, "heat-decay", ".json").read_text())
        assert summary["verdict"] == "FAIL"

    def test_settings_restored(self, tmp_path):
        """✅ PASS: tolerance overrides do not leak past the run"""
        before = settings.slope_tolerance
        cfg = RunConfig(
            command=Command.INDICES,
            params={"alpha": 0, "p": 2, "ptilde": 2},
            output_dir=str(tmp_path),
            tolerances={"slope_tolerance": 0.5},
        )
        outcome = run(cfg)
        assert outcome.exit_code == EXIT_OK
        assert outcome.metrics is not None and outcome.metrics.execution_time >= 0
        assert settings.slope_tolerance == before


class TestSimulateCommand:
    """Picard run through the CLI"""

    def test_simulate_writes_trajectory(self, tmp_path):
        """✅ PASS: trajectory directory, energy CSV and criterion summary"""
        argv = [
            "simulate", "--grid", "32", "--box", "8", "--horizon", "0.5", "--steps", "8",
            "--monitor", "0,8,4,4", "--out", str(tmp_path),
        ]  # fmt: skip
        assert main(argv) == EXIT_OK
        summary = json.loads(artifact(tmp_path, "simulate", ".json").read_text())
        assert summary["trajectory"]["status"] == "CONVERGED"
        assert len(summary["trajectory"]["times"]) == 9
        assert summary["criterion"]["norm"]["value"] > 0
        assert summary["criterion"]["admissibility"]["derived"]["local_admissible"] is True
        assert summary["energy_defect"] < 1e-2
        manifests = list(tmp_path.glob("simulate-*/manifest.json"))
        assert len(manifests) == 1
        assert len(list(manifests[0].parent.glob("snapshot-*.nsra1"))) == 9

    @pytest.mark.slow
    def test_duhamel_from_trajectory_dir(self, tmp_path):
        """✅ PASS: simulate, then measure the diagonal Duhamel constant from its directory"""
        argv = ["simulate", "--grid", "16", "--box", "8", "--horizon", "0.5", "--steps", "32", "--out", str(tmp_path)]
        assert main(argv) == EXIT_OK
        [manifest] = tmp_path.glob("simulate-*/manifest.json")
        argv = [
            "duhamel", "--grid", "16", "--box", "8", "--source", "dir", "--trajectory_dir", str(manifest.parent),
            "--diagonal", "--out", str(tmp_path / "duhamel"),
        ]  # fmt: skip
        assert main(argv) in (EXIT_OK, EXIT_FAILED_ESTIMATE)
        summary = json.loads(artifact(tmp_path / "duhamel", "duhamel", ".json").read_text())
        assert summary["kind"] == "DUHAMEL_DIAGONAL"
        assert summary["admissibility"]["admissible"] is True
