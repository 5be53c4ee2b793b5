"""Tests for the configuration loader and the run-log database."""

from pathlib import Path

from minkowski_bpv.config.config_loader import ConfigLoader
from minkowski_bpv.database.database_manager import DatabaseManager


def test_configured_defaults():
    loader = ConfigLoader()
    assert loader.get_slack_constant() == 10.0
    assert loader.get_verdict_factor() == 1e-6
    assert loader.get_pde_residual_factor() == 1e-5
    assert loader.get_mesh_size() == 2000
    assert loader.get_mesh_grading() == 2.0
    assert loader.get_pde_settings() == {"mesh": 3000, "grading": 1.0, "attempts": 4}
    assert loader.get_uniformity_budget() >= 1000
    assert set(loader.get_selftest_settings()) == {"eigen_mesh", "grid_size", "random_cases"}
    assert loader.get_zero_residual() == 1e-11


def test_database_path_override(isolated_environment):
    assert ConfigLoader().get_database_path() == str(isolated_environment / "runs.db")


def test_default_database_path(monkeypatch):
    monkeypatch.delenv("BPV_DATABASE_PATH")
    path = Path(ConfigLoader().get_database_path())
    assert path.parts[-2:] == ("data", "runs.db")


def test_seed_resolution(monkeypatch):
    loader = ConfigLoader()
    assert loader.get_seed() == 0
    assert loader.get_seed(42) == 42
    monkeypatch.setenv("BPV_SEED", "7")
    assert loader.get_seed(42) == 7


def test_log_and_read_runs(tmp_path):
    manager = DatabaseManager(str(tmp_path / "nested" / "logs.db"))
    assert manager.get_most_recent_run_log() is None

    manager.log_run("zeros", 0.25, 0, config={"seed": 1}, result={"zeros": [2.4]}, seed=1)
    manager.log_run("pde", 1.5, 1, error_message="no attempt converged")
    manager.log_run("zeros", 0.5, 2, error_message="bad order")

    logs = manager.get_run_logs()
    assert [log.command for log in logs] == ["zeros", "pde", "zeros"]
    assert [log.exit_code for log in logs] == [2, 1, 0]

    first = logs[-1]
    assert first.get_config() == {"seed": 1}
    assert first.get_result() == {"zeros": [2.4]}
    assert first.seed == 1
    assert logs[0].get_config() is None

    assert manager.get_run_logs(limit=1)[0].error_message == "bad order"
    assert manager.get_most_recent_run_log(command="pde").duration_seconds == 1.5
    assert len(manager.get_run_logs(command="zeros")) == 2
    assert "zeros" in repr(first)
