"""Configuration loader for Minkowski BPV."""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

import dotenv


class ConfigLoader:
    """Configuration loader for Minkowski BPV."""

    def __init__(self) -> None:
        """Initialize the configuration loader."""
        # Load environment variables from .env file
        dotenv.load_dotenv()

        config_path = Path(__file__).parent / "config.json"
        with open(config_path, "r") as f:
            self.config = json.load(f)

    def get_config(self) -> Dict[str, Any]:
        """Get the configuration dictionary.

        Returns:
            Dict[str, Any]: The configuration dictionary.
        """
        return self.config

    def get_database_path(self) -> str:
        """Get the database path.

        The ``BPV_DATABASE_PATH`` environment variable takes precedence over
        the configured relative path.

        Returns:
            str: The database path.
        """
        override = os.environ.get("BPV_DATABASE_PATH")
        if override:
            return override
        db_path = self.config["database"]["path"]
        return str(Path(self.get_project_root()) / db_path)

    def get_seed(self, cli_seed: Optional[int] = None) -> int:
        """Resolve the random seed.

        Args:
            cli_seed (Optional[int], optional): Seed given on the command line.
                Defaults to None.

        Returns:
            int: ``BPV_SEED`` if set, else the command-line seed, else the
                configured default.
        """
        env_seed = os.environ.get("BPV_SEED")
        if env_seed is not None and env_seed.strip():
            return int(env_seed)
        if cli_seed is not None:
            return cli_seed
        return int(self.config["run"]["seed"])

    def get_slack_constant(self) -> float:
        """Get the constant C of the discretization slack C*h.

        Returns:
            float: The slack constant.
        """
        return float(self.config["tolerances"]["slack_constant"])

    def get_zero_residual(self) -> float:
        """Get the largest accepted |J_alpha| at a tabulated zero.

        Returns:
            float: The zero residual tolerance.
        """
        return float(self.config["tolerances"]["zero_residual"])

    def get_verdict_factor(self) -> float:
        """Get the relative tolerance factor of the rigidity verdict.

        Returns:
            float: The verdict tolerance factor.
        """
        return float(self.config["tolerances"]["verdict_factor"])

    def get_pde_residual_factor(self) -> float:
        """Get the relative residual tolerance for PDE solutions.

        Returns:
            float: The residual factor.
        """
        return float(self.config["tolerances"]["pde_residual_factor"])

    def get_mesh_size(self) -> int:
        """Get the default radial mesh size.

        Returns:
            int: The number of mesh nodes.
        """
        return int(self.config["mesh"]["size"])

    def get_mesh_grading(self) -> float:
        """Get the default grading exponent of the radial mesh.

        Returns:
            float: The grading exponent.
        """
        return float(self.config["mesh"]["grading"])

    def get_pde_settings(self) -> Dict[str, float]:
        """Get the PDE solver defaults.

        Returns:
            Dict[str, float]: Mesh size, mesh grading and number of multistart attempts.
        """
        return dict(self.config["pde"])

    def get_uniformity_budget(self) -> int:
        """Get the default sample budget of the uniformity constant estimate.

        Returns:
            int: The sample budget.
        """
        return int(self.config["norm"]["uniformity_budget"])

    def get_selftest_settings(self) -> Dict[str, int]:
        """Get the problem sizes used by the self test.

        Returns:
            Dict[str, int]: The self test settings.
        """
        return dict(self.config["selftest"])

    @staticmethod
    def get_project_root() -> Path:
        """Get the project root directory.

        Returns:
            Path: The project root directory.
        """
        # This assumes the package is installed in development mode
        # or that the current working directory is the project root
        return Path.cwd()
