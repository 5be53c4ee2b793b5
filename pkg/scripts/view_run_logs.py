#!/usr/bin/env python
"""Script to view recorded command-line runs."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

# Add the parent directory to the Python path if running directly
parent_dir = Path(__file__).parent.parent
if parent_dir not in sys.path:
    sys.path.insert(0, str(parent_dir))

from minkowski_bpv.database.database_manager import DatabaseManager


def setup_logging(verbose: bool = False) -> None:
    """Set up logging.

    Args:
        verbose (bool, optional): Whether to enable verbose logging. Defaults to False.
    """
    log_level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler()],
    )


def view_run_logs(
    command: Optional[str] = None,
    limit: int = 10,
    show_result: bool = False,
    db_path: Optional[str] = None,
) -> None:
    """Print the most recent runs.

    Args:
        command (Optional[str], optional): Only runs of this subcommand. Defaults to None.
        limit (int, optional): Maximum number of runs. Defaults to 10.
        show_result (bool, optional): Also print the stored result. Defaults to False.
        db_path (Optional[str], optional): SQLite file. Defaults to None.
    """
    db_manager = DatabaseManager(db_path)
    logs = db_manager.get_run_logs(limit=limit, command=command)
    if not logs:
        print("No runs found.")
        return

    for i, log in enumerate(logs, 1):
        print(f"\n{i}. {log.command} at {log.timestamp:%Y-%m-%d %H:%M:%S}")
        print(f"   Exit code: {log.exit_code}")
        print(f"   Duration: {log.duration_seconds:.2f}s")
        print(f"   Seed: {log.seed}")
        config = log.get_config() or {}
        if config.get("parameters"):
            print(f"   Parameters: {json.dumps(config['parameters'], sort_keys=True)}")
        if log.error_message:
            print(f"   Error: {log.error_message}")
        if show_result and log.result:
            print(json.dumps(log.get_result(), sort_keys=True, indent=2))


def main() -> None:
    """Run the script."""
    parser = argparse.ArgumentParser(description="View recorded command-line runs.")
    parser.add_argument("-c", "--command", type=str, help="Only runs of this subcommand")
    parser.add_argument("-l", "--limit", type=int, default=10, help="Maximum number of runs")
    parser.add_argument("-r", "--result", action="store_true", help="Print stored results")
    parser.add_argument("--db", type=str, help="SQLite file (configured one by default)")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose logging"
    )
    args = parser.parse_args()

    setup_logging(args.verbose)
    view_run_logs(args.command, args.limit, args.result, args.db)


if __name__ == "__main__":
    main()
