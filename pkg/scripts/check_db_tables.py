#!/usr/bin/env python
"""Script to check the run-log table against the RunLog model."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, Tuple

from sqlalchemy import func, inspect, select

# Add the parent directory to the Python path if running directly
parent_dir = Path(__file__).parent.parent
if parent_dir not in sys.path:
    sys.path.insert(0, str(parent_dir))

from minkowski_bpv.database.database_manager import DatabaseManager
from minkowski_bpv.database.run_log import RunLog


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


def check_schema(db_manager: DatabaseManager) -> bool:
    """Compare the columns of ``run_logs`` with the model.

    Args:
        db_manager (DatabaseManager): Manager of the database to inspect.

    Returns:
        bool: True when no model column is missing.
    """
    inspector = inspect(db_manager.engine)
    table = RunLog.__tablename__
    if table not in inspector.get_table_names():
        logging.error(f"Table '{table}' not found in {db_manager.db_path}")
        return False

    stored = {column["name"]: column for column in inspector.get_columns(table)}
    expected = {column.name for column in RunLog.__table__.columns}
    missing = sorted(expected - stored.keys())
    extra = sorted(stored.keys() - expected)
    for name in missing:
        logging.error(f"Column '{name}' is missing from '{table}'")
    for name in extra:
        logging.warning(f"Column '{name}' is not part of the RunLog model")
    for name in sorted(expected & stored.keys()):
        logging.debug(f"  {name} ({stored[name]['type']})")
    return not missing


def count_runs(db_manager: DatabaseManager) -> Dict[Tuple[str, int], int]:
    """Count recorded runs per command and exit code.

    Args:
        db_manager (DatabaseManager): Manager of the database to inspect.

    Returns:
        Dict[Tuple[str, int], int]: Run counts keyed by (command, exit code).
    """
    query = (
        select(RunLog.command, RunLog.exit_code, func.count(RunLog.id))
        .group_by(RunLog.command, RunLog.exit_code)
        .order_by(RunLog.command, RunLog.exit_code)
    )
    with db_manager.get_session() as session:
        return {(command, code): count for command, code, count in session.execute(query)}


def main() -> None:
    """Run the script."""
    parser = argparse.ArgumentParser(description="Check the run-log table and its contents.")
    parser.add_argument("--db", type=str, help="SQLite file (configured one by default)")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose logging"
    )
    args = parser.parse_args()

    setup_logging(args.verbose)
    db_manager = DatabaseManager(args.db)
    if not check_schema(db_manager):
        sys.exit(1)

    counts = count_runs(db_manager)
    logging.info(f"{sum(counts.values())} runs recorded in {db_manager.db_path}")
    for (command, code), count in counts.items():
        logging.info(f"  {command:<16} exit {code}: {count}")


if __name__ == "__main__":
    main()
