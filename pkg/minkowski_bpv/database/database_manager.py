"""Database manager for Minkowski BPV."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from sqlalchemy import create_engine, select
from sqlalchemy.orm import Session, sessionmaker

from minkowski_bpv.config.config_loader import ConfigLoader
from minkowski_bpv.database.base import Base
from minkowski_bpv.database.run_log import RunLog

logger = logging.getLogger(__name__)


class DatabaseManager:
    """Database manager for Minkowski BPV."""

    def __init__(self, db_path: Optional[str] = None) -> None:
        """Initialize the database manager.

        Args:
            db_path (Optional[str], optional): SQLite file to use instead of
                the configured one. Defaults to None.
        """
        self.config_loader = ConfigLoader()
        self.db_path = db_path or self.config_loader.get_database_path()

        # Create database directory if it doesn't exist
        db_dir = Path(self.db_path).parent
        db_dir.mkdir(exist_ok=True, parents=True)

        self.engine = create_engine(f"sqlite:///{self.db_path}")
        self.SessionLocal = sessionmaker(
            autoflush=False, expire_on_commit=False, bind=self.engine
        )

        Base.metadata.create_all(self.engine)

        logger.debug(f"Database initialized at {self.db_path}")

    def get_session(self) -> Session:
        """Get a database session.

        Returns:
            Session: A database session.
        """
        return self.SessionLocal()

    def log_run(
        self,
        command: str,
        duration_seconds: float,
        exit_code: int,
        config: Optional[Dict[str, Any]] = None,
        result: Optional[Any] = None,
        seed: Optional[int] = None,
        error_message: Optional[str] = None,
    ) -> RunLog:
        """Log one command-line run.

        Args:
            command (str): The subcommand name.
            duration_seconds (float): Wall time of the run.
            exit_code (int): Process exit code.
            config (Optional[Dict[str, Any]], optional): Run parameters. Defaults to None.
            result (Optional[Any], optional): JSON result. Defaults to None.
            seed (Optional[int], optional): Random seed. Defaults to None.
            error_message (Optional[str], optional): Error message. Defaults to None.

        Returns:
            RunLog: The created run log.
        """
        with self.get_session() as session:
            run_log = RunLog(
                command=command,
                duration_seconds=duration_seconds,
                exit_code=exit_code,
                seed=seed,
                error_message=error_message,
            )
            if config is not None:
                run_log.set_config(config)
            if result is not None:
                run_log.set_result(result)
            session.add(run_log)
            session.commit()
            session.refresh(run_log)

            logger.debug(f"Logged run: {command} -> {exit_code} in {duration_seconds:.2f}s")
            return run_log

    def get_run_logs(self, limit: int = 10, command: Optional[str] = None) -> List[RunLog]:
        """Get the most recent run logs.

        Args:
            limit (int, optional): The maximum number of logs to retrieve. Defaults to 10.
            command (Optional[str], optional): Only logs of this subcommand. Defaults to None.

        Returns:
            List[RunLog]: Run logs, newest first.
        """
        with self.get_session() as session:
            query = select(RunLog)
            if command is not None:
                query = query.where(RunLog.command == command)
            query = query.order_by(RunLog.timestamp.desc(), RunLog.id.desc()).limit(limit)
            return list(session.execute(query).scalars().all())

    def get_most_recent_run_log(self, command: Optional[str] = None) -> Optional[RunLog]:
        """Get the most recent run log.

        Args:
            command (Optional[str], optional): Only logs of this subcommand. Defaults to None.

        Returns:
            Optional[RunLog]: The most recent run log, or None if no logs exist.
        """
        logs = self.get_run_logs(limit=1, command=command)
        return logs[0] if logs else None
