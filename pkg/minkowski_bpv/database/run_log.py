"""Run log model for Minkowski BPV."""

import json
from datetime import datetime
from typing import Any, Dict, Optional

from sqlalchemy import Column, DateTime, Float, Integer, String, Text

from minkowski_bpv.database.base import Base


class RunLog(Base):
    """One command-line run: its configuration, result and outcome."""

    __tablename__ = "run_logs"

    id = Column(Integer, primary_key=True)
    timestamp = Column(DateTime, default=datetime.utcnow, nullable=False)
    command = Column(String(64), nullable=False)
    duration_seconds = Column(Float, nullable=False)
    exit_code = Column(Integer, nullable=False)
    seed = Column(Integer, nullable=True)

    # JSON documents
    config = Column(Text, nullable=True)
    result = Column(Text, nullable=True)

    error_message = Column(Text, nullable=True)

    def __repr__(self) -> str:
        """Return a string representation of the run log.

        Returns:
            str: A string representation of the run log.
        """
        return (
            f"<RunLog(timestamp='{self.timestamp}', command='{self.command}', "
            f"exit_code={self.exit_code})>"
        )

    def set_config(self, config: Dict[str, Any]) -> None:
        """Store the run configuration as a JSON string.

        Args:
            config: Dictionary of run parameters.
        """
        self.config = json.dumps(config, sort_keys=True, default=str)

    def get_config(self) -> Optional[Dict[str, Any]]:
        """Get the run configuration as a dictionary.

        Returns:
            Dictionary of run parameters or None if not set.
        """
        if not self.config:
            return None
        return json.loads(self.config)

    def set_result(self, result: Any) -> None:
        """Store the run result as a JSON string.

        Args:
            result: JSON-serializable result.
        """
        self.result = json.dumps(result, sort_keys=True, default=str)

    def get_result(self) -> Optional[Any]:
        """Get the run result.

        Returns:
            The decoded result or None if not set.
        """
        if not self.result:
            return None
        return json.loads(self.result)
