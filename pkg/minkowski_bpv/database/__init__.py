"""Database module for Minkowski BPV."""

from minkowski_bpv.database.base import Base
from minkowski_bpv.database.run_log import RunLog

__all__ = ["Base", "RunLog"]
