"""Base model for the Minkowski BPV run database."""

from sqlalchemy.orm import declarative_base

Base = declarative_base()
