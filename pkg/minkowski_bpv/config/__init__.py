"""Configuration module for Minkowski BPV."""

from minkowski_bpv.config.config_loader import ConfigLoader

__all__ = ["ConfigLoader"]
