"""Invariant suite behind the selftest command."""

from minkowski_bpv.selftest.suite import CheckResult, SelftestReport, run_selftest

__all__ = ["CheckResult", "SelftestReport", "run_selftest"]
