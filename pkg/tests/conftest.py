"""Shared fixtures for the Minkowski BPV test suite."""

import numpy as np
import pytest

from minkowski_bpv.norm import NormSpec, normalize


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Point the run log at a temporary database and clear the seed override."""
    monkeypatch.setenv("BPV_DATABASE_PATH", str(tmp_path / "runs.db"))
    monkeypatch.delenv("BPV_SEED", raising=False)
    return tmp_path


@pytest.fixture
def euclidean_plane():
    return NormSpec.euclidean(2)


@pytest.fixture
def lp4_plane():
    return normalize(NormSpec.lp(2, 4.0))


@pytest.fixture
def ellipse_plane():
    return normalize(NormSpec.quadratic(np.diag([4.0, 1.0])))


@pytest.fixture(params=["euclidean", "lp4", "quadratic"])
def planar_norm(request):
    """Each normalized planar norm family used by the BPV checks."""
    if request.param == "euclidean":
        return NormSpec.euclidean(2)
    if request.param == "lp4":
        return normalize(NormSpec.lp(2, 4.0))
    return normalize(NormSpec.quadratic(np.diag([4.0, 1.0])))
