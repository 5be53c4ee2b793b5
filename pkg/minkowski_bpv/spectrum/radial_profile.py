"""Radial profiles h(rho) on graded meshes over (0, R]."""

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from minkowski_bpv.exceptions import PreconditionError

DEFAULT_GRADING = 2.0


def graded_mesh(R: float, M: int, grading: float = DEFAULT_GRADING) -> np.ndarray:
    """Nodes rho_i = R (i/M)^grading for i = 1..M.

    Args:
        R (float): Outer radius.
        M (int): Number of nodes.
        grading (float, optional): Grading exponent. Defaults to 2.

    Returns:
        np.ndarray: Strictly increasing nodes ending at R.
    """
    if not R > 0:
        raise PreconditionError(f"outer radius must be positive, got {R}")
    if M < 5:
        raise PreconditionError(f"a radial mesh needs at least 5 nodes, got {M}")
    if not grading >= 1:
        raise PreconditionError(f"grading exponent must be >= 1, got {grading}")
    nodes = R * (np.arange(1, M + 1) / M) ** grading
    nodes[-1] = R
    return nodes


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Values h_i of a radial function at nodes 0 < rho_1 < ... < rho_M = R."""

    R: float
    nodes: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    grading: float = DEFAULT_GRADING

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        values = np.array(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape:
            raise PreconditionError("nodes and values must be 1-d arrays of equal length")
        if len(nodes) < 2 or nodes[0] <= 0 or np.any(np.diff(nodes) <= 0):
            raise PreconditionError("nodes must be positive and strictly increasing")
        if abs(nodes[-1] - self.R) > 1e-12 * self.R:
            raise PreconditionError(f"last node {nodes[-1]} differs from R = {self.R}")
        if not np.all(np.isfinite(values)):
            raise PreconditionError("profile values must be finite")
        nodes.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "R", float(self.R))

    @classmethod
    def from_function(
        cls, func, R: float, M: int, grading: float = DEFAULT_GRADING
    ) -> "RadialProfile":
        """Sample ``func`` on the graded mesh; the last value is forced to 0."""
        nodes = graded_mesh(R, M, grading)
        values = np.asarray(func(nodes), dtype=float).copy()
        values[-1] = 0.0
        return cls(R=R, nodes=nodes, values=values, grading=grading)

    def __len__(self) -> int:
        return len(self.nodes)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def is_boundary_vanishing(self, rtol: float = 1e-12) -> bool:
        """Whether h_M = 0 relative to the sup norm."""
        return abs(self.values[-1]) <= rtol * max(self.sup_norm(), 1e-300)

    def with_values(self, values: np.ndarray) -> "RadialProfile":
        """Same mesh, new values."""
        return RadialProfile(self.R, self.nodes, values, self.grading)

    def scaled(self, factor: float) -> "RadialProfile":
        return self.with_values(self.values * factor)

    def dilated(self, factor: float) -> "RadialProfile":
        """The profile rho -> h(rho / factor) on radius factor * R."""
        if not factor > 0:
            raise PreconditionError(f"dilation factor must be positive, got {factor}")
        return RadialProfile(self.R * factor, self.nodes * factor, self.values, self.grading)

    def to_csv(self) -> str:
        """CSV text with columns rho, h."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["rho", "h"])
        for rho, h in zip(self.nodes, self.values):
            writer.writerow([format(rho, ".17g"), format(h, ".17g")])
        return buffer.getvalue()

    def write_csv(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_csv())
