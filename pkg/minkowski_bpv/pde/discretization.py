"""Finite-volume discretization of the radial problem in the reduced variable.

With h = rho^s g (s = alpha - (n-2)/2) the radial equation becomes

    -(rho^k g')' / rho^k + lambda g = rho^(s(p-2)) g_+^(p-1),   k = 1 + 2 alpha,

which is regular at the origin. The unknowns are g at the origin and at the
mesh nodes rho_1 .. rho_(M-1); g(rho_M) = 0. Cell faces sit halfway between
neighbouring unknowns, the flux through the origin vanishes, and the cell
masses are exact integrals of rho^k. The two-point flux is then exact for
g = a + b rho^2, the local form of every even solution, and the discrete
system is the gradient of

    E(g) = 1/2 g.(S + lambda W) g - 1/p sum_i V_i (g_i)_+^p.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from minkowski_bpv.exceptions import ConvergenceError
from minkowski_bpv.pde.problem import PdeProblem
from minkowski_bpv.spectrum import RadialProfile, reduction_exponent

EIGEN_TOLERANCE = 1e-13


def _cell_integral(edges: np.ndarray, power: float) -> np.ndarray:
    """int rho^(power - 1) over consecutive cells [edges_i, edges_(i+1)]."""
    return (edges[1:] ** power - edges[:-1] ** power) / power


@dataclass(frozen=True, eq=False)
class FiniteVolumeSystem:
    """Assembled finite-volume system for one problem and mesh."""

    problem: PdeProblem
    mesh: np.ndarray = field(repr=False)
    grading: float
    transmissibility: np.ndarray = field(repr=False)
    cell_mass: np.ndarray = field(repr=False)
    source_mass: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, problem: PdeProblem, mesh: np.ndarray, grading: float) -> "FiniteVolumeSystem":
        """Assemble the system on the nodes rho_1 < ... < rho_M.

        Args:
            problem (PdeProblem): The problem.
            mesh (np.ndarray): Profile nodes, the last one being the Dirichlet node.
            grading (float): Grading exponent the mesh was built with.

        Returns:
            FiniteVolumeSystem: The assembled system.
        """
        mesh = np.asarray(mesh, dtype=float)
        z = np.concatenate(([0.0], mesh))
        faces = (z[:-1] + z[1:]) / 2
        k = 1 + 2 * problem.alpha
        s = reduction_exponent(problem.alpha, problem.n)
        edges = np.concatenate(([0.0], faces))
        return cls(
            problem=problem,
            mesh=mesh,
            grading=grading,
            transmissibility=faces**k / np.diff(z),
            cell_mass=_cell_integral(edges, k + 1),
            source_mass=_cell_integral(edges, k + 1 + s * (problem.p - 2)),
        )

    @property
    def size(self) -> int:
        """Number of unknowns: the origin plus all non-Dirichlet nodes."""
        return len(self.mesh)

    @property
    def exponent(self) -> float:
        return reduction_exponent(self.problem.alpha, self.problem.n)

    def _bands(self) -> Tuple[np.ndarray, np.ndarray]:
        t = self.transmissibility
        main = t.copy()
        main[1:] += t[:-1]
        return main, -t[:-1]

    def stiffness(self) -> sparse.csc_matrix:
        main, off = self._bands()
        return sparse.diags([off, main, off], [-1, 0, 1], format="csc")

    def operator(self) -> sparse.csc_matrix:
        """S + lambda W."""
        main, off = self._bands()
        main = main + self.problem.lam * self.cell_mass
        return sparse.diags([off, main, off], [-1, 0, 1], format="csc")

    def source(self, g: np.ndarray) -> np.ndarray:
        return self.source_mass * np.maximum(g, 0.0) ** (self.problem.p - 1)

    def residual(self, g: np.ndarray) -> np.ndarray:
        """(S + lambda W) g - V g_+^(p-1), one entry per cell."""
        return self.operator() @ g - self.source(g)

    def jacobian(self, g: np.ndarray) -> sparse.csc_matrix:
        p = self.problem.p
        derivative = (p - 1) * self.source_mass * np.maximum(g, 0.0) ** (p - 2)
        return (self.operator() - sparse.diags(derivative)).tocsc()

    def quadratic_part(self, g: np.ndarray) -> float:
        """g.(S + lambda W) g."""
        return float(g @ (self.operator() @ g))

    def power_part(self, g: np.ndarray) -> float:
        """sum_i V_i (g_i)_+^p."""
        return float(np.sum(self.source_mass * np.maximum(g, 0.0) ** self.problem.p))

    def energy(self, g: np.ndarray) -> float:
        return 0.5 * self.quadratic_part(g) - self.power_part(g) / self.problem.p

    def principal_eigenpair(self) -> Tuple[float, np.ndarray]:
        """Smallest eigenvalue of S v = mu W v and its positive eigenvector.

        Shift-invert Lanczos around 0, as for the element eigenproblem.

        Returns:
            Tuple[float, np.ndarray]: mu and v with max v = 1.

        Raises:
            ConvergenceError: If the eigensolver does not converge.
        """
        try:
            values, vectors = sparse_linalg.eigsh(
                self.stiffness(),
                k=1,
                M=sparse.diags(self.cell_mass, format="csc"),
                sigma=0.0,
                which="LM",
                v0=np.ones(self.size),
                tol=EIGEN_TOLERANCE,
            )
        except sparse_linalg.ArpackNoConvergence as exc:
            raise ConvergenceError(f"discrete eigen solve did not converge: {exc}")
        v = vectors[:, 0]
        if v.sum() < 0:
            v = -v
        return float(values[0]), v / np.max(v)

    def to_profile(self, g: np.ndarray) -> RadialProfile:
        """h = rho^s g at rho_1 .. rho_M, with h(rho_M) = 0."""
        values = np.append(g[1:], 0.0) * self.mesh**self.exponent
        return RadialProfile(R=self.mesh[-1], nodes=self.mesh, values=values, grading=self.grading)
