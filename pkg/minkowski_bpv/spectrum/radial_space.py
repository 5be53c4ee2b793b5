"""Piecewise-linear elements for the singular radial quadratic forms.

A radial function is written h(rho) = rho^s g(rho) with s = alpha - (n-2)/2.
Integrating by parts,

    int h'^2 rho^(n-1) - c int h^2 rho^(n-3) = int g'^2 rho^(d-1),
    int h^2 rho^(n-1) = int g^2 rho^(d-1),

with c = (n-2)^2/4 - alpha^2 and d = 2 + 2 alpha, so the Hardy term is
absorbed exactly and g is smooth up to the origin. ``g`` is piecewise linear
on the mesh and constant on [0, rho_1].

For alpha = 0 and n >= 3 the boundary term s g(0)^2 of that integration does
not vanish; there g = rho^((n-2)/2) h tends to 0 and is taken linear on
[0, rho_1] instead, so the trial function has finite energy.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from minkowski_bpv.exceptions import PreconditionError

GAUSS_POINTS = 6


def reduction_exponent(alpha: float, n: int) -> float:
    """s = alpha - (n-2)/2, the power carried by h near the origin."""
    return alpha - (n - 2) / 2


def hardy_coefficient(alpha: float, n: int) -> float:
    """c = (n-2)^2/4 - alpha^2; exactly 0 in the plane."""
    return (n - 2) ** 2 / 4 - alpha**2


def _element_points(nodes: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    gl_x, gl_w = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    a, b = nodes[:-1], nodes[1:]
    width = b - a
    x = 0.5 * (a + b)[:, None] + 0.5 * width[:, None] * gl_x[None, :]
    w = 0.5 * width[:, None] * gl_w[None, :]
    return x, w, width


def _tridiagonal(main: np.ndarray, off: np.ndarray) -> sparse.csr_matrix:
    return sparse.diags([off, main, off], [-1, 0, 1], format="csr")


def _stiffness(nodes: np.ndarray, power: float, vanishing: bool) -> sparse.csr_matrix:
    x, w, width = _element_points(nodes)
    local = (w * x**power).sum(axis=1) / width**2
    main = np.zeros(len(nodes))
    main[:-1] += local
    main[1:] += local
    if vanishing:
        main[0] += nodes[0] ** (power - 1) / (power + 1)
    return _tridiagonal(main, -local)


def _mass(nodes: np.ndarray, power: float, vanishing: bool) -> sparse.csr_matrix:
    x, w, width = _element_points(nodes)
    weight = w * x**power
    left = (nodes[1:, None] - x) / width[:, None]
    right = 1.0 - left
    main = np.zeros(len(nodes))
    main[:-1] += (weight * left * left).sum(axis=1)
    main[1:] += (weight * right * right).sum(axis=1)
    if vanishing:
        # g = g_1 rho / rho_1 on [0, rho_1]
        main[0] += nodes[0] ** (power + 1) / (power + 3)
    else:
        # constant extension on [0, rho_1]
        main[0] += nodes[0] ** (power + 1) / (power + 1)
    return _tridiagonal(main, (weight * left * right).sum(axis=1))


@dataclass(frozen=True, eq=False)
class RadialSpace:
    """Assembled radial forms on a mesh, in the reduced variable g = rho^(-s) h.

    ``stiffness`` and ``mass`` carry the weight rho^(d-1); ``hardy_mass``
    carries rho^(2 alpha - 1) and is absent in the plane. The last node is
    the Dirichlet node.
    """

    nodes: np.ndarray = field(repr=False)
    alpha: float
    n: int
    stiffness: sparse.csr_matrix = field(repr=False)
    mass: sparse.csr_matrix = field(repr=False)
    lumped_mass: np.ndarray = field(repr=False)
    hardy_mass: Optional[sparse.csr_matrix] = field(default=None, repr=False)
    vanishing_origin: bool = False

    @classmethod
    def build(cls, nodes: np.ndarray, alpha: float, n: int) -> "RadialSpace":
        """Assemble the forms for ``(alpha, n)`` on ``nodes``.

        Args:
            nodes (np.ndarray): Mesh 0 < rho_1 < ... < rho_M.
            alpha (float): Order in [0, (n-2)/2], or 0 in the plane.
            n (int): Dimension.

        Returns:
            RadialSpace: The assembled space.
        """
        if alpha < 0:
            raise PreconditionError(f"alpha must be nonnegative, got {alpha}")
        nodes = np.asarray(nodes, dtype=float)
        vanishing = alpha == 0 and n >= 3
        power = 1 + 2 * alpha
        mass = _mass(nodes, power, vanishing)
        lumped = np.asarray(mass.sum(axis=1)).ravel()
        hardy = _mass(nodes, 2 * alpha - 1, vanishing) if n >= 3 else None
        return cls(
            nodes=nodes,
            alpha=float(alpha),
            n=n,
            stiffness=_stiffness(nodes, power, vanishing),
            mass=mass,
            lumped_mass=lumped,
            hardy_mass=hardy,
            vanishing_origin=vanishing,
        )

    @property
    def exponent(self) -> float:
        return reduction_exponent(self.alpha, self.n)

    @property
    def hardy_coefficient(self) -> float:
        return hardy_coefficient(self.alpha, self.n)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def reduce(self, h: np.ndarray) -> np.ndarray:
        """g = rho^(-s) h."""
        return np.asarray(h, dtype=float) * self.nodes ** (-self.exponent)

    def restore(self, g: np.ndarray) -> np.ndarray:
        """h = rho^s g."""
        return np.asarray(g, dtype=float) * self.nodes**self.exponent

    def interior(self, matrix: sparse.csr_matrix) -> sparse.csr_matrix:
        """Drop the Dirichlet row and column."""
        return matrix[:-1, :-1]

    def energy_form(self, h: np.ndarray) -> float:
        """int h'^2 rho^(n-1) - c int h^2 rho^(n-3)."""
        g = self.reduce(h)
        return float(g @ (self.stiffness @ g))

    def mass_form(self, h: np.ndarray) -> float:
        """int h^2 rho^(n-1)."""
        g = self.reduce(h)
        return float(g @ (self.mass @ g))

    def power_form(self, h: np.ndarray, p: float) -> float:
        """int h_+^p rho^(n-1) for the interpolant rho^s g."""
        g = np.maximum(self.reduce(h), 0.0)
        x, w, _ = _element_points(self.nodes)
        left = (self.nodes[1:, None] - x) / (self.nodes[1:] - self.nodes[:-1])[:, None]
        values = g[:-1, None] * left + g[1:, None] * (1.0 - left)
        power = self.exponent * p + self.n
        inner = float(np.sum(w * x ** (power - 1) * values**p))
        if self.vanishing_origin:
            return inner + g[0] ** p * self.nodes[0] ** power / (power + p)
        return inner + g[0] ** p * self.nodes[0] ** power / power

    def gradient_form(self, h: np.ndarray) -> float:
        """int h'^2 rho^(n-1), the energy form plus the Hardy term."""
        energy = self.energy_form(h)
        c = self.hardy_coefficient
        if c == 0.0:
            return energy
        g = self.reduce(h)
        return energy + c * float(g @ (self.hardy_mass @ g))
