"""Ball-volume profiles rho -> Vol(B(rho)) and deficiency families."""

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import interpolate

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.specfun import unit_ball_volume_euclidean

ProfileKind = Literal["euclidean", "scaled_flat", "tabulated", "parametric"]


@dataclass(frozen=True)
class Deficiency:
    """A non-decreasing function g >= 0 with g(0+) = 0, and its kinks."""

    name: str
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    breakpoints: Tuple[float, ...] = ()

    def __call__(self, rho: ArrayLike) -> np.ndarray:
        return np.asarray(self.func(np.asarray(rho, dtype=float)), dtype=float)


def power_deficiency(amplitude: float, exponent: float = 1.0, scale: float = 1.0) -> Deficiency:
    """g(rho) = amplitude * min(1, (rho / scale)^exponent)."""
    if not 0 <= amplitude < 1 or not exponent > 0 or not scale > 0:
        raise PreconditionError("power deficiency needs 0 <= amplitude < 1, exponent > 0, scale > 0")
    return Deficiency(
        name=f"power(a={amplitude}, k={exponent}, s={scale})",
        func=lambda rho: amplitude * np.minimum(1.0, (rho / scale) ** exponent),
        breakpoints=(scale,),
    )


def step_deficiency(amplitude: float, radius: float) -> Deficiency:
    """g(rho) = amplitude for rho >= radius, 0 before."""
    if not 0 <= amplitude < 1 or not radius > 0:
        raise PreconditionError("step deficiency needs 0 <= amplitude < 1 and radius > 0")
    return Deficiency(
        name=f"step(a={amplitude}, r={radius})",
        func=lambda rho: np.where(rho >= radius, amplitude, 0.0),
        breakpoints=(radius,),
    )


def constant_deficiency(amplitude: float) -> Deficiency:
    """g = amplitude everywhere; not vanishing at 0, used for the equality case."""
    return Deficiency(name=f"constant(a={amplitude})", func=lambda rho: np.full_like(rho, amplitude))


@dataclass(frozen=True, eq=False)
class VolumeProfile:
    """Vol(B(rho)) = omega_n rho^n psi(rho) in dimension n.

    ``psi`` is 1 for the flat profile; ``scaled_flat`` keeps psi = 1 up to
    ``core`` and then follows max(c, (core/rho)^n), so the volume first stays
    constant and then grows like c omega_n rho^n. Tabulated profiles
    interpolate psi with a monotone cubic and extend it by constants.
    """

    n: int
    kind: ProfileKind
    c: float = 1.0
    core: float = 0.5
    table: Optional[Tuple[np.ndarray, np.ndarray]] = field(default=None, repr=False)
    deficiency: Optional[Deficiency] = None
    _pchip: Optional[interpolate.PchipInterpolator] = field(default=None, repr=False)

    @classmethod
    def euclidean(cls, n: int) -> "VolumeProfile":
        return cls(n=n, kind="euclidean")

    @classmethod
    def scaled_flat(cls, n: int, c: float, core: float = 0.5) -> "VolumeProfile":
        if not 0 < c <= 1:
            raise PreconditionError(f"scaling factor must lie in (0, 1], got {c}")
        if not core > 0:
            raise PreconditionError(f"flat core radius must be positive, got {core}")
        return cls(n=n, kind="scaled_flat", c=c, core=core)

    @classmethod
    def tabulated(cls, n: int, rho: Sequence[float], vol: Sequence[float]) -> "VolumeProfile":
        """Profile through the points (rho_j, Vol_j).

        Args:
            n (int): Dimension.
            rho (Sequence[float]): Strictly increasing positive radii.
            vol (Sequence[float]): Positive volumes.

        Returns:
            VolumeProfile: The interpolated profile.
        """
        rho = np.asarray(rho, dtype=float)
        vol = np.asarray(vol, dtype=float)
        if rho.ndim != 1 or rho.shape != vol.shape or len(rho) < 2:
            raise PreconditionError("a volume table needs at least two (rho, vol) rows")
        if rho[0] <= 0 or np.any(np.diff(rho) <= 0):
            raise PreconditionError("table radii must be positive and strictly increasing")
        if np.any(vol <= 0):
            raise PreconditionError("table volumes must be positive")
        psi = vol / (unit_ball_volume_euclidean(n) * rho**n)
        pchip = interpolate.PchipInterpolator(rho, psi, extrapolate=False)
        return cls(n=n, kind="tabulated", table=(rho, vol), _pchip=pchip)

    @classmethod
    def from_csv(cls, n: int, path: Union[str, Path]) -> "VolumeProfile":
        """Read a two-column CSV (rho, vol) with a header row."""
        with open(path, "r", newline="") as f:
            rows = [row for row in csv.reader(f) if row]
        if rows and not _is_number(rows[0][0]):
            rows = rows[1:]
        data = np.array([[float(a), float(b)] for a, b, *_ in rows])
        if data.size == 0:
            raise PreconditionError(f"no volume rows in {path}")
        return cls.tabulated(n, data[:, 0], data[:, 1])

    @classmethod
    def parametric(cls, n: int, deficiency: Deficiency) -> "VolumeProfile":
        """Vol = omega_n rho^n (1 - g(rho))."""
        return cls(n=n, kind="parametric", deficiency=deficiency)

    def ratio(self, rho: ArrayLike) -> np.ndarray:
        """psi(rho) = Vol(rho) / (omega_n rho^n)."""
        r = np.asarray(rho, dtype=float)
        if self.kind == "euclidean":
            return np.ones_like(r)
        if self.kind == "scaled_flat":
            with np.errstate(divide="ignore"):
                tail = np.maximum(self.c, (self.core / r) ** self.n)
            return np.where(r <= self.core, 1.0, tail)
        if self.kind == "tabulated":
            radii, _ = self.table
            clipped = np.clip(r, radii[0], radii[-1])
            return self._pchip(clipped)
        return 1.0 - self.deficiency(r)

    def volume(self, rho: ArrayLike) -> np.ndarray:
        r = np.asarray(rho, dtype=float)
        return unit_ball_volume_euclidean(self.n) * r**self.n * self.ratio(r)

    def breakpoints(self) -> Tuple[float, ...]:
        """Radii where psi may have a kink."""
        if self.kind == "scaled_flat":
            return (self.core, self.core * self.c ** (-1.0 / self.n))
        if self.kind == "tabulated":
            radii = self.table[0]
            return (float(radii[0]), float(radii[-1]))
        if self.kind == "parametric":
            return self.deficiency.breakpoints
        return ()

    def describe(self) -> str:
        if self.kind == "scaled_flat":
            return f"scaled_flat(c={self.c}, core={self.core})"
        if self.kind == "parametric":
            return f"parametric({self.deficiency.name})"
        return self.kind


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True
