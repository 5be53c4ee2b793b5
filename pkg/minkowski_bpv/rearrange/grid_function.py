"""Nonnegative functions sampled on uniform lattices."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.norm import NormSpec, norm_eval


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Cell values of a nonnegative function on the lattice origin + h * Z^n.

    ``origin`` is the center of the cell with index (0, ..., 0); values are
    stored with axis i running along coordinate i.
    """

    values: np.ndarray = field(repr=False)
    origin: Tuple[float, ...]
    h: float

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.ndim < 2:
            raise PreconditionError("grid functions live in dimension n >= 2")
        if len(self.origin) != values.ndim:
            raise PreconditionError(
                f"origin has {len(self.origin)} entries for a {values.ndim}-d lattice"
            )
        if not self.h > 0:
            raise PreconditionError(f"cell width must be positive, got {self.h}")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise PreconditionError("grid function values must be finite and >= 0")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "origin", tuple(float(o) for o in self.origin))
        object.__setattr__(self, "h", float(self.h))

    @classmethod
    def centered(cls, values: np.ndarray, h: float) -> "GridFunction":
        """Place ``values`` on a lattice symmetric about 0."""
        shape = np.shape(values)
        return cls(values, tuple(-((size - 1) / 2) * h for size in shape), h)

    @classmethod
    def sample(
        cls,
        func: Callable[[np.ndarray], np.ndarray],
        shape: Sequence[int],
        h: float,
        origin: Optional[Sequence[float]] = None,
    ) -> "GridFunction":
        """Sample ``func`` at the cell centers of a lattice.

        Args:
            func (Callable[[np.ndarray], np.ndarray]): Maps an array of points
                (last axis = coordinates) to nonnegative values.
            shape (Sequence[int]): Cells per axis.
            h (float): Cell width.
            origin (Optional[Sequence[float]], optional): Center of cell 0.
                Defaults to a lattice centered at 0.

        Returns:
            GridFunction: The sampled function.
        """
        if origin is None:
            origin = tuple(-((size - 1) / 2) * h for size in shape)
        empty = cls(np.zeros(tuple(shape)), tuple(origin), h)
        return cls(np.asarray(func(empty.centers()), dtype=float), empty.origin, h)

    @property
    def n(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.values.shape

    @property
    def cell_volume(self) -> float:
        return self.h**self.n

    def axes(self) -> List[np.ndarray]:
        """Cell-center coordinates along each axis."""
        return [o + self.h * np.arange(size) for o, size in zip(self.origin, self.shape)]

    def centers(self) -> np.ndarray:
        """Cell centers, shape ``self.shape + (n,)``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def norm_at_centers(self, spec: NormSpec) -> np.ndarray:
        """F evaluated at every cell center."""
        if spec.n != self.n:
            raise PreconditionError(f"norm dimension {spec.n} != lattice dimension {self.n}")
        return np.asarray(norm_eval(spec, self.centers()))

    def support_box(self) -> Optional[Tuple[Tuple[int, int], ...]]:
        """Inclusive index ranges of the support per axis, or None if u = 0."""
        nonzero = np.nonzero(self.values)
        if nonzero[0].size == 0:
            return None
        return tuple((int(idx.min()), int(idx.max())) for idx in nonzero)

    def support_count(self) -> int:
        return int(np.count_nonzero(self.values))

    def is_boundary_vanishing(self) -> bool:
        """Whether every cell of the outermost layer is zero."""
        for axis in range(self.n):
            if np.any(np.take(self.values, 0, axis=axis)) or np.any(
                np.take(self.values, -1, axis=axis)
            ):
                return False
        return True

    def scaled(self, factor: float) -> "GridFunction":
        """Return ``factor * u`` for factor >= 0."""
        return GridFunction(self.values * factor, self.origin, self.h)

    def to_text(self) -> str:
        """Serialize to the text format: header "n shape... origin... h", then values."""
        header = [str(self.n)]
        header += [str(size) for size in self.shape]
        header += [format(o, ".17g") for o in self.origin]
        header.append(format(self.h, ".17g"))
        lines = [" ".join(header)]
        lines += [format(v, ".17g") for v in self.values.ravel(order="C")]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GridFunction":
        """Parse the text format written by :meth:`to_text`."""
        lines = text.strip().splitlines()
        if not lines:
            raise PreconditionError("empty grid function file")
        tokens = lines[0].split()
        n = int(tokens[0])
        if len(tokens) != 2 * n + 2:
            raise PreconditionError(f"malformed header: expected {2 * n + 2} fields")
        shape = tuple(int(tok) for tok in tokens[1 : n + 1])
        origin = tuple(float(tok) for tok in tokens[n + 1 : 2 * n + 1])
        h = float(tokens[-1])
        values = np.array([float(tok) for line in lines[1:] for tok in line.split()])
        if values.size != int(np.prod(shape)):
            raise PreconditionError(
                f"expected {int(np.prod(shape))} values, found {values.size}"
            )
        return cls(values.reshape(shape), origin, h)

    def write(self, path: Union[str, Path]) -> None:
        """Write the function to ``path`` in the text format."""
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path: Union[str, Path]) -> "GridFunction":
        """Read a function from ``path``."""
        return cls.from_text(Path(path).read_text())


def wulff_indicator(
    spec: NormSpec,
    shape: Sequence[int],
    h: float,
    radius: float,
    center: Optional[Sequence[float]] = None,
) -> GridFunction:
    """Indicator of the discrete Wulff ball {F(x - center) < radius}.

    Args:
        spec (NormSpec): The norm defining the ball.
        shape (Sequence[int]): Cells per axis of a lattice centered at 0.
        h (float): Cell width.
        radius (float): Ball radius.
        center (Optional[Sequence[float]], optional): Ball center.
            Defaults to the origin.

    Returns:
        GridFunction: The indicator function.
    """
    shift = np.zeros(len(shape)) if center is None else np.asarray(center, dtype=float)

    def indicator(points: np.ndarray) -> np.ndarray:
        return (np.asarray(norm_eval(spec, points - shift)) < radius).astype(float)

    return GridFunction.sample(indicator, shape, h)


def random_bump_function(
    shape: Sequence[int],
    h: float,
    rng: np.random.Generator,
    radius: float,
    bumps: int = 3,
) -> GridFunction:
    """A random sum of Gaussian bumps cut off outside the Euclidean ball of ``radius``.

    The cutoff (1 - |x|^2/radius^2)_+^2 makes the function vanish on the
    lattice boundary whenever the ball fits inside the lattice.

    Args:
        shape (Sequence[int]): Cells per axis of a lattice centered at 0.
        h (float): Cell width.
        rng (np.random.Generator): Source of the bump parameters.
        radius (float): Support radius.
        bumps (int, optional): Number of bumps. Defaults to 3.

    Returns:
        GridFunction: The sampled function.
    """
    n = len(shape)
    amplitudes = rng.uniform(0.5, 1.5, size=bumps)
    centers = rng.uniform(-radius / (2 * np.sqrt(n)), radius / (2 * np.sqrt(n)), size=(bumps, n))
    widths = rng.uniform(0.15 * radius, 0.4 * radius, size=bumps)

    def func(points: np.ndarray) -> np.ndarray:
        squared = np.sum(points**2, axis=-1)
        cutoff = np.maximum(0.0, 1.0 - squared / radius**2) ** 2
        total = np.zeros(points.shape[:-1])
        for a, c, w in zip(amplitudes, centers, widths):
            total += a * np.exp(-np.sum((points - c) ** 2, axis=-1) / (2 * w**2))
        return total * cutoff

    return GridFunction.sample(func, shape, h)
