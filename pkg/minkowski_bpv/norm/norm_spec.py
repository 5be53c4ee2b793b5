"""Parametric Minkowski norm specifications."""

import math
from pathlib import Path
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Matrix = Tuple[Tuple[float, ...], ...]


class NormSpec(BaseModel):
    """A reversible Minkowski norm F(x) = kappa * base(x) on R^n.

    ``lp`` uses the l^p norm, ``quadratic`` the form sqrt(x^T A x) and ``mix``
    the convex combination ``weights[0] * l^p + weights[1] * quadratic``.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Dimension of the space")
    family: Literal["lp", "quadratic", "mix"] = Field(
        ..., description="Parametric norm family"
    )
    p: Optional[float] = Field(None, gt=1.0, description="Exponent of the l^p part")
    matrix: Optional[Matrix] = Field(
        None, description="Symmetric positive-definite matrix of the quadratic part"
    )
    weights: Optional[Tuple[float, float]] = Field(
        None, description="Weights of the l^p and quadratic parts"
    )
    kappa: float = Field(1.0, gt=0.0, description="Multiplicative scale")

    @model_validator(mode="after")
    def _check_family(self) -> "NormSpec":
        if self.family in ("lp", "mix"):
            if self.p is None or not math.isfinite(self.p):
                raise ValueError(f"family '{self.family}' needs a finite p > 1")
        if self.family in ("quadratic", "mix"):
            if self.matrix is None:
                raise ValueError(f"family '{self.family}' needs a matrix")
            matrix = np.asarray(self.matrix, dtype=float)
            if matrix.shape != (self.n, self.n):
                raise ValueError(f"matrix must be {self.n}x{self.n}, got {matrix.shape}")
            scale = float(np.max(np.abs(matrix)))
            if not np.allclose(matrix, matrix.T, rtol=0.0, atol=1e-12 * scale):
                raise ValueError("matrix must be symmetric")
            try:
                np.linalg.cholesky(matrix)
            except np.linalg.LinAlgError:
                raise ValueError("matrix must be positive definite")
        if self.family == "mix":
            if self.weights is None:
                raise ValueError("family 'mix' needs two weights")
            w0, w1 = self.weights
            if w0 < 0 or w1 < 0 or abs(w0 + w1 - 1.0) > 1e-12:
                raise ValueError("mix weights must be nonnegative and sum to 1")
        return self

    @classmethod
    def euclidean(cls, n: int) -> "NormSpec":
        """The Euclidean norm on R^n."""
        return cls(n=n, family="quadratic", matrix=tuple(map(tuple, np.eye(n))))

    @classmethod
    def lp(cls, n: int, p: float, kappa: float = 1.0) -> "NormSpec":
        """The scaled l^p norm on R^n."""
        return cls(n=n, family="lp", p=p, kappa=kappa)

    @classmethod
    def quadratic(
        cls, matrix: Union[Sequence[Sequence[float]], np.ndarray], kappa: float = 1.0
    ) -> "NormSpec":
        """The scaled norm sqrt(x^T A x)."""
        rows = tuple(tuple(float(v) for v in row) for row in np.asarray(matrix))
        return cls(n=len(rows), family="quadratic", matrix=rows, kappa=kappa)

    @classmethod
    def mix(
        cls,
        p: float,
        matrix: Union[Sequence[Sequence[float]], np.ndarray],
        weights: Tuple[float, float],
        kappa: float = 1.0,
    ) -> "NormSpec":
        """Convex combination of an l^p norm and a quadratic norm."""
        rows = tuple(tuple(float(v) for v in row) for row in np.asarray(matrix))
        return cls(
            n=len(rows), family="mix", p=p, matrix=rows, weights=weights, kappa=kappa
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "NormSpec":
        """Load a norm specification from a JSON file.

        Args:
            path (Union[str, Path]): Path of the JSON document.

        Returns:
            NormSpec: The validated specification.
        """
        return cls.model_validate_json(Path(path).read_text())

    def with_kappa(self, kappa: float) -> "NormSpec":
        """Return a copy with a different scale."""
        if not kappa > 0:
            raise ValueError(f"kappa must be positive, got {kappa}")
        return self.model_copy(update={"kappa": float(kappa)})

    def matrix_array(self) -> np.ndarray:
        """The quadratic part as an array."""
        return np.asarray(self.matrix, dtype=float)

    def unscaled(self) -> "NormSpec":
        """The same family with kappa = 1."""
        return self.with_kappa(1.0)
