"""Kernel functions for the SVM solver."""

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from ..models.exceptions import ValidationError


class KernelKind(str, Enum):
    LINEAR = "linear"
    POLY = "poly"
    RBF = "rbf"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice and its parameters.

    ``gamma=None`` means "scale": it is resolved from the training data by
    :meth:`resolved` before any kernel matrix is computed.
    """

    kind: KernelKind = KernelKind.RBF
    degree: int = 3
    gamma: float | None = None
    coef0: float = 0.0

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "kind", KernelKind(self.kind))
        except ValueError:
            raise ValidationError(
                f"Unknown kernel '{self.kind}'",
                field_name="kernel",
                field_value=self.kind,
                suggestions=[f"Use one of: {', '.join(k.value for k in KernelKind)}"],
            ) from None
        if self.degree < 1:
            raise ValidationError(
                "Polynomial degree must be at least 1",
                field_name="degree",
                field_value=self.degree,
            )
        if self.gamma is not None and not self.gamma > 0:
            raise ValidationError(
                "Kernel gamma must be positive",
                field_name="gamma",
                field_value=self.gamma,
            )

    def resolved(self, X: np.ndarray) -> "KernelSpec":
        """Copy with ``gamma`` fixed to ``1 / (n_features * var(X))`` if unset."""
        if self.gamma is not None:
            return self
        return KernelSpec(
            kind=self.kind, degree=self.degree, gamma=default_gamma(X), coef0=self.coef0
        )

    def matrix(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Kernel matrix ``K[i, j] = k(A[i], B[j])``."""
        A = np.atleast_2d(np.asarray(A, dtype=float))
        B = np.atleast_2d(np.asarray(B, dtype=float))
        if self.kind is KernelKind.LINEAR:
            return A @ B.T

        gamma = self.gamma if self.gamma is not None else default_gamma(A)
        if self.kind is KernelKind.POLY:
            return (gamma * (A @ B.T) + self.coef0) ** self.degree

        sq_a = np.einsum("ij,ij->i", A, A)[:, None]
        sq_b = np.einsum("ij,ij->i", B, B)[None, :]
        distances = np.maximum(sq_a + sq_b - 2.0 * (A @ B.T), 0.0)
        return np.exp(-gamma * distances)

    def gram(self, X: np.ndarray) -> np.ndarray:
        """Training kernel matrix; rbf diagonals are exactly 1."""
        K = self.matrix(X, X)
        if self.kind is KernelKind.RBF:
            np.fill_diagonal(K, 1.0)
        return K

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "degree": self.degree,
            "gamma": self.gamma,
            "coef0": self.coef0,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "KernelSpec":
        gamma = data.get("gamma")
        return cls(
            kind=KernelKind(data["kind"]),
            degree=int(data.get("degree", 3)),
            gamma=None if gamma is None else float(gamma),
            coef0=float(data.get("coef0", 0.0)),
        )

    def __str__(self) -> str:
        return self.kind.value


def default_gamma(X: np.ndarray) -> float:
    """Scale-aware gamma; falls back to ``1 / n_features`` for constant data."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n_features = max(X.shape[1], 1)
    variance = float(X.var()) if X.size else 0.0
    if variance <= 0.0 or not np.isfinite(variance):
        return 1.0 / n_features
    return 1.0 / (n_features * variance)
