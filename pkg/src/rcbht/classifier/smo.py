"""Binary soft-margin SVM trained by sequential minimal optimization.

The dual problem

    min  1/2 a^T Q a - sum(a)   s.t.  0 <= a_i <= C,  y^T a = 0,
    Q_ij = y_i y_j K(x_i, x_j)

is solved two variables at a time. Each step picks the maximal violating
pair: the index in the "up" set with the largest ``-y G`` and the index in
the "low" set with the smallest, stopping once their gap drops below ``tol``.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..models.exceptions import NoConvergenceError, SingleClassError, ValidationError
from .kernels import KernelSpec

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-3
ITERATIONS_PER_SAMPLE = 100_000

# Curvature floor for non positive-definite kernels.
_TAU = 1e-12


@dataclass(frozen=True)
class DualSolution:
    alpha: np.ndarray
    bias: float
    objective: float
    iterations: int


def dual_objective(alpha: np.ndarray, K: np.ndarray, y: np.ndarray) -> float:
    """Value of the (minimized) dual objective at ``alpha``."""
    weighted = alpha * y
    return float(0.5 * weighted @ K @ weighted - alpha.sum())


def solve_dual(
    K: np.ndarray,
    y: np.ndarray,
    C: float,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int | None = None,
) -> DualSolution:
    """Solve the SVM dual for a precomputed kernel matrix.

    Args:
        K: Kernel matrix of the training samples
        y: Labels in {+1, -1}
        C: Box constraint
        tol: Stopping tolerance on the maximal KKT violation
        max_iter: Iteration cap, ``100000 * n`` by default

    Raises:
        NoConvergenceError: If the cap is reached first
    """
    n = len(y)
    max_iter = max_iter if max_iter is not None else ITERATIONS_PER_SAMPLE * n
    alpha = np.zeros(n)
    # Gradient of the dual at alpha = 0.
    gradient = -np.ones(n)
    positive = y > 0

    iterations = 0
    while True:
        at_upper = alpha >= C
        at_lower = alpha <= 0
        up = np.where(positive, ~at_upper, ~at_lower)
        low = np.where(positive, ~at_lower, ~at_upper)
        score = -y * gradient

        # Maximal violating pair.
        up_scores = np.where(up, score, -np.inf)
        low_scores = np.where(low, score, np.inf)
        i = int(np.argmax(up_scores))
        j = int(np.argmin(low_scores))
        gap = up_scores[i] - low_scores[j]
        if not gap >= tol:
            break
        if iterations >= max_iter:
            raise NoConvergenceError(
                f"SMO did not reach tolerance {tol} (gap {gap:.3g})",
                iterations=iterations,
            )

        curvature = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if curvature <= 0:
            curvature = _TAU
        step = gap / curvature
        # Largest step keeping both multipliers inside [0, C].
        step = min(
            step,
            C - alpha[i] if positive[i] else alpha[i],
            alpha[j] if positive[j] else C - alpha[j],
        )
        alpha[i] = min(max(alpha[i] + y[i] * step, 0.0), C)
        alpha[j] = min(max(alpha[j] - y[j] * step, 0.0), C)
        # Only columns i and j changed.
        gradient += step * y * (K[:, i] - K[:, j])
        iterations += 1

    bias = _bias(alpha, gradient, y, C)
    objective = dual_objective(alpha, K, y)
    logger.debug(
        f"SMO converged after {iterations} iterations, objective {objective:.6g}"
    )
    return DualSolution(
        alpha=alpha, bias=bias, objective=objective, iterations=iterations
    )


def _bias(alpha: np.ndarray, gradient: np.ndarray, y: np.ndarray, C: float) -> float:
    """Offset from free multipliers, or the midpoint of the feasible range."""
    yg = y * gradient
    free = (alpha > 0) & (alpha < C)
    if free.any():
        return float(-yg[free].mean())

    at_upper = alpha >= C
    positive = y > 0
    # Bounded multipliers only constrain rho = -bias from one side.
    upper_side = (at_upper & ~positive) | (~at_upper & positive)
    lower_side = ~upper_side
    upper = yg[upper_side].min() if upper_side.any() else np.inf
    lower = yg[lower_side].max() if lower_side.any() else -np.inf
    if not np.isfinite(upper):
        upper = lower
    if not np.isfinite(lower):
        lower = upper
    return float(-(upper + lower) / 2.0)


@dataclass(frozen=True)
class BinaryMachine:
    """Trained two-class SVM: ``f(x) = sum(dual_coef * K(sv, x)) + bias``.

    ``dual_coef`` holds ``alpha_i * y_i`` of the support vectors only.
    """

    kernel: KernelSpec
    C: float
    support_vectors: np.ndarray
    dual_coef: np.ndarray
    bias: float
    objective: float = 0.0
    iterations: int = 0

    @property
    def n_support(self) -> int:
        return int(len(self.dual_coef))

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if not self.n_support:
            return np.full(X.shape[0], self.bias)
        return self.kernel.matrix(X, self.support_vectors) @ self.dual_coef + self.bias

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Labels in {+1, -1}; a zero decision counts as +1."""
        return np.where(self.decision_function(X) >= 0, 1, -1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kernel": self.kernel.to_dict(),
            "C": self.C,
            "support_vectors": self.support_vectors.tolist(),
            "dual_coef": self.dual_coef.tolist(),
            "bias": self.bias,
            "objective": self.objective,
            "iterations": self.iterations,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BinaryMachine":
        dual_coef = np.asarray(data["dual_coef"], dtype=float)
        support_vectors = np.asarray(data["support_vectors"], dtype=float)
        if not len(dual_coef):
            support_vectors = support_vectors.reshape(0, 0)
        return cls(
            kernel=KernelSpec.from_dict(data["kernel"]),
            C=float(data["C"]),
            support_vectors=support_vectors,
            dual_coef=dual_coef,
            bias=float(data["bias"]),
            objective=float(data.get("objective", 0.0)),
            iterations=int(data.get("iterations", 0)),
        )


def train_binary(
    X: np.ndarray,
    y: np.ndarray,
    kernel: KernelSpec | None = None,
    C: float = 1.0,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int | None = None,
) -> BinaryMachine:
    """Train a binary SVM on labels in {+1, -1}.

    An unset kernel ``gamma`` is resolved from ``X`` first.

    Raises:
        SingleClassError: If ``y`` lacks one of the classes
        NoConvergenceError: If SMO hits its iteration cap
        ValidationError: On malformed inputs or a non-positive ``C``
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    if X.shape[0] != len(y):
        raise ValidationError(
            f"X has {X.shape[0]} rows but y has {len(y)} labels", field_name="y"
        )
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ValidationError(
            "Binary labels must be +1 or -1",
            field_name="y",
            suggestions=["Map the two classes to +1 and -1 before training"],
        )
    if not C > 0:
        raise ValidationError(
            "Penalty C must be positive", field_name="C", field_value=C
        )
    if not ((y > 0).any() and (y < 0).any()):
        raise SingleClassError(context={"n_samples": len(y)})

    kernel = (kernel or KernelSpec()).resolved(X)
    solution = solve_dual(kernel.gram(X), y, C, tol=tol, max_iter=max_iter)
    support = solution.alpha > 0
    return BinaryMachine(
        kernel=kernel,
        C=C,
        support_vectors=X[support],
        dual_coef=solution.alpha[support] * y[support],
        bias=solution.bias,
        objective=solution.objective,
        iterations=solution.iterations,
    )
