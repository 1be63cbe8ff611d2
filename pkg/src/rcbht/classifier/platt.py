"""Platt sigmoid calibration of SVM decision values."""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..models.exceptions import DegenerateTargetsError, ValidationError

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100
MIN_STEP = 1e-10
HESSIAN_RIDGE = 1e-12
GRADIENT_TOLERANCE = 1e-5


@dataclass(frozen=True)
class PlattSigmoid:
    """``P(y = +1 | f) = 1 / (1 + exp(A * f + B))``."""

    A: float
    B: float

    def __call__(self, decisions: np.ndarray | float) -> np.ndarray:
        z = self.A * np.asarray(decisions, dtype=float) + self.B
        # 1 / (1 + e^z) without overflow for large |z|.
        return np.exp(-np.logaddexp(0.0, z))

    def to_dict(self) -> dict[str, Any]:
        return {"A": self.A, "B": self.B}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PlattSigmoid":
        return cls(A=float(data["A"]), B=float(data["B"]))


def _negative_log_likelihood(
    decisions: np.ndarray, targets: np.ndarray, A: float, B: float
) -> float:
    z = A * decisions + B
    return float(np.sum(np.logaddexp(0.0, z) + (targets - 1.0) * z))


def calibrate_platt(decisions: np.ndarray, labels: np.ndarray) -> PlattSigmoid:
    """Fit a Platt sigmoid by regularized maximum likelihood.

    Targets are smoothed to ``(N+ + 1) / (N+ + 2)`` and ``1 / (N- + 2)`` and
    the likelihood is minimized by Newton steps with backtracking line search.

    Args:
        decisions: Decision values of a validation set
        labels: Matching labels in {+1, -1}

    Raises:
        DegenerateTargetsError: If the labels hold a single class
    """
    decisions = np.asarray(decisions, dtype=float).ravel()
    labels = np.asarray(labels, dtype=float).ravel()
    if decisions.shape != labels.shape:
        raise ValidationError(
            f"{len(decisions)} decisions but {len(labels)} labels", field_name="labels"
        )

    positive = labels > 0
    prior1 = int(positive.sum())
    prior0 = len(labels) - prior1
    if prior1 == 0 or prior0 == 0:
        raise DegenerateTargetsError(context={"positives": prior1, "negatives": prior0})

    hi_target = (prior1 + 1.0) / (prior1 + 2.0)
    lo_target = 1.0 / (prior0 + 2.0)
    targets = np.where(positive, hi_target, lo_target)

    # Start from the smoothed class prior.
    A = 0.0
    B = float(np.log((prior0 + 1.0) / (prior1 + 1.0)))
    fval = _negative_log_likelihood(decisions, targets, A, B)

    for iteration in range(MAX_ITERATIONS):
        p = PlattSigmoid(A, B)(decisions)
        d2 = p * (1.0 - p)
        h11 = HESSIAN_RIDGE + float(np.sum(decisions * decisions * d2))
        h22 = HESSIAN_RIDGE + float(np.sum(d2))
        h21 = float(np.sum(decisions * d2))
        d1 = targets - p
        g1 = float(np.sum(decisions * d1))
        g2 = float(np.sum(d1))
        if abs(g1) < GRADIENT_TOLERANCE and abs(g2) < GRADIENT_TOLERANCE:
            break

        # Newton direction from the 2x2 Hessian.
        det = h11 * h22 - h21 * h21
        dA = -(h22 * g1 - h21 * g2) / det
        dB = -(-h21 * g1 + h11 * g2) / det
        descent = g1 * dA + g2 * dB

        # Backtrack until the sufficient-decrease test passes.
        step = 1.0
        while step >= MIN_STEP:
            new_A = A + step * dA
            new_B = B + step * dB
            new_f = _negative_log_likelihood(decisions, targets, new_A, new_B)
            if new_f < fval + 1e-4 * step * descent:
                A, B, fval = new_A, new_B, new_f
                break
            step /= 2.0
        else:
            logger.warning("Platt line search failed; keeping the last sigmoid")
            break
    else:
        logger.warning(f"Platt calibration reached {MAX_ITERATIONS} iterations")

    logger.debug(f"Platt sigmoid A={A:.6g}, B={B:.6g} after {iteration + 1} iterations")
    return PlattSigmoid(A=A, B=B)
