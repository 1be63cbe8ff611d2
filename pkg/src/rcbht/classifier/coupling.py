"""Class probabilities from pairwise probabilities."""

import logging

import numpy as np

from ..models.exceptions import InvalidPairwiseMatrixError

logger = logging.getLogger(__name__)

PROBABILITY_FLOOR = 1e-7
_SUM_TOLERANCE = 1e-9


def clip_pairwise(probability: float) -> float:
    """Keep a pairwise probability strictly inside (0, 1)."""
    return float(min(max(probability, PROBABILITY_FLOOR), 1.0 - PROBABILITY_FLOOR))


def couple_pairwise(r: np.ndarray) -> np.ndarray:
    """Couple a pairwise probability matrix into one class distribution.

    ``r[i, j]`` estimates ``P(y = i | y in {i, j})``; the diagonal is ignored.
    The result minimizes ``sum_i sum_{j != i} (r[j, i] p_i - r[i, j] p_j)^2``
    over the simplex, found by solving

        [Q  1] [p]   [0]
        [1' 0] [b] = [1],   Q_ii = sum_{s != i} r[s, i]^2,  Q_ij = -r[j, i] r[i, j]

    Raises:
        InvalidPairwiseMatrixError: If ``r`` is not square, has entries outside
            (0, 1) or violates ``r[i, j] + r[j, i] = 1``
    """
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] < 1:
        raise InvalidPairwiseMatrixError(
            f"Pairwise matrix must be square, got shape {r.shape}"
        )
    k = r.shape[0]
    if k == 1:
        return np.ones(1)

    off_diagonal = ~np.eye(k, dtype=bool)
    # Diagonal entries carry no information and are never checked.
    values = r[off_diagonal]
    if not np.all(np.isfinite(values)) or np.any(values <= 0) or np.any(values >= 1):
        raise InvalidPairwiseMatrixError(
            "Off-diagonal pairwise probabilities must lie strictly inside (0, 1)"
        )
    if not np.allclose((r + r.T)[off_diagonal], 1.0, rtol=0.0, atol=_SUM_TOLERANCE):
        raise InvalidPairwiseMatrixError("Pairwise probabilities are not complementary")

    if k == 2:
        return np.array([r[0, 1], r[1, 0]])

    # Minimize on the simplex through its Lagrangian system.
    Q = -(r.T * r)
    squares = np.where(off_diagonal, r, 0.0) ** 2
    np.fill_diagonal(Q, squares.sum(axis=0))

    system = np.zeros((k + 1, k + 1))
    system[:k, :k] = Q
    system[:k, k] = 1.0
    system[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    p = np.linalg.solve(system, rhs)[:k]

    # Exact solutions are non-negative; clear rounding residue.
    p = np.clip(p, 0.0, None)
    return p / p.sum()
