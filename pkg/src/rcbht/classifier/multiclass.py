"""One-versus-one multi-class SVM with coupled Platt probabilities."""

import logging
from collections.abc import Sequence
from itertools import combinations
from typing import Any

import numpy as np

from ..models.exceptions import SingleClassError, UntrainedModelError, ValidationError
from .coupling import clip_pairwise, couple_pairwise
from .folds import stratified_folds
from .kernels import KernelKind, KernelSpec
from .platt import PlattSigmoid, calibrate_platt
from .smo import DEFAULT_TOLERANCE, BinaryMachine, train_binary

logger = logging.getLogger(__name__)

CALIBRATION_FOLDS = 5


def class_pairs(n_classes: int) -> list[tuple[int, int]]:
    """Class index pairs ``(i, j)`` with ``i < j`` in machine order."""
    return list(combinations(range(n_classes), 2))


def vote(decisions: np.ndarray, n_classes: int) -> int:
    """Class index elected by pairwise decisions.

    A positive decision of machine ``(i, j)`` is a vote for ``i``, anything
    else a vote for ``j``. Ties go to the largest summed decision value in
    the class's favor, then to the lowest class index.
    """
    votes = np.zeros(n_classes, dtype=np.int64)
    support = np.zeros(n_classes)
    for (i, j), value in zip(class_pairs(n_classes), decisions, strict=True):
        votes[i if value > 0 else j] += 1
        support[i] += value
        support[j] -= value
    # Ties: summed decisions, then lowest index
    leaders = np.flatnonzero(votes == votes.max())
    best = leaders[support[leaders] == support[leaders].max()]
    return int(best.min())


class SvmClassifier:
    """One-versus-one ensemble of binary SVMs over string class labels.

    Classes are sorted; machine ``(i, j)`` treats class ``i`` as +1. With
    ``probability=True`` each machine gets a Platt sigmoid fitted on internally
    cross-validated decision values, and class probabilities come from
    pairwise coupling.
    """

    def __init__(
        self,
        kernel: KernelSpec | str = "rbf",
        C: float = 1.0,
        probability: bool = True,
        tol: float = DEFAULT_TOLERANCE,
        calibration_folds: int = CALIBRATION_FOLDS,
        seed: int = 0,
    ) -> None:
        self.kernel = (
            kernel if isinstance(kernel, KernelSpec) else KernelSpec(KernelKind(kernel))
        )
        self.C = C
        self.probability = probability
        self.tol = tol
        self.calibration_folds = calibration_folds
        self.seed = seed
        self.classes_: list[str] = []
        self.machines: list[BinaryMachine] = []
        self.sigmoids: list[PlattSigmoid] = []
        self.n_features = 0

    def __repr__(self) -> str:
        return (
            f"SvmClassifier(kernel={self.kernel}, C={self.C:g}, "
            f"classes={self.classes_})"
        )

    @property
    def is_fitted(self) -> bool:
        return bool(self.machines)

    @property
    def has_probabilities(self) -> bool:
        return self.is_fitted and len(self.sigmoids) == len(self.machines)

    def fit(self, X: np.ndarray, y: Sequence[str]) -> "SvmClassifier":
        """Train one machine per class pair.

        Raises:
            SingleClassError: If ``y`` holds fewer than two classes
            NoConvergenceError: If a machine fails to converge
        """
        X = np.atleast_2d(np.asarray(X, dtype=float))
        labels = np.array([str(label) for label in y])
        if X.shape[0] != len(labels):
            raise ValidationError(
                f"X has {X.shape[0]} rows but y has {len(labels)} labels",
                field_name="y",
            )
        classes = sorted(set(labels.tolist()))
        if len(classes) < 2:
            raise SingleClassError(
                f"Need at least two classes, got {classes}",
                context={"n_samples": len(labels)},
            )

        # Every machine shares the gamma resolved from all of X
        self.kernel = self.kernel.resolved(X)
        self.classes_ = classes
        self.n_features = X.shape[1]
        self.machines = []
        self.sigmoids = []
        for i, j in class_pairs(len(classes)):
            mask = (labels == classes[i]) | (labels == classes[j])
            X_pair = X[mask]
            # The first class of a pair is +1
            y_pair = np.where(labels[mask] == classes[i], 1.0, -1.0)
            machine = train_binary(X_pair, y_pair, self.kernel, self.C, tol=self.tol)
            self.machines.append(machine)
            if self.probability:
                decisions = self._calibration_decisions(X_pair, y_pair, machine)
                self.sigmoids.append(calibrate_platt(decisions, y_pair))
            logger.debug(
                f"Trained {classes[i]} vs {classes[j]}: {machine.n_support} support "
                f"vectors, {machine.iterations} iterations"
            )
        return self

    def _calibration_decisions(
        self, X: np.ndarray, y: np.ndarray, machine: BinaryMachine
    ) -> np.ndarray:
        """Held-out decision values of one pair, or training ones for tiny pairs."""
        smallest = int(min((y > 0).sum(), (y < 0).sum()))
        if smallest < self.calibration_folds:
            logger.warning(
                f"Pair has {smallest} samples in its smaller class; calibrating "
                f"the sigmoid on training decisions"
            )
            return machine.decision_function(X)

        # Each decision comes from a machine that never saw its sample
        decisions = np.empty(len(y))
        for test in stratified_folds(y.tolist(), self.calibration_folds, self.seed):
            train = np.setdiff1d(np.arange(len(y)), test)
            fold_machine = train_binary(
                X[train], y[train], self.kernel, self.C, tol=self.tol
            )
            decisions[test] = fold_machine.decision_function(X[test])
        return decisions

    def _check_fitted(self, X: np.ndarray) -> np.ndarray:
        if not self.is_fitted:
            raise UntrainedModelError()
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.n_features:
            raise ValidationError(
                f"Model expects {self.n_features} features, got {X.shape[1]}",
                field_name="X",
            )
        return X

    def decision_values(self, X: np.ndarray) -> np.ndarray:
        """Decision values, one column per machine in :func:`class_pairs` order."""
        X = self._check_fitted(X)
        return np.column_stack([m.decision_function(X) for m in self.machines])

    def predict(self, X: np.ndarray) -> list[str]:
        """One-versus-one majority vote."""
        decisions = self.decision_values(X)
        k = len(self.classes_)
        return [self.classes_[vote(row, k)] for row in decisions]

    def pairwise_probabilities(self, decisions: np.ndarray) -> np.ndarray:
        """Matrix ``r[i, j] = P(class i | class i or j)`` for one decision row."""
        if not self.has_probabilities:
            raise UntrainedModelError(
                "Model was trained without probability estimates",
                suggestions=["Retrain with probability=True"],
            )
        k = len(self.classes_)
        r = np.full((k, k), 0.5)
        for (i, j), sigmoid, value in zip(
            class_pairs(k), self.sigmoids, decisions, strict=True
        ):
            r[i, j] = clip_pairwise(float(sigmoid(value)))
            # Complementary by construction
            r[j, i] = 1.0 - r[i, j]
        return r

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Coupled class probabilities, columns ordered as ``classes_``."""
        decisions = self.decision_values(X)
        return np.vstack(
            [couple_pairwise(self.pairwise_probabilities(row)) for row in decisions]
        )

    def score(self, X: np.ndarray, y: Sequence[str]) -> float:
        """Fraction of samples whose vote matches ``y``."""
        predicted = self.predict(X)
        return float(np.mean([p == str(t) for p, t in zip(predicted, y, strict=True)]))

    def to_dict(self) -> dict[str, Any]:
        return {
            "kernel": self.kernel.to_dict(),
            "C": self.C,
            "probability": self.probability,
            "tol": self.tol,
            "calibration_folds": self.calibration_folds,
            "seed": self.seed,
            "classes": list(self.classes_),
            "n_features": self.n_features,
            "machines": [m.to_dict() for m in self.machines],
            "sigmoids": [s.to_dict() for s in self.sigmoids],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SvmClassifier":
        model = cls(
            kernel=KernelSpec.from_dict(data["kernel"]),
            C=float(data["C"]),
            probability=bool(data.get("probability", True)),
            tol=float(data.get("tol", DEFAULT_TOLERANCE)),
            calibration_folds=int(data.get("calibration_folds", CALIBRATION_FOLDS)),
            seed=int(data.get("seed", 0)),
        )
        model.classes_ = [str(c) for c in data["classes"]]
        model.n_features = int(data["n_features"])
        model.machines = [BinaryMachine.from_dict(m) for m in data["machines"]]
        model.sigmoids = [PlattSigmoid.from_dict(s) for s in data.get("sigmoids", [])]
        if len(model.machines) != len(class_pairs(len(model.classes_))):
            raise ValidationError(
                f"Model lists {len(model.machines)} machines for "
                f"{len(model.classes_)} classes",
                field_name="machines",
            )
        return model


def predict_multiclass(model: SvmClassifier, x: np.ndarray) -> str:
    """Class label of a single feature vector by one-versus-one vote.

    Raises:
        UntrainedModelError: If ``model`` has no machines
    """
    return model.predict(np.atleast_2d(x))[0]
