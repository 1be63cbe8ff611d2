"""Support vector machines, probability estimates and cross-validation."""

from .coupling import clip_pairwise, couple_pairwise
from .folds import stratified_folds
from .kernels import KernelKind, KernelSpec, default_gamma
from .multiclass import SvmClassifier, class_pairs, predict_multiclass, vote
from .persistence import ModelBundle, load_model, save_model
from .platt import PlattSigmoid, calibrate_platt
from .smo import BinaryMachine, DualSolution, dual_objective, solve_dual, train_binary
from .validation import CvCell, CvReport, c_grid, cross_validate

__all__ = [
    "BinaryMachine",
    "CvCell",
    "CvReport",
    "DualSolution",
    "KernelKind",
    "KernelSpec",
    "ModelBundle",
    "PlattSigmoid",
    "SvmClassifier",
    "c_grid",
    "calibrate_platt",
    "class_pairs",
    "clip_pairwise",
    "couple_pairwise",
    "cross_validate",
    "default_gamma",
    "dual_objective",
    "load_model",
    "predict_multiclass",
    "save_model",
    "solve_dual",
    "stratified_folds",
    "train_binary",
    "vote",
]
