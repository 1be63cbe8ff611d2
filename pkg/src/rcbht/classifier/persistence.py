"""JSON model files: trained ensemble plus the metadata needed online."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..features.matrix import FeatureLayout
from ..models.exceptions import (
    ModelMismatchError,
    UntrainedModelError,
    ValidationError,
)
from ..models.labels import Layer
from ..utils.config import read_json_document, write_json_document
from .multiclass import SvmClassifier

logger = logging.getLogger(__name__)

MODEL_FORMAT = "rcbht-model"
MODEL_VERSION = 1


@dataclass
class ModelBundle:
    """A classifier with the feature layout it was trained on."""

    model: SvmClassifier
    layout: FeatureLayout | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def check_layout(self, layout: FeatureLayout) -> None:
        """Ensure features encoded with ``layout`` fit this model.

        Raises:
            ModelMismatchError: If the layouts disagree
        """
        if self.layout is not None and self.layout != layout:
            raise ModelMismatchError(
                "Feature layout differs from the one the model was trained on",
                context={
                    "model_columns": self.layout.n_features,
                    "given_columns": layout.n_features,
                },
            )
        if layout.n_features != self.model.n_features:
            raise ModelMismatchError(
                f"Model expects {self.model.n_features} features, layout has "
                f"{layout.n_features}"
            )


def _alphabets() -> dict[str, list[str]]:
    return {layer.value: list(layer.alphabet) for layer in Layer}


def save_model(
    model: SvmClassifier,
    path: Path,
    layout: FeatureLayout | None = None,
    metadata: dict[str, Any] | None = None,
) -> Path:
    """Write a trained model with its layout and symbol alphabets.

    Raises:
        UntrainedModelError: If ``model`` was never fitted
    """
    if not model.is_fitted:
        raise UntrainedModelError("Refusing to save an untrained model")
    # Check the layout against the model before anything is written
    if layout is not None:
        ModelBundle(model=model).check_layout(layout)
    document = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "alphabets": _alphabets(),
        "layout": layout.to_dict() if layout is not None else None,
        "metadata": metadata or {},
        "model": model.to_dict(),
    }
    path = Path(path)
    write_json_document(path, document)
    logger.info(f"Saved {model!r} to {path}")
    return path


def load_model(path: Path) -> ModelBundle:
    """Read a model file written by :func:`save_model`.

    Raises:
        ConfigurationError: If the file is unreadable or not JSON
        ValidationError: If it is not an rcbht model file
        ModelMismatchError: If its symbol alphabets differ from this version's
    """
    path = Path(path)
    document = read_json_document(path)
    if document.get("format") != MODEL_FORMAT:
        raise ValidationError(
            f"{path.name} is not an rcbht model file",
            field_name="format",
            field_value=document.get("format"),
            suggestions=["Train a model with 'rcbht train'"],
        )
    if document.get("version") != MODEL_VERSION:
        raise ValidationError(
            f"Unsupported model file version {document.get('version')}",
            field_name="version",
        )
    # Symbol codes must mean what they meant at training time
    if document.get("alphabets") != _alphabets():
        raise ModelMismatchError(
            "Model was trained on different symbol alphabets",
            suggestions=["Re-encode the corpus and retrain the model"],
        )

    try:
        model = SvmClassifier.from_dict(document["model"])
        layout_data = document.get("layout")
        layout = FeatureLayout.from_dict(layout_data) if layout_data else None
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(
            f"Corrupt model file {path.name}: {e}",
            original_error=e,
        ) from None

    bundle = ModelBundle(
        model=model, layout=layout, metadata=document.get("metadata", {})
    )
    if layout is not None:
        bundle.check_layout(layout)
    logger.debug(f"Loaded {model!r} from {path}")
    return bundle
