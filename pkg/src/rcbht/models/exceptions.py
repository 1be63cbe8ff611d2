"""Exception hierarchy for rcbht and its processing stages."""

from typing import Any


class RcbhtError(Exception):
    """Base exception for all rcbht-related errors."""

    exit_code = 1

    def __init__(
        self,
        message: str,
        suggestions: list[str] | None = None,
        context: dict[str, Any] | None = None,
        original_error: Exception | None = None,
    ) -> None:
        """Initialize rcbht error.

        Args:
            message: Human-readable error message
            suggestions: List of actionable suggestions for resolution
            context: Additional context information
            original_error: Original exception that caused this error
        """
        super().__init__(message)
        self.message = message
        self.suggestions = suggestions or []
        self.context = context or {}
        self.original_error = original_error

    def __str__(self) -> str:
        """Return formatted error message with suggestions."""
        error_msg = self.message

        if self.suggestions:
            suggestions_text = "\n".join(
                f"  • {suggestion}" for suggestion in self.suggestions
            )
            error_msg += f"\n\nSuggestions:\n{suggestions_text}"

        if self.context:
            context_text = ", ".join(
                f"{key}={value}" for key, value in self.context.items()
            )
            error_msg += f"\n\nContext: {context_text}"

        return error_msg


def _with_context(kwargs: dict[str, Any], **values: Any) -> dict[str, Any]:
    """Merge non-None values into the ``context`` keyword of an error."""
    context = dict(kwargs.get("context") or {})
    for key, value in values.items():
        if value is not None:
            context[key] = value
    kwargs["context"] = context
    return kwargs


class ConfigurationError(RcbhtError):
    """Configuration-related errors."""

    exit_code = 3

    def __init__(
        self,
        message: str = "Configuration error",
        config_file: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        """Initialize configuration error with default suggestions."""
        default_suggestions = [
            "Check your configuration file exists and is readable",
            "Verify configuration file format is valid JSON",
            "Check that overrides are within their legal ranges",
        ]
        _with_context(kwargs, config_file=config_file)
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class ValidationError(RcbhtError):
    """Data validation errors."""

    exit_code = 4

    def __init__(
        self,
        message: str = "Validation failed",
        field_name: str | None = None,
        field_value: Any | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        """Initialize validation error with field information."""
        default_suggestions = [
            "Check input data format and values",
            "Verify required fields are provided",
        ]
        _with_context(kwargs, field_name=field_name, field_value=field_value)
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class SchemaError(RcbhtError):
    """Trial schema plugin loading and lookup errors."""

    exit_code = 5

    def __init__(
        self,
        message: str = "Trial schema error",
        schema_name: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        """Initialize schema error with plugin information."""
        default_suggestions = [
            "Check the schema plugin is properly installed",
            "Check the plugin's 'rcbht.schemas' entry point",
            "Use the built-in 'canonical' schema for t,fx,fy,fz,tx,ty,tz files",
        ]
        _with_context(kwargs, schema_name=schema_name)
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


# Signal ingestion -----------------------------------------------------------


class SignalError(RcbhtError):
    """Base class for trial ingestion and generation errors."""

    def __init__(
        self,
        message: str,
        path: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        """Initialize signal error.

        Args:
            message: Human-readable error message
            path: Trial file the error refers to
            suggestions: List of actionable suggestions for resolution
        """
        _with_context(kwargs, path=path)
        super().__init__(message=message, suggestions=suggestions, **kwargs)


class MalformedRecordError(SignalError):
    """A trial row fails the declared schema."""

    exit_code = 10

    def __init__(
        self,
        message: str = "Malformed trial record",
        path: str | None = None,
        row: int | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Check every row has numeric t,fx,fy,fz,tx,ty,tz values",
            "Remove NaN/inf values or blank cells from the trial file",
            "Pass a schema descriptor if the file uses different column names",
        ]
        _with_context(kwargs, row=row)
        super().__init__(
            message, path=path, suggestions=suggestions or default_suggestions, **kwargs
        )


class NonMonotoneTimeError(SignalError):
    """Timestamps are not strictly increasing."""

    exit_code = 11

    def __init__(
        self,
        message: str = "Trial timestamps are not strictly increasing",
        path: str | None = None,
        row: int | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Sort the trial by time and drop duplicate timestamps",
            "Check the time column scale in the schema descriptor",
        ]
        _with_context(kwargs, row=row)
        super().__init__(
            message, path=path, suggestions=suggestions or default_suggestions, **kwargs
        )


class MissingTransitionsError(SignalError):
    """A trial carries no state-transition annotations."""

    exit_code = 12

    def __init__(
        self,
        message: str = "Trial has no state transitions",
        path: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Add a sidecar JSON file with a non-empty 'transitions' list",
            "Each transition is [state_id, t_start]",
        ]
        super().__init__(
            message, path=path, suggestions=suggestions or default_suggestions, **kwargs
        )


class EmptySpecError(SignalError):
    """A synthetic trial specification has no segments."""

    exit_code = 13

    def __init__(
        self,
        message: str = "Synthetic profile has no segments",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Provide at least one profile segment with a duration"]
        super().__init__(
            message, suggestions=suggestions or default_suggestions, **kwargs
        )


# Encoding -------------------------------------------------------------------


class EncodingError(RcbhtError):
    """Base class for grammar encoding errors."""

    def __init__(
        self,
        message: str,
        axis: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        """Initialize encoding error.

        Args:
            message: Human-readable error message
            axis: Wrench axis being encoded
            suggestions: List of actionable suggestions for resolution
        """
        self.axis = axis
        _with_context(kwargs, axis=axis)
        prefix = f"[{axis}] " if axis else ""
        super().__init__(
            message=f"{prefix}{message}", suggestions=suggestions, **kwargs
        )


class InsufficientDataError(EncodingError):
    """Not enough calibration windows or slope spread."""

    exit_code = 20

    def __init__(
        self,
        message: str = "Insufficient calibration data",
        axis: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Provide more or longer calibration trials",
            "Each trial must yield at least 4 windows on every axis",
            "Calibration needs slopes of varying magnitude",
        ]
        super().__init__(
            message, axis=axis, suggestions=suggestions or default_suggestions, **kwargs
        )


class DegenerateWindowError(EncodingError):
    """A regression window has fewer than two distinct timestamps."""

    exit_code = 21

    def __init__(
        self,
        message: str = "Window has fewer than 2 distinct timestamps",
        axis: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Increase the window length", "Check trial timestamps"]
        super().__init__(
            message, axis=axis, suggestions=suggestions or default_suggestions, **kwargs
        )


class NonAdjacentError(EncodingError):
    """Two labels paired by a layer rule are not time-adjacent on one axis."""

    exit_code = 30

    def __init__(
        self,
        message: str = "Labels are not adjacent on one axis",
        axis: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Pair labels in time order from a single axis stream"]
        super().__init__(
            message, axis=axis, suggestions=suggestions or default_suggestions, **kwargs
        )


class OutOfOrderError(EncodingError):
    """A label pushed into a filter pipe precedes the pipe's tail."""

    exit_code = 31

    def __init__(
        self,
        message: str = "Label pushed out of order",
        axis: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Push labels in time order",
            "Use one pipe per (layer, axis)",
        ]
        super().__init__(
            message, axis=axis, suggestions=suggestions or default_suggestions, **kwargs
        )


# Features -------------------------------------------------------------------


class FeatureError(RcbhtError):
    """Base class for feature construction errors."""


class AllEmptyError(FeatureError):
    """Every sentence handed to resampling was empty."""

    exit_code = 40

    def __init__(
        self,
        message: str = "All sentences are empty",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Check the state segment produced labels on some axis"]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class InconsistentAlphabetError(FeatureError):
    """A symbol does not belong to its layer alphabet or layouts disagree."""

    exit_code = 41

    def __init__(
        self,
        message: str = "Symbol outside its layer alphabet",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Re-encode the corpus with the current rcbht version",
            "Check feature files were produced by 'rcbht encode'",
        ]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


# Classifier -----------------------------------------------------------------


class ClassifierError(RcbhtError):
    """Base class for SVM training and inference errors."""


class SingleClassError(ClassifierError):
    """Binary training needs at least one sample of each class."""

    exit_code = 50

    def __init__(
        self,
        message: str = "Training data contains a single class",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Provide samples of both classes"]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class NoConvergenceError(ClassifierError):
    """SMO hit its iteration cap."""

    exit_code = 51

    def __init__(
        self,
        message: str = "SMO solver did not converge",
        iterations: int | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Lower the penalty parameter C",
            "Loosen the solver tolerance",
            "Check features for extreme scales",
        ]
        _with_context(kwargs, iterations=iterations)
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class UntrainedModelError(ClassifierError):
    """Prediction requested from a model without trained machines."""

    exit_code = 52

    def __init__(
        self,
        message: str = "Model has not been trained",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Call fit() or load a model file from 'rcbht train'"]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class DegenerateTargetsError(ClassifierError):
    """Platt calibration needs validation targets of both classes."""

    exit_code = 53

    def __init__(
        self,
        message: str = "Calibration targets contain a single class",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Calibrate on a validation set holding both classes"]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class InvalidPairwiseMatrixError(ClassifierError):
    """Pairwise probability matrix violates r_ij + r_ji = 1 or (0,1) bounds."""

    exit_code = 54

    def __init__(
        self,
        message: str = "Invalid pairwise probability matrix",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Off-diagonal entries must lie strictly inside (0, 1)",
            "r[i, j] + r[j, i] must equal 1",
        ]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class TooFewSamplesPerClassError(ClassifierError):
    """Stratified folds need at least one sample per class in every fold."""

    exit_code = 55

    def __init__(
        self,
        message: str = "Too few samples per class for the requested folds",
        class_label: str | None = None,
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Reduce --folds", "Add samples of the smallest class"]
        _with_context(kwargs, class_label=class_label)
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


# Monitor --------------------------------------------------------------------


class MonitorError(RcbhtError):
    """Base class for online introspection errors."""


class ModelMismatchError(MonitorError):
    """Model metadata disagrees with the grammar being classified."""

    exit_code = 60

    def __init__(
        self,
        message: str = "Model does not match the encoded grammar",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = [
            "Retrain the model on features from the same corpus layout",
            "Check the regime, arms, and states of the model",
        ]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class EmptyTraceError(MonitorError):
    """A metric was requested over a trace with no snapshots."""

    exit_code = 61

    def __init__(
        self,
        message: str = "Inference trace is empty",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Sample at a higher rate or use longer (sub)tasks"]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )


class EmptyCorpusError(MonitorError):
    """Evaluation requested over a corpus with no trials."""

    exit_code = 62

    def __init__(
        self,
        message: str = "Corpus contains no trials",
        suggestions: list[str] | None = None,
        **kwargs: Any,
    ) -> None:
        default_suggestions = ["Check the corpus directory holds trial CSV files"]
        super().__init__(
            message=message, suggestions=suggestions or default_suggestions, **kwargs
        )
