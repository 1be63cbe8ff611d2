"""Abstract trial schema interface."""

from abc import ABC, abstractmethod
from pathlib import Path

from ...models.trial import WrenchTrial


class BaseTrialSchema(ABC):
    """Abstract base class for trial file formats.

    A schema maps one on-disk layout of recorded trials onto WrenchTrial.
    Schemas are discovered through the ``rcbht.schemas`` entry-point group so
    that external data sets can ship their own reader without touching rcbht.

    Example Implementation:
        class LabLoggerSchema(BaseTrialSchema):
            @property
            def name(self) -> str:
                return "lablogger"

            @property
            def display_name(self) -> str:
                return "Lab logger TSV"

            def read(self, path: Path) -> WrenchTrial:
                ...

            def write(self, trial: WrenchTrial, path: Path) -> None:
                ...
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Schema name used on the command line (e.g. 'canonical')."""
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        """Human-readable schema name."""
        pass

    @property
    def version(self) -> str:
        """Schema version."""
        return "1.0"

    @property
    def description(self) -> str:
        """One-line description of the layout."""
        return ""

    @property
    def file_pattern(self) -> str:
        """Glob pattern matching trial files in a corpus directory."""
        return "*.csv"

    @abstractmethod
    def read(self, path: Path) -> WrenchTrial:
        """Read and validate one trial.

        Raises:
            MalformedRecordError: If a row fails the schema
            NonMonotoneTimeError: If timestamps are not strictly increasing
            MissingTransitionsError: If the trial has no transitions
        """
        pass

    @abstractmethod
    def write(self, trial: WrenchTrial, path: Path) -> None:
        """Write one trial so that ``read`` reproduces it exactly."""
        pass

    def sidecar_path(self, path: Path) -> Path:
        """Location of the metadata file accompanying a trial file."""
        return path.with_suffix(".json")

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}', version='{self.version}')"
