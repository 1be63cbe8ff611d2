"""Symbol alphabets and tagged labels for the three grammar layers."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .exceptions import InconsistentAlphabetError, ValidationError

AXES: tuple[str, ...] = ("fx", "fy", "fz", "tx", "ty", "tz")

PAD_CODE = 0


class PrimitiveSymbol(str, Enum):
    """Gradient band of a fitted window, ordered from positive impulse down."""

    PIMP = "PIMP"
    BPOS = "BPOS"
    MPOS = "MPOS"
    SPOS = "SPOS"
    CONST = "CONST"
    SNEG = "SNEG"
    MNEG = "MNEG"
    BNEG = "BNEG"
    NIMP = "NIMP"

    @property
    def is_positive(self) -> bool:
        """Small, medium or big positive gradient (impulses excluded)."""
        return self in (PrimitiveSymbol.SPOS, PrimitiveSymbol.MPOS, PrimitiveSymbol.BPOS)

    @property
    def is_negative(self) -> bool:
        """Small, medium or big negative gradient (impulses excluded)."""
        return self in (PrimitiveSymbol.SNEG, PrimitiveSymbol.MNEG, PrimitiveSymbol.BNEG)

    @property
    def is_impulse(self) -> bool:
        return self in (PrimitiveSymbol.PIMP, PrimitiveSymbol.NIMP)

    def negated(self) -> "PrimitiveSymbol":
        """Symbol of the mirrored gradient."""
        members = list(PrimitiveSymbol)
        return members[len(members) - 1 - members.index(self)]


class CompositionSymbol(str, Enum):
    """Motion composition classes of ordered primitive pairs."""

    ADJUST = "ADJUST"
    INCREASE = "INCREASE"
    DECREASE = "DECREASE"
    CONSTANT = "CONSTANT"
    CONTACT = "CONTACT"
    UNSTABLE = "UNSTABLE"


class BehaviorSymbol(str, Enum):
    """Low-level behavior classes of ordered composition pairs."""

    PUSH = "PUSH"
    PULL = "PULL"
    FIXED = "FIXED"
    CONTACT = "CONTACT"
    ALIGNMENT = "ALIGNMENT"
    SHIFT = "SHIFT"
    NOISE = "NOISE"


class Layer(str, Enum):
    """Grammar layer, lowest first."""

    PRIM = "PRIM"
    MC = "MC"
    LLB = "LLB"

    @property
    def alphabet(self) -> tuple[str, ...]:
        """Symbols of this layer in their fixed ordinal order."""
        return _ALPHABETS[self]

    @property
    def neutral(self) -> str:
        """Symbol used to fill a sentence that produced no labels."""
        return _NEUTRAL[self]

    def code(self, symbol: str) -> int:
        """Ordinal code of a symbol (1-based; 0 is the pad code).

        Raises:
            InconsistentAlphabetError: If the symbol is not in this layer
        """
        try:
            return self.alphabet.index(str(symbol)) + 1
        except ValueError:
            raise InconsistentAlphabetError(
                f"Symbol '{symbol}' is not in the {self.value} alphabet",
                context={"layer": self.value, "symbol": str(symbol)},
            ) from None

    def decode(self, code: int) -> str | None:
        """Symbol for an ordinal code, ``None`` for the pad code."""
        if code == PAD_CODE:
            return None
        if not 1 <= code <= len(self.alphabet):
            raise InconsistentAlphabetError(
                f"Code {code} is outside the {self.value} alphabet",
                context={"layer": self.value, "code": code},
            )
        return self.alphabet[code - 1]


_ALPHABETS: dict[Layer, tuple[str, ...]] = {
    Layer.PRIM: tuple(s.value for s in PrimitiveSymbol),
    Layer.MC: tuple(s.value for s in CompositionSymbol),
    Layer.LLB: tuple(s.value for s in BehaviorSymbol),
}

_NEUTRAL: dict[Layer, str] = {
    Layer.PRIM: PrimitiveSymbol.CONST.value,
    Layer.MC: CompositionSymbol.CONSTANT.value,
    Layer.LLB: BehaviorSymbol.FIXED.value,
}


def _plain(symbol: Any) -> str:
    return symbol.value if isinstance(symbol, Enum) else str(symbol)


@dataclass(frozen=True)
class LinearFit:
    """Least-squares line over one window of a single axis."""

    slope: float
    intercept: float
    r2: float
    t_start: float
    t_end: float
    amplitude: float
    mean_value: float

    def __post_init__(self) -> None:
        if not self.t_end > self.t_start:
            raise ValidationError(
                "Fit span must have t_end > t_start",
                field_name="t_end",
                field_value=self.t_end,
            )
        if not 0.0 <= self.r2 <= 1.0:
            raise ValidationError(
                "r2 must lie in [0, 1]", field_name="r2", field_value=self.r2
            )

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start


@dataclass(frozen=True)
class TaggedLabel:
    """A layer symbol with its time span, amplitude and source axis.

    The universal token flowing between pipeline stages and filter pipes.
    """

    layer: Layer
    symbol: str
    t_start: float
    t_end: float
    amplitude: float
    axis: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "layer", Layer(self.layer))
        object.__setattr__(self, "symbol", _plain(self.symbol))

        if self.symbol not in self.layer.alphabet:
            raise InconsistentAlphabetError(
                f"Symbol '{self.symbol}' is not in the {self.layer.value} alphabet",
                context={"layer": self.layer.value, "symbol": self.symbol},
            )
        if not self.t_end > self.t_start:
            raise ValidationError(
                f"Label span must have t_end > t_start, got [{self.t_start}, {self.t_end}]",
                field_name="t_end",
                field_value=self.t_end,
            )
        if self.axis not in AXES:
            raise ValidationError(
                f"Unknown axis '{self.axis}'", field_name="axis", field_value=self.axis
            )

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def merged_with(self, other: "TaggedLabel") -> "TaggedLabel":
        """Absorb ``other`` into this label.

        The result keeps this label's symbol, spans the union of both spans and
        carries the larger amplitude.
        """
        return TaggedLabel(
            layer=self.layer,
            symbol=self.symbol,
            t_start=min(self.t_start, other.t_start),
            t_end=max(self.t_end, other.t_end),
            amplitude=max(self.amplitude, other.amplitude),
            axis=self.axis,
        )

    def as_tagged(self) -> "TaggedLabel":
        """Plain TaggedLabel view without layer-specific detail."""
        return TaggedLabel(
            self.layer, self.symbol, self.t_start, self.t_end, self.amplitude, self.axis
        )

    def to_dict(self) -> dict[str, Any]:
        """Record form ``(layer, axis, symbol, t_start, t_end, amplitude)``."""
        return {
            "layer": self.layer.value,
            "axis": self.axis,
            "symbol": self.symbol,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "amplitude": self.amplitude,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TaggedLabel":
        return TaggedLabel(
            layer=Layer(data["layer"]),
            symbol=data["symbol"],
            t_start=float(data["t_start"]),
            t_end=float(data["t_end"]),
            amplitude=float(data["amplitude"]),
            axis=data["axis"],
        )


@dataclass(frozen=True)
class PrimitiveLabel(TaggedLabel):
    """Primitive label together with the fit it was classified from."""

    fit: LinearFit | None = field(default=None, compare=False)

    @classmethod
    def from_fit(
        cls, symbol: PrimitiveSymbol | str, fit: LinearFit, axis: str
    ) -> "PrimitiveLabel":
        return cls(
            layer=Layer.PRIM,
            symbol=_plain(symbol),
            t_start=fit.t_start,
            t_end=fit.t_end,
            amplitude=fit.amplitude,
            axis=axis,
            fit=fit,
        )

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        if self.fit is not None:
            data["slope"] = self.fit.slope
        return data


@dataclass(frozen=True)
class MotionComposition(TaggedLabel):
    """Composition of an ordered pair of primitives."""

    parts: tuple[TaggedLabel, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class LowLevelBehavior(TaggedLabel):
    """Behavior of an ordered pair of motion compositions."""

    parts: tuple[TaggedLabel, ...] = field(default=(), compare=False)
