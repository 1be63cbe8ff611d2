"""Low-level behavior layer: ordered motion composition pairs."""

from ..models.labels import (
    BehaviorSymbol,
    CompositionSymbol,
    Layer,
    LowLevelBehavior,
    TaggedLabel,
)
from .compositions import check_adjacent

_HOMOGENEOUS = {
    CompositionSymbol.INCREASE: BehaviorSymbol.PUSH,
    CompositionSymbol.DECREASE: BehaviorSymbol.PULL,
    CompositionSymbol.CONSTANT: BehaviorSymbol.FIXED,
    CompositionSymbol.CONTACT: BehaviorSymbol.CONTACT,
}


def behave_symbols(
    first: str,
    second: str,
    first_amplitude: float = 0.0,
    second_amplitude: float = 0.0,
) -> BehaviorSymbol:
    """Behavior symbol of an ordered composition symbol pair.

    Two ADJUSTs are a SHIFT when the second has the larger amplitude and an
    ALIGNMENT otherwise. Heterogeneous pairs are NOISE.
    """
    a, b = CompositionSymbol(first), CompositionSymbol(second)
    if a is not b:
        return BehaviorSymbol.NOISE
    if a is CompositionSymbol.ADJUST:
        if second_amplitude > first_amplitude:
            return BehaviorSymbol.SHIFT
        return BehaviorSymbol.ALIGNMENT
    # Two UNSTABLEs are NOISE
    return _HOMOGENEOUS.get(a, BehaviorSymbol.NOISE)


def behave(first: TaggedLabel, second: TaggedLabel) -> LowLevelBehavior:
    """Classify two adjacent motion compositions of one axis.

    Raises:
        NonAdjacentError: If the compositions are not adjacent on one axis
    """
    check_adjacent(first, second, Layer.MC)
    return LowLevelBehavior(
        layer=Layer.LLB,
        symbol=behave_symbols(
            first.symbol, second.symbol, first.amplitude, second.amplitude
        ),
        t_start=first.t_start,
        t_end=second.t_end,
        amplitude=max(first.amplitude, second.amplitude),
        axis=first.axis,
        parts=(first, second),
    )
