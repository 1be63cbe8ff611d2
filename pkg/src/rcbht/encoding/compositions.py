"""Motion composition layer: ordered primitive pairs."""

from ..models.exceptions import NonAdjacentError
from ..models.labels import (
    CompositionSymbol,
    Layer,
    MotionComposition,
    PrimitiveSymbol,
    TaggedLabel,
)


def compose_symbols(first: str, second: str) -> CompositionSymbol:
    """Composition symbol of an ordered primitive symbol pair.

    First matching rule wins: an impulse next to a graded gradient, or two
    opposite impulses, is CONTACT; opposite graded gradients ADJUST; two
    positive gradients INCREASE; two negative gradients DECREASE; two CONST
    are CONSTANT; everything else is UNSTABLE.
    """
    a, b = PrimitiveSymbol(first), PrimitiveSymbol(second)
    a_graded = a.is_positive or a.is_negative
    b_graded = b.is_positive or b.is_negative

    if (a.is_impulse and b_graded) or (b.is_impulse and a_graded):
        return CompositionSymbol.CONTACT
    if {a, b} == {PrimitiveSymbol.PIMP, PrimitiveSymbol.NIMP}:
        return CompositionSymbol.CONTACT
    if (a.is_positive and b.is_negative) or (a.is_negative and b.is_positive):
        return CompositionSymbol.ADJUST
    if a.is_positive and b.is_positive:
        return CompositionSymbol.INCREASE
    if a.is_negative and b.is_negative:
        return CompositionSymbol.DECREASE
    if a is PrimitiveSymbol.CONST and b is PrimitiveSymbol.CONST:
        return CompositionSymbol.CONSTANT
    return CompositionSymbol.UNSTABLE


def check_adjacent(first: TaggedLabel, second: TaggedLabel, layer: Layer) -> None:
    """Require two labels of ``layer`` on one axis with ``second`` after ``first``.

    Labels are compared by position: only the very same label may stand in
    both places, which is how an odd trailing label pairs with itself.

    Raises:
        NonAdjacentError: On mismatched axis or layer, or overlapping spans
    """
    if first.layer is not layer or second.layer is not layer:
        raise NonAdjacentError(
            f"Expected two {layer.value} labels, got "
            f"{first.layer.value} and {second.layer.value}",
            axis=first.axis,
        )
    if first.axis != second.axis:
        raise NonAdjacentError(
            f"Labels come from different axes ({first.axis}, {second.axis})",
            axis=first.axis,
        )
    if second is not first and second.t_start < first.t_end:
        raise NonAdjacentError(
            f"Second label starts at {second.t_start} before the first ends at "
            f"{first.t_end}",
            axis=first.axis,
        )


def compose(first: TaggedLabel, second: TaggedLabel) -> MotionComposition:
    """Compose two adjacent primitives of one axis.

    Raises:
        NonAdjacentError: If the primitives are not adjacent on one axis
    """
    check_adjacent(first, second, Layer.PRIM)
    return MotionComposition(
        layer=Layer.MC,
        symbol=compose_symbols(first.symbol, second.symbol),
        t_start=first.t_start,
        t_end=second.t_end,
        amplitude=max(first.amplitude, second.amplitude),
        axis=first.axis,
        parts=(first, second),
    )
