"""Test the composition and behavior layers and disjoint pairing."""

import csv
from pathlib import Path

import pytest

from rcbht.encoding.behaviors import behave, behave_symbols
from rcbht.encoding.compositions import compose, compose_symbols
from rcbht.encoding.pairing import PairBuffer, pair_labels
from rcbht.models.exceptions import NonAdjacentError
from rcbht.models.labels import (
    BehaviorSymbol,
    CompositionSymbol,
    Layer,
    PrimitiveSymbol,
)
from tests.helpers import TaggedLabelFactory, label_run


def _read_table(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


class TestCompositionTable:
    """Test compose_symbols against the full primitive pair table."""

    def test_table_is_complete(self, golden_dir):
        """Test the table covers all 81 ordered pairs."""
        rows = _read_table(golden_dir / "compositions.csv")
        pairs = {(row["first"], row["second"]) for row in rows}

        assert len(pairs) == 81
        assert pairs == {(a.value, b.value) for a in PrimitiveSymbol for b in PrimitiveSymbol}

    def test_every_pair_matches_table(self, golden_dir):
        """Test every ordered pair composes to its tabulated symbol."""
        for row in _read_table(golden_dir / "compositions.csv"):
            result = compose_symbols(row["first"], row["second"])
            assert result.value == row["composition"], (row["first"], row["second"])

    @pytest.mark.parametrize(
        "first,second,expected",
        [
            ("SPOS", "BNEG", CompositionSymbol.ADJUST),
            ("MPOS", "BPOS", CompositionSymbol.INCREASE),
            ("SNEG", "MNEG", CompositionSymbol.DECREASE),
            ("CONST", "CONST", CompositionSymbol.CONSTANT),
            ("PIMP", "SNEG", CompositionSymbol.CONTACT),
            ("NIMP", "PIMP", CompositionSymbol.CONTACT),
            ("PIMP", "PIMP", CompositionSymbol.UNSTABLE),
            ("CONST", "NIMP", CompositionSymbol.UNSTABLE),
            ("SPOS", "CONST", CompositionSymbol.UNSTABLE),
        ],
    )
    def test_representative_pairs(self, first, second, expected):
        """Test one pair from each rule."""
        assert compose_symbols(first, second) is expected

    def test_composition_is_symmetric_under_negation(self):
        """Test mirroring both gradients keeps ADJUST and CONTACT intact."""
        for a in PrimitiveSymbol:
            for b in PrimitiveSymbol:
                result = compose_symbols(a, b)
                mirrored = compose_symbols(a.negated(), b.negated())
                if result in (CompositionSymbol.ADJUST, CompositionSymbol.CONTACT):
                    assert mirrored is result

    def test_unknown_symbol_raises(self):
        """Test a symbol outside the primitive alphabet is rejected."""
        with pytest.raises(ValueError):
            compose_symbols("PUSH", "CONST")


class TestCompose:
    """Test compose on tagged labels."""

    def test_span_and_amplitude(self):
        """Test the composition spans both parts and keeps the larger amplitude."""
        first, second = label_run(
            ["SPOS", "SNEG"], durations=[0.5, 0.25], amplitudes=[2.0, 3.0]
        )

        mc = compose(first, second)

        assert mc.layer is Layer.MC
        assert mc.symbol == "ADJUST"
        assert (mc.t_start, mc.t_end) == (0.0, 0.75)
        assert mc.amplitude == 3.0
        assert mc.parts == (first, second)

    def test_self_pair(self):
        """Test a label paired with itself composes from its own symbol."""
        (label,) = label_run(["MPOS"])

        mc = compose(label, label)

        assert mc.symbol == "INCREASE"
        assert (mc.t_start, mc.t_end) == (label.t_start, label.t_end)

    def test_rejects_other_axis(self):
        """Test primitives of different axes are not adjacent."""
        first = label_run(["SPOS"], axis="fx")[0]
        second = label_run(["SPOS"], axis="fy", t0=1.0)[0]

        with pytest.raises(NonAdjacentError) as exc_info:
            compose(first, second)
        assert exc_info.value.exit_code == 30

    def test_rejects_overlap(self):
        """Test a second label starting inside the first is rejected."""
        first = TaggedLabelFactory(symbol="SPOS", t_start=0.0, t_end=1.0)
        second = TaggedLabelFactory(symbol="SPOS", t_start=0.5, t_end=1.5)

        with pytest.raises(NonAdjacentError):
            compose(first, second)

    def test_rejects_equal_but_distinct_label(self):
        """Test a copy of a label is not the label itself."""
        first = TaggedLabelFactory(symbol="SPOS", t_start=0.0, t_end=1.0)
        copy = TaggedLabelFactory(symbol="SPOS", t_start=0.0, t_end=1.0)
        assert copy == first

        with pytest.raises(NonAdjacentError):
            compose(first, copy)

    def test_rejects_wrong_layer(self):
        """Test composition labels cannot be composed again."""
        first, second = label_run(["ADJUST", "ADJUST"], layer=Layer.MC)

        with pytest.raises(NonAdjacentError):
            compose(first, second)


class TestBehaviorTable:
    """Test behave_symbols against the composition pair table."""

    def test_every_pair_matches_table(self, golden_dir):
        """Test all 36 pairs at equal amplitudes."""
        rows = _read_table(golden_dir / "behaviors.csv")

        assert len(rows) == 36
        for row in rows:
            result = behave_symbols(row["first"], row["second"], 1.0, 1.0)
            assert result.value == row["behavior"], (row["first"], row["second"])

    def test_adjust_pair_growing_is_shift(self):
        """Test ADJUST then a larger ADJUST is a SHIFT."""
        assert behave_symbols("ADJUST", "ADJUST", 1.0, 2.0) is BehaviorSymbol.SHIFT

    def test_adjust_pair_not_growing_is_alignment(self):
        """Test equal or shrinking ADJUST amplitudes give ALIGNMENT."""
        assert behave_symbols("ADJUST", "ADJUST", 2.0, 2.0) is BehaviorSymbol.ALIGNMENT
        assert behave_symbols("ADJUST", "ADJUST", 3.0, 1.0) is BehaviorSymbol.ALIGNMENT

    def test_heterogeneous_is_noise(self):
        """Test any mixed pair is NOISE."""
        for a in CompositionSymbol:
            for b in CompositionSymbol:
                if a is not b:
                    assert behave_symbols(a, b) is BehaviorSymbol.NOISE


class TestBehave:
    """Test behave on tagged compositions."""

    def test_shift_from_label_amplitudes(self):
        """Test the amplitudes of the labels decide between SHIFT and ALIGNMENT."""
        first, second = label_run(["ADJUST", "ADJUST"], layer=Layer.MC, amplitudes=[1.0, 4.0])

        llb = behave(first, second)

        assert llb.layer is Layer.LLB
        assert llb.symbol == "SHIFT"
        assert llb.amplitude == 4.0
        assert (llb.t_start, llb.t_end) == (0.0, 2.0)

    def test_rejects_primitives(self):
        """Test behave needs composition labels."""
        first, second = label_run(["SPOS", "SPOS"])

        with pytest.raises(NonAdjacentError):
            behave(first, second)


class TestPairing:
    """Test disjoint consecutive pairing."""

    def test_even_count(self):
        """Test labels pair as (1, 2), (3, 4)."""
        labels = label_run(["SPOS", "SNEG", "CONST", "CONST"])

        paired = pair_labels(labels, compose)

        assert [p.symbol for p in paired] == ["ADJUST", "CONSTANT"]
        assert [p.t_start for p in paired] == [0.0, 2.0]

    def test_odd_trailing_label_pairs_with_itself(self):
        """Test the last of an odd run is paired with itself."""
        labels = label_run(["SPOS", "SNEG", "BNEG"])

        paired = pair_labels(labels, compose)

        assert [p.symbol for p in paired] == ["ADJUST", "DECREASE"]
        assert paired[-1].parts == (labels[2], labels[2])

    def test_empty(self):
        """Test no labels give no pairs."""
        assert pair_labels([], compose) == []

    def test_buffer_matches_batch(self):
        """Test streaming pairing yields the same labels as batch pairing."""
        labels = label_run(["SPOS", "SNEG", "CONST", "CONST", "PIMP"])
        buffer = PairBuffer(compose)

        streamed = [out for label in labels if (out := buffer.push(label)) is not None]
        assert buffer.holding
        tail = buffer.flush()

        assert tail is not None
        assert [*streamed, tail] == pair_labels(labels, compose)
        assert not buffer.holding
        assert buffer.flush() is None
