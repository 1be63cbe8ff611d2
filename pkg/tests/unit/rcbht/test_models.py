"""Test rcbht core models."""

import numpy as np
import pytest

from rcbht.models import exceptions as exc
from rcbht.models.grammar import GrammarSentence, TrialGrammar
from rcbht.models.labels import (
    PAD_CODE,
    BehaviorSymbol,
    CompositionSymbol,
    Layer,
    LinearFit,
    PrimitiveLabel,
    PrimitiveSymbol,
    TaggedLabel,
)
from rcbht.models.thresholds import GradientThresholds, TaskThresholds
from rcbht.models.trial import WrenchTrial
from tests.helpers import label_run


class TestAlphabets:
    """Test layer alphabets and ordinal codes."""

    def test_alphabet_order(self):
        """Test each layer lists its symbols in their fixed order."""
        assert Layer.PRIM.alphabet == (
            "PIMP", "BPOS", "MPOS", "SPOS", "CONST", "SNEG", "MNEG", "BNEG", "NIMP"
        )
        assert Layer.MC.alphabet == tuple(s.value for s in CompositionSymbol)
        assert Layer.LLB.alphabet == (
            "PUSH", "PULL", "FIXED", "CONTACT", "ALIGNMENT", "SHIFT", "NOISE"
        )

    def test_codes_are_one_based(self):
        """Test codes start at 1 and 0 decodes to padding."""
        assert Layer.LLB.code("PUSH") == 1
        assert Layer.LLB.code("NOISE") == 7
        assert Layer.LLB.decode(PAD_CODE) is None
        assert Layer.MC.decode(4) == "CONSTANT"

    def test_codes_round_trip(self):
        """Test every symbol decodes back from its code."""
        for layer in Layer:
            for symbol in layer.alphabet:
                assert layer.decode(layer.code(symbol)) == symbol

    def test_foreign_symbol(self):
        """Test a symbol of another layer has no code."""
        with pytest.raises(exc.InconsistentAlphabetError) as exc_info:
            Layer.PRIM.code("PUSH")
        assert exc_info.value.exit_code == 41

    def test_code_out_of_range(self):
        """Test codes past the alphabet are rejected."""
        with pytest.raises(exc.InconsistentAlphabetError):
            Layer.MC.decode(7)

    def test_neutral_symbols(self):
        """Test empty sentences are filled with the constant-like symbol."""
        assert Layer.PRIM.neutral == "CONST"
        assert Layer.MC.neutral == "CONSTANT"
        assert Layer.LLB.neutral == "FIXED"

    def test_primitive_predicates(self):
        """Test sign and impulse predicates."""
        assert PrimitiveSymbol.MPOS.is_positive
        assert not PrimitiveSymbol.PIMP.is_positive
        assert PrimitiveSymbol.BNEG.is_negative
        assert PrimitiveSymbol.NIMP.is_impulse
        assert PrimitiveSymbol.CONST.negated() is PrimitiveSymbol.CONST
        assert PrimitiveSymbol.SPOS.negated() is PrimitiveSymbol.SNEG


class TestTaggedLabel:
    """Test tagged label validation and merging."""

    def test_enum_symbol_is_stored_plain(self):
        """Test enum symbols are normalized to their string value."""
        label = TaggedLabel(Layer.LLB, BehaviorSymbol.PUSH, 0.0, 1.0, 2.0, "fz")

        assert label.symbol == "PUSH"
        assert label.duration == 1.0

    def test_symbol_must_match_layer(self):
        """Test a symbol from another layer is rejected."""
        with pytest.raises(exc.InconsistentAlphabetError):
            TaggedLabel(Layer.MC, "PUSH", 0.0, 1.0, 0.0, "fx")

    def test_span_must_be_positive(self):
        """Test an empty span is rejected."""
        with pytest.raises(exc.ValidationError):
            TaggedLabel(Layer.PRIM, "CONST", 1.0, 1.0, 0.0, "fx")

    def test_unknown_axis(self):
        """Test axes outside the wrench are rejected."""
        with pytest.raises(exc.ValidationError):
            TaggedLabel(Layer.PRIM, "CONST", 0.0, 1.0, 0.0, "qx")

    def test_merged_with(self):
        """Test merging keeps the symbol, unions spans and takes the larger amplitude."""
        first, second = label_run(["SPOS", "CONST"], amplitudes=[1.0, 4.0])

        merged = first.merged_with(second)

        assert merged.symbol == "SPOS"
        assert (merged.t_start, merged.t_end) == (0.0, 2.0)
        assert merged.amplitude == 4.0

    def test_dict_form(self):
        """Test the record form carries every field."""
        (label,) = label_run(["CONST"], axis="ty")

        data = label.to_dict()

        assert set(data) == {"layer", "axis", "symbol", "t_start", "t_end", "amplitude"}
        assert TaggedLabel.from_dict(data) == label

    def test_primitive_label_from_fit(self):
        """Test primitive labels carry their fit and slope."""
        fit = LinearFit(
            slope=-2.0, intercept=0.0, r2=1.0, t_start=0.0, t_end=0.5,
            amplitude=1.0, mean_value=-0.5,
        )

        label = PrimitiveLabel.from_fit(PrimitiveSymbol.MNEG, fit, "tx")

        assert label.symbol == "MNEG"
        assert label.amplitude == 1.0
        assert label.to_dict()["slope"] == -2.0
        assert type(label.as_tagged()) is TaggedLabel
        assert "slope" not in label.as_tagged().to_dict()

    def test_fit_validation(self):
        """Test fits need a positive span and r2 in [0, 1]."""
        with pytest.raises(exc.ValidationError):
            LinearFit(1.0, 0.0, 1.5, 0.0, 1.0, 1.0, 0.0)
        with pytest.raises(exc.ValidationError):
            LinearFit(1.0, 0.0, 0.5, 1.0, 1.0, 0.0, 0.0)


class TestThresholds:
    """Test gradient threshold documents."""

    def test_ordering_enforced(self):
        """Test cuts must strictly increase from eps_const."""
        with pytest.raises(exc.ValidationError):
            GradientThresholds(eps_const=0.1, cut_small=0.1, cut_medium=1.0, cut_large=2.0)
        with pytest.raises(exc.ValidationError):
            GradientThresholds(eps_const=0.0, cut_small=0.5, cut_medium=1.0, cut_large=2.0)

    def test_non_finite_rejected(self):
        """Test infinite cuts are rejected."""
        with pytest.raises(exc.ValidationError):
            GradientThresholds(0.1, 0.5, 1.0, float("inf"))

    def test_save_and_load(self, unit_thresholds, tmp_path):
        """Test a task document survives a save and load."""
        path = tmp_path / "task.json"

        unit_thresholds.save(path)

        assert TaskThresholds.load(path) == unit_thresholds

    def test_missing_axes(self, unit_gradients):
        """Test a document must cover all six axes."""
        with pytest.raises(exc.ConfigurationError) as exc_info:
            TaskThresholds.from_dict({"axes": {"fx": unit_gradients.to_dict()}})
        assert "fy" in exc_info.value.message
        assert exc_info.value.exit_code == 3

    def test_malformed_document(self):
        """Test a document without axes is a configuration error."""
        with pytest.raises(exc.ConfigurationError):
            TaskThresholds.from_dict({"task": "x"})


class TestWrenchTrial:
    """Test trial validation."""

    def _trial(self, times, **kwargs):
        defaults = {
            "wrench": np.zeros((len(times), 6)),
            "rate_hz": 10.0,
            "transitions": (("a", 0.0),),
        }
        defaults.update(kwargs)
        return WrenchTrial(times=np.asarray(times, dtype=float), **defaults)

    def test_valid_trial(self):
        """Test a well-formed trial exposes its metadata."""
        trial = self._trial([0.0, 0.1, 0.2], transitions=(("a", 0.0), ("b", 0.1)))

        assert trial.n_samples == 3
        assert trial.state_ids == ["a", "b"]
        assert trial.outcome == "nominal"
        assert trial.sidecar()["transitions"] == [["a", 0.0], ["b", 0.1]]

    def test_non_monotone_time(self):
        """Test repeated timestamps are rejected with the offending row."""
        with pytest.raises(exc.NonMonotoneTimeError) as exc_info:
            self._trial([0.0, 0.1, 0.1])
        assert exc_info.value.context["row"] == 2
        assert exc_info.value.exit_code == 11

    def test_non_finite_sample(self):
        """Test NaN wrench values are rejected."""
        wrench = np.zeros((3, 6))
        wrench[1, 4] = np.nan

        with pytest.raises(exc.MalformedRecordError) as exc_info:
            self._trial([0.0, 0.1, 0.2], wrench=wrench)
        assert exc_info.value.context["row"] == 1

    def test_missing_transitions(self):
        """Test a trial needs at least one transition."""
        with pytest.raises(exc.MissingTransitionsError) as exc_info:
            self._trial([0.0, 0.1], transitions=())
        assert exc_info.value.exit_code == 12

    def test_transitions_out_of_range(self):
        """Test transitions after the last sample are rejected."""
        with pytest.raises(exc.ValidationError):
            self._trial([0.0, 0.1], transitions=(("a", 0.0), ("b", 5.0)))

    def test_unknown_state(self):
        """Test transitions must use declared states."""
        with pytest.raises(exc.ValidationError):
            self._trial([0.0, 0.1], states=("x",))

    def test_bad_shape(self):
        """Test the wrench must have six columns."""
        with pytest.raises(exc.MalformedRecordError):
            self._trial([0.0, 0.1], wrench=np.zeros((2, 5)))


class TestTrialGrammar:
    """Test grammar containers."""

    def test_sentence_rejects_foreign_labels(self):
        """Test a sentence only holds labels of its own layer and axis."""
        with pytest.raises(exc.InconsistentAlphabetError):
            GrammarSentence(axis="fy", layer=Layer.PRIM, labels=tuple(label_run(["CONST"])))

    def test_missing_sentence_is_empty(self):
        """Test unknown sentences read as empty."""
        grammar = TrialGrammar("t1", "right", "nominal", ["a"])

        assert len(grammar.sentence("a", Layer.LLB, "fx")) == 0

    def test_dict_round_trip(self):
        """Test a grammar survives its dict form, states in order."""
        grammar = TrialGrammar("t1", "left", "abnormal", [])
        push = tuple(label_run(["PUSH"], layer=Layer.LLB))
        contact = tuple(label_run(["CONTACT"], layer=Layer.MC, axis="fz"))
        grammar.set_sentence("b", GrammarSentence("fx", Layer.LLB, push))
        grammar.set_sentence("a", GrammarSentence("fz", Layer.MC, contact))

        restored = TrialGrammar.from_dict(grammar.to_dict())

        assert restored.states == ["b", "a"]
        assert restored.symbols() == {
            ("b", "LLB", "fx"): ("PUSH",),
            ("a", "MC", "fz"): ("CONTACT",),
        }
        assert restored.arm_id == "left"


class TestExitCodes:
    """Test every error maps to a distinct exit code."""

    @pytest.mark.parametrize(
        "error,code",
        [
            (exc.RcbhtError, 1),
            (exc.ConfigurationError, 3),
            (exc.ValidationError, 4),
            (exc.SchemaError, 5),
            (exc.MalformedRecordError, 10),
            (exc.NonMonotoneTimeError, 11),
            (exc.MissingTransitionsError, 12),
            (exc.EmptySpecError, 13),
            (exc.InsufficientDataError, 20),
            (exc.DegenerateWindowError, 21),
            (exc.NonAdjacentError, 30),
            (exc.OutOfOrderError, 31),
            (exc.AllEmptyError, 40),
            (exc.InconsistentAlphabetError, 41),
            (exc.SingleClassError, 50),
            (exc.NoConvergenceError, 51),
            (exc.UntrainedModelError, 52),
            (exc.DegenerateTargetsError, 53),
            (exc.InvalidPairwiseMatrixError, 54),
            (exc.TooFewSamplesPerClassError, 55),
            (exc.ModelMismatchError, 60),
            (exc.EmptyTraceError, 61),
            (exc.EmptyCorpusError, 62),
        ],
    )
    def test_exit_code(self, error, code):
        """Test the class-level exit code."""
        assert error.exit_code == code
        assert issubclass(error, exc.RcbhtError)

    def test_str_includes_suggestions_and_context(self):
        """Test the formatted message lists suggestions and context."""
        error = exc.RcbhtError("Boom", suggestions=["Try again"], context={"axis": "fx"})

        text = str(error)

        assert text.startswith("Boom")
        assert "• Try again" in text
        assert "axis=fx" in text
