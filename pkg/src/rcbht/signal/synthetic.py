"""Synthetic wrench trials from piecewise-linear profiles."""

import logging
from dataclasses import dataclass, field
from itertools import groupby

import numpy as np

from ..models.exceptions import EmptySpecError, ValidationError
from ..models.labels import AXES, PrimitiveSymbol
from ..models.thresholds import GradientThresholds
from ..models.trial import SNAP_STATES, Outcome, WrenchTrial

logger = logging.getLogger(__name__)

DEFAULT_STATE = "task"


@dataclass(frozen=True)
class ProfileSegment:
    """Constant-slope stretch of a profile; axes missing from ``slopes`` stay flat."""

    duration: float
    slopes: dict[str, float] = field(default_factory=dict)
    state_id: str | None = None

    def slope(self, axis: str) -> float:
        return float(self.slopes.get(axis, 0.0))


@dataclass(frozen=True)
class SyntheticSpec:
    """Piecewise-linear wrench profile plus noise settings.

    A segment without ``state_id`` continues the previous segment's state.
    """

    segments: tuple[ProfileSegment, ...]
    rate_hz: float = 200.0
    noise_std: float = 0.0
    seed: int = 0
    offsets: dict[str, float] = field(default_factory=dict)
    outcome: str = Outcome.NOMINAL.value
    arm_id: str = "right"
    trial_key: str = ""
    states: tuple[str, ...] | None = None


def generate_synthetic_trial(spec: SyntheticSpec) -> WrenchTrial:
    """Sample a profile at ``spec.rate_hz`` and add seeded Gaussian noise.

    Each segment gets ``round(duration * rate_hz)`` samples (at least one) at
    ``t = i / rate_hz``. Within a segment every axis is exactly linear and the
    profile is continuous across segments. The per-axis sequence of segment
    slopes, with repeats collapsed, is recorded as ground truth.

    Raises:
        EmptySpecError: If the spec has no segments
        ValidationError: On non-positive durations, rate or non-finite slopes
    """
    if not spec.segments:
        raise EmptySpecError()
    if spec.rate_hz <= 0 or spec.noise_std < 0:
        raise ValidationError(
            "rate_hz must be positive and noise_std non-negative",
            field_name="rate_hz",
            field_value=spec.rate_hz,
        )

    counts = []
    for segment in spec.segments:
        if not segment.duration > 0 or not all(
            np.isfinite(segment.slope(axis)) for axis in AXES
        ):
            raise ValidationError(
                "Profile segments need a positive duration and finite slopes",
                field_name="segments",
                field_value=segment,
            )
        counts.append(max(1, int(round(segment.duration * spec.rate_hz))))

    n_samples = sum(counts)
    times = np.arange(n_samples, dtype=float) / spec.rate_hz
    wrench = np.empty((n_samples, len(AXES)), dtype=float)
    level = np.array([float(spec.offsets.get(axis, 0.0)) for axis in AXES])

    transitions: list[tuple[str, float]] = []
    current_state: str | None = None
    start = 0
    for segment, count in zip(spec.segments, counts, strict=True):
        slopes = np.array([segment.slope(axis) for axis in AXES])
        steps = np.arange(count, dtype=float)[:, None] / spec.rate_hz
        wrench[start : start + count] = level + steps * slopes
        # The next segment starts where this one ends
        level = level + slopes * (count / spec.rate_hz)

        # Segments without a state continue the current one
        state = segment.state_id or current_state or DEFAULT_STATE
        if state != current_state:
            transitions.append((state, float(times[start])))
            current_state = state
        start += count

    if spec.noise_std > 0:
        rng = np.random.default_rng(spec.seed)
        wrench = wrench + rng.normal(0.0, spec.noise_std, size=wrench.shape)

    # Consecutive equal slopes are one primitive
    ground_truth = {
        axis: [slope for slope, _ in groupby(s.slope(axis) for s in spec.segments)]
        for axis in AXES
    }

    return WrenchTrial(
        times=times,
        wrench=wrench,
        rate_hz=spec.rate_hz,
        transitions=tuple(transitions),
        outcome=spec.outcome,
        arm_id=spec.arm_id,
        trial_key=spec.trial_key,
        states=spec.states,
        ground_truth=ground_truth,
    )


def ground_truth_symbols(
    trial: WrenchTrial, axis: str, thresholds: GradientThresholds
) -> list[str]:
    """Primitive symbols of a synthetic trial's ground-truth slopes, repeats collapsed."""
    from ..encoding.primitives import classify_slope

    if trial.ground_truth is None:
        raise ValidationError(
            "Trial carries no ground truth", suggestions=["Use a synthetic trial"]
        )
    symbols = [
        classify_slope(slope, thresholds).value for slope in trial.ground_truth[axis]
    ]
    return [symbol for symbol, _ in groupby(symbols)]


# Snap assembly ---------------------------------------------------------------

# (fraction of state duration, slopes) per sub-segment, in N/s and N·m/s.
_SNAP_PROFILES: dict[str, list[tuple[float, dict[str, float]]]] = {
    "approach": [
        (0.6, {"fx": 1.0, "fy": -1.0, "fz": -4.0, "tx": 0.2, "ty": -0.2, "tz": 0.1}),
        (0.4, {"fx": 3.0, "fy": 0.5, "fz": -12.0, "tx": 0.5, "ty": -0.5, "tz": -0.1}),
    ],
    "rotation": [
        (0.5, {"fx": -6.0, "fy": 6.0, "fz": 2.0, "tx": -1.0, "ty": 1.0, "tz": 3.0}),
        (0.5, {"fx": 6.0, "fy": -6.0, "fz": -2.0, "tx": 1.0, "ty": -1.0, "tz": -3.0}),
    ],
    "insertion": [
        (0.7, {"fx": 2.0, "fy": 2.0, "fz": -40.0, "tx": 2.0, "ty": 2.0, "tz": 0.3}),
        (0.1, {"fx": -20.0, "fy": -20.0, "fz": 300.0, "tx": -15.0, "ty": -15.0, "tz": -3.0}),
        (0.2, {"fx": 0.5, "fy": 0.5, "fz": -5.0, "tx": 0.2, "ty": 0.2, "tz": 0.0}),
    ],
    "mating": [
        (1.0, {"fx": -1.0, "fy": 1.0, "fz": 8.0, "tx": -0.3, "ty": 0.3, "tz": 0.05}),
    ],
}

_SNAP_DURATIONS = {"approach": 1.5, "rotation": 1.0, "insertion": 1.0, "mating": 1.5}

# Abnormal insertions: the snap never happens.
_JAMMED_INSERTION = [
    (0.5, {"fx": 2.0, "fy": 2.0, "fz": -40.0, "tx": 2.0, "ty": 2.0, "tz": 0.3}),
    (0.5, {"fx": 25.0, "fy": -25.0, "fz": -2.0, "tx": 8.0, "ty": -8.0, "tz": 1.5}),
]
_COLLIDING_APPROACH = [
    (0.6, {"fx": 1.0, "fy": -1.0, "fz": -4.0, "tx": 0.2, "ty": -0.2, "tz": 0.1}),
    (0.1, {"fx": 30.0, "fy": -30.0, "fz": -250.0, "tx": 10.0, "ty": -10.0, "tz": 2.0}),
    (0.3, {"fx": -3.0, "fy": 3.0, "fz": 20.0, "tx": -1.0, "ty": 1.0, "tz": -0.2}),
]


def snap_assembly_spec(
    seed: int,
    outcome: str = Outcome.NOMINAL.value,
    variant: str = "jam",
    rate_hz: float = 200.0,
    noise_std: float = 0.02,
    jitter: float = 0.1,
    trial_key: str = "",
    arm_id: str = "right",
) -> SyntheticSpec:
    """Profile of one snap-assembly trial.

    Nominal trials pass approach, rotation, insertion and mating. Abnormal
    trials either jam during insertion (``variant="jam"``) or collide on
    approach and then jam (``variant="collision"``); neither reaches mating.
    Durations and slopes are jittered by up to ``jitter`` (relative).
    """
    if Outcome(outcome) is Outcome.ABNORMAL and variant not in ("jam", "collision"):
        raise ValidationError(
            f"Unknown abnormal variant '{variant}'",
            field_name="variant",
            suggestions=["Use 'jam' or 'collision'"],
        )

    rng = np.random.default_rng(seed)
    profiles = dict(_SNAP_PROFILES)
    states: tuple[str, ...] = SNAP_STATES
    if Outcome(outcome) is Outcome.ABNORMAL:
        profiles["insertion"] = _JAMMED_INSERTION
        if variant == "collision":
            profiles["approach"] = _COLLIDING_APPROACH
        states = SNAP_STATES[:3]

    segments = []
    for state in states:
        duration = _SNAP_DURATIONS[state] * (1 + rng.uniform(-jitter, jitter))
        for index, (fraction, slopes) in enumerate(profiles[state]):
            scaled = {
                axis: slope * (1 + rng.uniform(-jitter, jitter))
                for axis, slope in slopes.items()
            }
            segments.append(
                ProfileSegment(
                    duration=duration * fraction,
                    slopes=scaled,
                    state_id=state if index == 0 else None,
                )
            )

    offsets = {axis: float(rng.normal(0.0, 0.5)) for axis in AXES}
    return SyntheticSpec(
        segments=tuple(segments),
        rate_hz=rate_hz,
        noise_std=noise_std,
        seed=seed,
        offsets=offsets,
        outcome=Outcome(outcome).value,
        arm_id=arm_id,
        trial_key=trial_key,
        states=SNAP_STATES,
    )


def generate_snap_corpus(
    n_nominal: int,
    n_abnormal: int = 0,
    seed: int = 0,
    rate_hz: float = 200.0,
    noise_std: float = 0.02,
    arms: tuple[str, ...] = ("right",),
) -> list[WrenchTrial]:
    """Seeded corpus of snap-assembly trials, nominal trials first.

    Abnormal trials alternate between the jam and collision variants. With
    several ``arms``, each trial key yields one WrenchTrial per arm.
    """
    trials = []
    plan = [(Outcome.NOMINAL.value, "jam")] * n_nominal + [
        (Outcome.ABNORMAL.value, "jam" if i % 2 == 0 else "collision")
        for i in range(n_abnormal)
    ]
    for index, (outcome, variant) in enumerate(plan):
        key = f"{outcome}-{index:03d}"
        for arm_index, arm in enumerate(arms):
            spec = snap_assembly_spec(
                seed=seed * 100_003 + index * 17 + arm_index,
                outcome=outcome,
                variant=variant,
                rate_hz=rate_hz,
                noise_std=noise_std,
                trial_key=key,
                arm_id=arm,
            )
            trials.append(generate_synthetic_trial(spec))
    logger.info(
        f"Generated {n_nominal} nominal and {n_abnormal} abnormal snap trials "
        f"for arms {list(arms)}"
    )
    return trials
