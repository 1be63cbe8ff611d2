"""Primitive layer: straight-line fits of one axis and their gradient bands."""

import logging
from collections.abc import Iterable, Iterator, Sequence

import numpy as np

from ..models.exceptions import (
    DegenerateWindowError,
    InsufficientDataError,
    ValidationError,
)
from ..models.labels import AXES, LinearFit, PrimitiveLabel, PrimitiveSymbol
from ..models.thresholds import GradientThresholds, TaskThresholds
from ..models.trial import WrenchTrial
from ..signal.segmentation import segment_states

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_SECONDS = 0.25
MIN_CALIBRATION_WINDOWS = 4
LOW_PERCENTILE = 2.0
HIGH_PERCENTILE = 98.0

_BANDS = (
    (PrimitiveSymbol.SPOS, PrimitiveSymbol.SNEG),
    (PrimitiveSymbol.MPOS, PrimitiveSymbol.MNEG),
    (PrimitiveSymbol.BPOS, PrimitiveSymbol.BNEG),
    (PrimitiveSymbol.PIMP, PrimitiveSymbol.NIMP),
)


def window_length(
    rate_hz: float, window_seconds: float = DEFAULT_WINDOW_SECONDS
) -> int:
    """Samples per window for a sampling rate, never fewer than 2."""
    return max(2, int(round(window_seconds * rate_hz)))


def min_partial_window(window: int) -> int:
    """Smallest trailing partial window that still gets fitted."""
    return max(2, window // 2)


def iter_windows(n_samples: int, window: int) -> Iterator[tuple[int, int]]:
    """Yield ``(lo, hi)`` slices of consecutive windows over ``n_samples``.

    Full windows come first; a trailing partial window is yielded only when it
    holds at least :func:`min_partial_window` samples.
    """
    lo = 0
    while lo + window <= n_samples:
        yield lo, lo + window
        lo += window
    if n_samples - lo >= min_partial_window(window):
        yield lo, n_samples


def fit_window(
    times: Sequence[float] | np.ndarray, values: Sequence[float] | np.ndarray
) -> LinearFit:
    """Least-squares line through ``(t, value)`` pairs.

    r2 is ``1 - SS_res / SS_tot``, defined as 1 when ``SS_tot`` is 0 and
    clamped to [0, 1].

    Raises:
        DegenerateWindowError: If fewer than 2 distinct timestamps are given
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if len(t) != len(v) or len(np.unique(t)) < 2:
        raise DegenerateWindowError(context={"samples": int(len(t))})

    t_mean = t.mean()
    v_mean = v.mean()
    dt = t - t_mean
    dv = v - v_mean
    s_tt = float(np.dot(dt, dt))
    slope = float(np.dot(dt, dv)) / s_tt
    intercept = float(v_mean - slope * t_mean)

    residuals = dv - slope * dt
    ss_res = float(np.dot(residuals, residuals))
    ss_tot = float(np.dot(dv, dv))
    r2 = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))

    t_start, t_end = float(t.min()), float(t.max())
    return LinearFit(
        slope=slope,
        intercept=intercept,
        r2=r2,
        t_start=t_start,
        t_end=t_end,
        # Change of the fitted line over the window
        amplitude=abs(slope) * (t_end - t_start),
        mean_value=float(v_mean),
    )


def classify_slope(slope: float, thresholds: GradientThresholds) -> PrimitiveSymbol:
    """Gradient band of a slope; bands are closed on the larger-magnitude side."""
    magnitude = abs(slope)
    if magnitude <= thresholds.eps_const:
        return PrimitiveSymbol.CONST

    cuts = (thresholds.cut_small, thresholds.cut_medium, thresholds.cut_large)
    band = sum(1 for cut in cuts if magnitude >= cut)
    positive, negative = _BANDS[band]
    return positive if slope > 0 else negative


def classify_gradient(
    fit: LinearFit, thresholds: GradientThresholds, axis: str
) -> PrimitiveLabel:
    """Label a fit with its primitive symbol."""
    return PrimitiveLabel.from_fit(classify_slope(fit.slope, thresholds), fit, axis)


class PrimitiveStream:
    """Per-axis accumulator emitting one primitive per ``window`` samples.

    The trailing partial window is kept until :meth:`flush`, which fits it
    when it is long enough and drops it otherwise.
    """

    def __init__(self, axis: str, thresholds: GradientThresholds, window: int) -> None:
        if window < 2:
            raise ValidationError(
                "Primitive window must hold at least 2 samples",
                field_name="window",
                field_value=window,
            )
        self.axis = axis
        self.thresholds = thresholds
        self.window = window
        self._times: list[float] = []
        self._values: list[float] = []

    @property
    def pending(self) -> int:
        """Samples held in the current partial window."""
        return len(self._times)

    def push(self, t: float, value: float) -> PrimitiveLabel | None:
        """Accept one sample; return a label when it completes a window."""
        self._times.append(float(t))
        self._values.append(float(value))
        if len(self._times) < self.window:
            return None
        return self._fire()

    def extend(
        self, times: Iterable[float], values: Iterable[float]
    ) -> list[PrimitiveLabel]:
        """Push many samples and collect the emitted labels."""
        labels = []
        for t, value in zip(times, values, strict=True):
            label = self.push(t, value)
            if label is not None:
                labels.append(label)
        return labels

    def flush(self) -> PrimitiveLabel | None:
        """Fit the trailing partial window if it is long enough, then reset."""
        if len(self._times) >= min_partial_window(self.window):
            return self._fire()
        self._times.clear()
        self._values.clear()
        return None

    def _fire(self) -> PrimitiveLabel:
        fit = fit_window(self._times, self._values)
        self._times.clear()
        self._values.clear()
        return classify_gradient(fit, self.thresholds, self.axis)


def extract_primitives(
    times: np.ndarray,
    values: np.ndarray,
    axis: str,
    thresholds: GradientThresholds,
    window: int,
) -> list[PrimitiveLabel]:
    """Fixed-window primitives of one state segment of one axis."""
    return [
        classify_gradient(fit_window(times[lo:hi], values[lo:hi]), thresholds, axis)
        for lo, hi in iter_windows(len(times), window)
    ]


def segment_adaptive(
    times: np.ndarray,
    values: np.ndarray,
    axis: str,
    thresholds: GradientThresholds,
    r2_threshold: float = 0.70,
    min_samples: int = 5,
) -> list[PrimitiveLabel]:
    """Grow each segment until its fit's r2 would drop below ``r2_threshold``.

    Offline only: a segment's end depends on samples after it. A remainder
    shorter than ``min_samples`` is folded into the previous segment.
    """
    n = len(times)
    min_samples = max(2, min_samples)
    if n < 2:
        return []

    bounds: list[tuple[int, int]] = []
    lo = 0
    while lo < n:
        hi = min(n, lo + min_samples)
        # Every segment starts with min_samples points
        sums = _RunningFit()
        for i in range(lo, hi):
            sums.add(float(times[i]), float(values[i]))
        while hi < n:
            # Grow while the line still explains the samples
            sums.add(float(times[hi]), float(values[hi]))
            if sums.r2() < r2_threshold:
                break
            hi += 1
        bounds.append((lo, hi))
        lo = hi

    # Fold a short remainder into its predecessor
    if len(bounds) > 1 and bounds[-1][1] - bounds[-1][0] < min_samples:
        _, last_hi = bounds.pop()
        prev_lo, _ = bounds.pop()
        bounds.append((prev_lo, last_hi))

    labels = []
    for lo, hi in bounds:
        if hi - lo < 2:
            continue
        fit = fit_window(times[lo:hi], values[lo:hi])
        labels.append(classify_gradient(fit, thresholds, axis))
    logger.debug(f"Adaptive segmentation of {axis}: {n} samples -> {len(labels)} segments")
    return labels


class _RunningFit:
    """Running sums giving the r2 of a growing least-squares line."""

    def __init__(self) -> None:
        self.n = 0
        self.st = self.sv = self.stt = self.stv = self.svv = 0.0

    def add(self, t: float, v: float) -> None:
        self.n += 1
        self.st += t
        self.sv += v
        self.stt += t * t
        self.stv += t * v
        self.svv += v * v

    def r2(self) -> float:
        if self.n < 3:
            return 1.0
        s_tt = self.stt - self.st * self.st / self.n
        s_tv = self.stv - self.st * self.sv / self.n
        s_vv = self.svv - self.sv * self.sv / self.n
        if s_vv <= 1e-12 * max(1.0, self.svv) or s_tt <= 0:
            return 1.0
        return max(0.0, min(1.0, s_tv * s_tv / (s_tt * s_vv)))


def window_slopes(
    trial: WrenchTrial,
    axis: str,
    window: int | None = None,
    window_seconds: float = DEFAULT_WINDOW_SECONDS,
) -> np.ndarray:
    """Slopes of every fixed window of one axis, state by state."""
    size = window or window_length(trial.rate_hz, window_seconds)
    slopes = []
    for segment in segment_states(trial):
        values = segment.axis(axis)
        for lo, hi in iter_windows(segment.n_samples, size):
            slopes.append(fit_window(segment.times[lo:hi], values[lo:hi]).slope)
    return np.asarray(slopes, dtype=float)


def calibrate_gradients(
    trials: Sequence[WrenchTrial],
    axis: str,
    window: int | None = None,
    window_seconds: float = DEFAULT_WINDOW_SECONDS,
) -> GradientThresholds:
    """Calibrate one axis from the |slope| population of all windows.

    cut_large is the 98th percentile and eps_const the 2nd percentile (floored
    at 1e-3 * cut_large when that is zero). cut_small and cut_medium are the
    two inner points of the geometric progression between them.

    Raises:
        InsufficientDataError: With no trials, a trial yielding fewer than 4
            windows, or no spread between the percentiles
    """
    if not trials:
        raise InsufficientDataError("No calibration trials given", axis=axis)

    populations = []
    for trial in trials:
        slopes = window_slopes(trial, axis, window, window_seconds)
        if len(slopes) < MIN_CALIBRATION_WINDOWS:
            raise InsufficientDataError(
                f"Trial '{trial.key}' yields {len(slopes)} windows, "
                f"need {MIN_CALIBRATION_WINDOWS}",
                axis=axis,
            )
        populations.append(np.abs(slopes))

    # Pool every trial; signs mirror the cuts
    magnitudes = np.concatenate(populations)
    cut_large = float(np.percentile(magnitudes, HIGH_PERCENTILE))
    eps_const = float(np.percentile(magnitudes, LOW_PERCENTILE))
    if eps_const == 0.0:
        eps_const = 1e-3 * cut_large

    no_spread = cut_large <= eps_const or np.isclose(
        cut_large, eps_const, rtol=1e-9, atol=0.0
    )
    if cut_large <= 0.0 or no_spread:
        raise InsufficientDataError(
            f"Slope magnitudes show no spread (p2={eps_const:.6g}, p98={cut_large:.6g})",
            axis=axis,
        )

    # Geometric steps between the two percentiles
    ratio = (cut_large / eps_const) ** (1.0 / 3.0)
    thresholds = GradientThresholds(
        eps_const=eps_const,
        cut_small=eps_const * ratio,
        cut_medium=eps_const * ratio * ratio,
        cut_large=cut_large,
    )
    logger.debug(f"Calibrated {axis} from {len(magnitudes)} windows: {thresholds}")
    return thresholds


def calibrate_task(
    trials: Sequence[WrenchTrial],
    task: str = "task",
    window: int | None = None,
    window_seconds: float = DEFAULT_WINDOW_SECONDS,
) -> TaskThresholds:
    """Calibrate every axis of a task."""
    axes = {
        axis: calibrate_gradients(trials, axis, window, window_seconds) for axis in AXES
    }
    logger.info(f"Calibrated task '{task}' from {len(trials)} trials")
    return TaskThresholds(task=task, axes=axes)
