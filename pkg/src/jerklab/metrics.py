"""Reproducibility metrics: NRMSE scoring, reference selection, prediction
horizon, and trajectory divergence rate.

The headline score is

    nrmse(y, yhat) = sqrt(sum (y_k - yhat_k)^2) / sqrt(sum (y_k - ybar)^2)

with ``y`` the measured series and ``yhat`` the simulated one. By default
``ybar`` is the mean of the *simulated* series — an unusual normalization,
kept because it is the definition this pipeline standardizes on; the
conventional measured-mean variant is available through ``mean_from``.
A score of 0 is a perfect match; around 1 the simulation does no better
than predicting a constant mean.

Every sum here is sequential in index order with Neumaier compensation, so
repeated calls are bit-identical and the result does not depend on any
platform reduction order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .align import CommonGrid, build_common_grid, resample_linear
from .errors import (
    DegenerateDataError,
    DegenerateSeparationError,
    ValidationError,
)
from .series import TimeSeries, UniformSeries


def compensated_sum(values) -> float:
    """Neumaier-compensated sequential sum over an iterable of floats."""
    total = 0.0
    carry = 0.0
    for v in values:
        s = total + v
        if abs(total) >= abs(v):
            carry += (total - s) + v
        else:
            carry += (v - s) + total
        total = s
    return total + carry


class MeanFrom(enum.Enum):
    """Which series supplies the normalizing mean ``ybar``."""

    SIMULATED = "simulated"
    MEASURED = "measured"

    @classmethod
    def parse(cls, text: str) -> "MeanFrom":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValidationError(
                f"mean_from must be 'simulated' or 'measured', got {text!r}"
            ) from None


def _check_same_grid(measured: UniformSeries, simulated: UniformSeries):
    if len(measured) != len(simulated):
        raise ValidationError(
            f"series lengths differ: {len(measured)} vs {len(simulated)}"
        )
    if measured.t0 != simulated.t0 or measured.dt != simulated.dt:
        raise ValidationError(
            "series are not on the same grid: "
            f"(t0={measured.t0!r}, dt={measured.dt!r}) vs "
            f"(t0={simulated.t0!r}, dt={simulated.dt!r})"
        )


def _score_prefix(y: Sequence[float], yhat: Sequence[float], n: int,
                  mean_from: MeanFrom, window: int | None = None) -> float:
    mean_src = yhat if mean_from is MeanFrom.SIMULATED else y
    ybar = compensated_sum(mean_src[k] for k in range(n)) / n
    num = compensated_sum(
        (y[k] - yhat[k]) * (y[k] - yhat[k]) for k in range(n)
    )
    den = compensated_sum((y[k] - ybar) * (y[k] - ybar) for k in range(n))
    if den <= 0.0:
        where = f" in cumulative window {window}" if window is not None else ""
        raise DegenerateDataError(
            f"zero NRMSE denominator{where}: the measured samples all equal "
            f"the normalizing mean {ybar!r}",
            window=window,
        )
    return math.sqrt(num) / math.sqrt(den)


def nrmse(measured: UniformSeries, simulated: UniformSeries,
          mean_from: MeanFrom = MeanFrom.SIMULATED) -> float:
    """Full-series NRMSE of ``simulated`` against ``measured``."""
    _check_same_grid(measured, simulated)
    if len(measured) < 2:
        raise ValidationError("nrmse needs at least 2 samples")
    return _score_prefix(measured.values, simulated.values, len(measured),
                         mean_from)


@dataclass(frozen=True)
class WindowedNrmse:
    """Cumulative-prefix scores: ``scores[j]`` covers samples 1..``boundaries[j]``."""

    boundaries: tuple[int, ...]
    scores: tuple[float, ...]

    def __post_init__(self):
        bounds = tuple(int(b) for b in self.boundaries)
        scores = tuple(float(s) for s in self.scores)
        if len(bounds) != len(scores) or not bounds:
            raise ValidationError("boundaries and scores must be non-empty and equal length")
        for i in range(1, len(bounds)):
            if bounds[i] <= bounds[i - 1]:
                raise ValidationError(
                    f"boundaries must be strictly increasing, got {bounds!r}"
                )
        if bounds[0] < 1:
            raise ValidationError("boundaries are 1-based and must be >= 1")
        for s in scores:
            if not (math.isfinite(s) and s >= 0.0):
                raise ValidationError(f"scores must be finite and >= 0, got {s!r}")
        object.__setattr__(self, "boundaries", bounds)
        object.__setattr__(self, "scores", scores)


def cumulative_nrmse(measured: UniformSeries, simulated: UniformSeries,
                     n_windows: int,
                     mean_from: MeanFrom = MeanFrom.SIMULATED) -> WindowedNrmse:
    """NRMSE over ``n_windows`` growing prefixes of the series.

    Prefix ``j`` ends at sample ``round(j*N/n_windows)`` (1-based), and its
    normalizing mean is recomputed over that prefix alone. The final prefix
    is the whole series, so the last score equals :func:`nrmse` bit-exactly —
    both run through the same code path.

    Scores need not be monotone: agreement can transiently improve as phase
    drift rotates back into alignment.
    """
    _check_same_grid(measured, simulated)
    n = len(measured)
    k = int(n_windows)
    if k != n_windows or k < 1:
        raise ValidationError(f"n_windows must be an integer >= 1, got {n_windows!r}")
    if k > n:
        raise ValidationError(f"n_windows={k} exceeds series length {n}")
    if n < 2:
        raise ValidationError("cumulative nrmse needs at least 2 samples")
    boundaries = tuple(round(j * n / k) for j in range(1, k + 1))
    scores = tuple(
        _score_prefix(measured.values, simulated.values, b, mean_from, window=j)
        for j, b in enumerate(boundaries, start=1)
    )
    return WindowedNrmse(boundaries=boundaries, scores=scores)


def select_reference(scores: Mapping[Any, float]) -> Any:
    """Id of the candidate with minimal score.

    Exact ties are broken by the lexicographically smallest id (ids are
    compared as strings, so mixed-type id sets are still well ordered).
    """
    if not scores:
        raise ValidationError("need at least one candidate score")
    for cid, s in scores.items():
        if not math.isfinite(s):
            raise ValidationError(f"score for {cid!r} must be finite, got {s!r}")
    return min(scores.items(), key=lambda item: (item[1], str(item[0])))[0]


@dataclass(frozen=True)
class HorizonResult:
    """Outcome of a prediction-horizon estimate.

    ``time`` is elapsed time from the start of the grid. When ``exceeded``
    is False no prefix ever crossed the threshold and ``time`` equals the
    full span.
    """

    time: float
    exceeded: bool
    windowed: WindowedNrmse


def prediction_horizon(measured: UniformSeries, simulated: UniformSeries,
                       threshold: float, n_windows: int = 10,
                       mean_from: MeanFrom = MeanFrom.SIMULATED) -> HorizonResult:
    """How long the simulation tracks the measurement within ``threshold``.

    The cumulative-prefix scores are scanned for the first one strictly
    above ``threshold``; the horizon is the elapsed time at the end of the
    prefix just before it (0.0 when the very first prefix exceeds). If no
    prefix exceeds, the horizon is the full span, flagged ``exceeded=False``.
    """
    threshold = float(threshold)
    if not (math.isfinite(threshold) and threshold > 0.0):
        raise ValidationError(f"threshold must be > 0, got {threshold!r}")
    windowed = cumulative_nrmse(measured, simulated, n_windows, mean_from)
    dt = measured.dt
    for j, score in enumerate(windowed.scores):
        if score > threshold:
            if j == 0:
                return HorizonResult(time=0.0, exceeded=True, windowed=windowed)
            end_sample = windowed.boundaries[j - 1]
            return HorizonResult(
                time=(end_sample - 1) * dt, exceeded=True, windowed=windowed
            )
    return HorizonResult(time=measured.span, exceeded=False, windowed=windowed)


def divergence_rate(a: UniformSeries, b: UniformSeries,
                    fit_start: int, fit_end: int) -> float:
    """Least-squares slope of ln|a - b| over samples [fit_start, fit_end].

    A finite-time proxy for the largest Lyapunov exponent: positive slope
    means the two trajectories separate exponentially (chaos indicator),
    negative means they converge. Indices are 0-based and inclusive, and the
    range must hold at least 3 samples with strictly nonzero separation.
    """
    _check_same_grid(a, b)
    start, end = int(fit_start), int(fit_end)
    if start != fit_start or end != fit_end:
        raise ValidationError("fit indices must be integers")
    if start < 0 or end >= len(a):
        raise ValidationError(
            f"fit range [{start}, {end}] outside series [0, {len(a) - 1}]"
        )
    if end - start < 2:
        raise ValidationError(
            f"fit range [{start}, {end}] too short: need at least 3 samples"
        )
    logs = []
    for k in range(start, end + 1):
        d = abs(a.values[k] - b.values[k])
        if d == 0.0:
            raise DegenerateSeparationError(k)
        logs.append(math.log(d))
    times = [a.time_at(k) for k in range(start, end + 1)]
    n = len(times)
    t_mean = compensated_sum(times) / n
    l_mean = compensated_sum(logs) / n
    cov = compensated_sum(
        (times[i] - t_mean) * (logs[i] - l_mean) for i in range(n)
    )
    var = compensated_sum(
        (times[i] - t_mean) * (times[i] - t_mean) for i in range(n)
    )
    return cov / var


# ---------------------------------------------------------------------------
# Whole-comparison assembly: align every trace onto one grid, score each
# candidate, select the reference.

@dataclass(frozen=True)
class CandidateScore:
    """All scores of one candidate trace against the measured trace."""

    id: str
    full_nrmse: float
    windowed: WindowedNrmse
    horizon: HorizonResult | None = None


@dataclass(frozen=True)
class ComparisonReport:
    """A full cross-candidate comparison on one common grid."""

    grid: CommonGrid
    n_windows: int
    mean_from: MeanFrom
    candidates: tuple[CandidateScore, ...]
    reference_id: str

    def __post_init__(self):
        if not self.candidates:
            raise ValidationError("a report needs at least one candidate")
        best = min(c.full_nrmse for c in self.candidates)
        ref = next(c for c in self.candidates if c.id == self.reference_id)
        if ref.full_nrmse != best:
            raise ValidationError(
                "reference_id must attain the minimal full NRMSE"
            )

    def candidate(self, cid: str) -> CandidateScore:
        for c in self.candidates:
            if c.id == cid:
                return c
        raise ValidationError(f"no candidate named {cid!r}")


def build_comparison(measured: TimeSeries,
                     candidates: Mapping[str, TimeSeries],
                     grid_points: int = 4700,
                     n_windows: int = 10,
                     mean_from: MeanFrom = MeanFrom.SIMULATED,
                     threshold: float | None = None) -> ComparisonReport:
    """Score every candidate trace against the measured one.

    All traces are resampled onto the common grid of their domain
    intersection with ``grid_points`` samples; each candidate gets a full
    NRMSE and an ``n_windows``-prefix cumulative profile, plus a prediction
    horizon when ``threshold`` is given. Candidates are scored in sorted-id
    order (scoring is pure, so order only affects the report layout).
    """
    if not candidates:
        raise ValidationError("need at least one candidate trace")
    grid = build_common_grid([measured, *candidates.values()], grid_points)
    m = resample_linear(measured, grid)
    scored = []
    for cid in sorted(candidates):
        sim = resample_linear(candidates[cid], grid)
        windowed = cumulative_nrmse(m, sim, n_windows, mean_from)
        full = windowed.scores[-1]
        horizon = None
        if threshold is not None:
            horizon = prediction_horizon(m, sim, threshold, n_windows, mean_from)
        scored.append(CandidateScore(
            id=cid, full_nrmse=full, windowed=windowed, horizon=horizon,
        ))
    reference = select_reference({c.id: c.full_nrmse for c in scored})
    return ComparisonReport(
        grid=grid, n_windows=int(n_windows), mean_from=mean_from,
        candidates=tuple(scored), reference_id=reference,
    )
