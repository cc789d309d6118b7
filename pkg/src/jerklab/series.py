"""Trace containers: raw (possibly non-uniform) and uniform-grid series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ValidationError


@dataclass(frozen=True)
class SeriesMeta:
    """Provenance tag carried along with a trace."""

    source_id: str = ""
    signal: str = ""
    unit: str = ""


def _as_float_tuple(name: str, values: Iterable[float]) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    for i, v in enumerate(out):
        if not math.isfinite(v):
            raise ValidationError(f"{name}[{i}] must be finite, got {v!r}")
    return out


@dataclass(frozen=True)
class TimeSeries:
    """A raw trace: strictly increasing timestamps with one value each.

    This is what parsers produce; the grid may be non-uniform. At least two
    samples are required (a single point has no time extent to analyze).
    """

    t: tuple[float, ...]
    v: tuple[float, ...]
    meta: SeriesMeta = field(default_factory=SeriesMeta)

    def __post_init__(self):
        t = _as_float_tuple("t", self.t)
        v = _as_float_tuple("v", self.v)
        if len(t) != len(v):
            raise ValidationError(
                f"t and v must have equal length, got {len(t)} and {len(v)}"
            )
        if len(t) < 2:
            raise ValidationError(f"a series needs at least 2 samples, got {len(t)}")
        for i in range(1, len(t)):
            if t[i] <= t[i - 1]:
                raise ValidationError(
                    f"timestamps must be strictly increasing, but "
                    f"t[{i}]={t[i]!r} <= t[{i - 1}]={t[i - 1]!r}"
                )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "v", v)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def t_start(self) -> float:
        return self.t[0]

    @property
    def t_end(self) -> float:
        return self.t[-1]

    @property
    def domain(self) -> tuple[float, float]:
        return (self.t[0], self.t[-1])


@dataclass(frozen=True)
class UniformSeries:
    """A trace on a uniform grid t[k] = t0 + k*dt.

    Timestamps are *derived*, never stored: ``time_at`` computes them with the
    single multiplicative formula, so there is no accumulated-addition drift
    and two series with equal (t0, dt, length) have bit-identical grids.
    """

    t0: float
    dt: float
    values: tuple[float, ...]
    meta: SeriesMeta = field(default_factory=SeriesMeta)

    def __post_init__(self):
        t0 = float(self.t0)
        dt = float(self.dt)
        if not math.isfinite(t0):
            raise ValidationError(f"t0 must be finite, got {t0!r}")
        if not (math.isfinite(dt) and dt > 0.0):
            raise ValidationError(f"dt must be finite and > 0, got {dt!r}")
        values = _as_float_tuple("values", self.values)
        if not values:
            raise ValidationError("values must be non-empty")
        object.__setattr__(self, "t0", t0)
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def time_at(self, k: int) -> float:
        """Timestamp of sample ``k`` (0-based): t0 + k*dt."""
        if not 0 <= k < len(self.values):
            raise ValidationError(
                f"sample index {k} out of range [0, {len(self.values) - 1}]"
            )
        return self.t0 + k * self.dt

    def times(self) -> tuple[float, ...]:
        return tuple(self.t0 + k * self.dt for k in range(len(self.values)))

    @property
    def t_end(self) -> float:
        return self.t0 + (len(self.values) - 1) * self.dt

    @property
    def span(self) -> float:
        """Elapsed time covered by the series."""
        return (len(self.values) - 1) * self.dt

    def to_time_series(self) -> TimeSeries:
        """Materialize the grid into an explicit-timestamp trace."""
        if len(self.values) < 2:
            raise ValidationError(
                "cannot convert a single-sample series to a TimeSeries"
            )
        return TimeSeries(t=self.times(), v=self.values, meta=self.meta)
