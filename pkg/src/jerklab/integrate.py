"""Deterministic integration of the jerk system onto uniform output grids.

Design rules that make runs exactly repeatable:

* every kernel evaluates its stages in one fixed, documented order;
* output timestamps are always computed as ``t0 + k*dt`` (one multiplication,
  never accumulated addition);
* a single integration is strictly sequential — no reductions whose order
  could vary between runs.

Fixed-step methods honor the requested step as a *ceiling*: each output
interval of width ``dt_out`` is covered by ``ceil(dt_out / step)`` equal
substeps, so every emitted sample is an actual solver state (no interpolation)
and the effective step never exceeds the requested one.

The adaptive method (Dormand–Prince 4(5)) uses the requested step as the
initial trial step and interpolates linearly between accepted steps onto the
output grid; higher-order dense output is deliberately out of scope.

Blow-up is never masked: if the state leaves the finite range the run aborts
with :class:`~jerklab.errors.IntegrationOverflowError` carrying the last
finite time and the partial output.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import DEFAULT_INITIAL_STATE, JerkParams, SystemState
from .errors import IntegrationOverflowError, ValidationError
from .series import SeriesMeta, UniformSeries

#: Adaptive-step controller constants (classical values).
RK45_SAFETY = 0.9
RK45_MIN_FACTOR = 0.2
RK45_MAX_FACTOR = 5.0

# Dormand–Prince 4(5) tableau. B5 is the 5th-order propagating weight row,
# B4 the embedded 4th-order row used only for the error estimate.
_DP_C = (0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0)
_DP_A = (
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0),
)
_DP_B5 = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
          11.0 / 84.0, 0.0)
_DP_B4 = (5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0,
          -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0)


class Method(enum.Enum):
    EULER = "euler"
    RK4 = "rk4"
    RK45 = "rk45"

    @classmethod
    def parse(cls, text: str) -> "Method":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValidationError(
                f"method must be one of euler, rk4, rk45; got {text!r}"
            ) from None


@dataclass(frozen=True)
class IntegratorConfig:
    """One integration request.

    ``step`` is the fixed-step ceiling for Euler/RK4 and the initial trial
    step for RK45; ``abs_tol``/``rel_tol`` apply to RK45 only.
    """

    method: Method = Method.RK4
    t_start: float = 0.0
    t_end: float = 100.0
    step: float = 1.0e-3
    abs_tol: float = 1.0e-9
    rel_tol: float = 1.0e-9
    initial_state: SystemState = DEFAULT_INITIAL_STATE
    output_points: int = 4700

    def __post_init__(self):
        if not isinstance(self.method, Method):
            raise ValidationError(f"method must be a Method, got {self.method!r}")
        for name in ("t_start", "t_end", "step", "abs_tol", "rel_tol"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise ValidationError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, val)
        if self.t_end <= self.t_start:
            raise ValidationError(
                f"t_end must exceed t_start, got [{self.t_start!r}, {self.t_end!r}]"
            )
        if self.step <= 0.0:
            raise ValidationError(f"step must be > 0, got {self.step!r}")
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValidationError("tolerances must be > 0")
        if not isinstance(self.initial_state, SystemState):
            raise ValidationError(
                f"initial_state must be a SystemState, got {self.initial_state!r}"
            )
        points = int(self.output_points)
        if points != self.output_points or points < 2:
            raise ValidationError(
                f"output_points must be an integer >= 2, got {self.output_points!r}"
            )
        object.__setattr__(self, "output_points", points)


@dataclass(frozen=True)
class SimulationResult:
    """The three state channels of one run, on a shared uniform grid."""

    x: UniformSeries
    xd: UniformSeries
    xdd: UniformSeries

    def channel(self, name: str) -> UniformSeries:
        try:
            return {"x": self.x, "xd": self.xd, "xdd": self.xdd}[name]
        except KeyError:
            raise ValidationError(
                f"channel must be one of x, xd, xdd; got {name!r}"
            ) from None


# ---------------------------------------------------------------------------
# Step kernels. These work on bare floats so the hot loop pays no container
# overhead; the public *_step operations wrap them with validated types.
# Stage order is fixed; changing it would change results in the last ulp.

def _rhs(x, xd, xdd, a, sf, quad):
    jerk = -(a * xdd) - x
    if quad:
        jerk += sf * (xd * xd)
    return xd, xdd, jerk


def _euler(x, xd, xdd, h, a, sf, quad):
    d = _rhs(x, xd, xdd, a, sf, quad)
    return x + h * d[0], xd + h * d[1], xdd + h * d[2]


def _rk4(x, xd, xdd, h, a, sf, quad):
    k1 = _rhs(x, xd, xdd, a, sf, quad)
    k2 = _rhs(x + 0.5 * h * k1[0], xd + 0.5 * h * k1[1], xdd + 0.5 * h * k1[2],
              a, sf, quad)
    k3 = _rhs(x + 0.5 * h * k2[0], xd + 0.5 * h * k2[1], xdd + 0.5 * h * k2[2],
              a, sf, quad)
    k4 = _rhs(x + h * k3[0], xd + h * k3[1], xdd + h * k3[2], a, sf, quad)
    return (
        x + h * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0,
        xd + h * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0,
        xdd + h * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]) / 6.0,
    )


def _finite3(s) -> bool:
    return math.isfinite(s[0]) and math.isfinite(s[1]) and math.isfinite(s[2])


def euler_step(state: SystemState, h: float, params: JerkParams) -> SystemState:
    """One forward-Euler step."""
    h = float(h)
    if not (math.isfinite(h) and h > 0.0):
        raise ValidationError(f"step must be > 0, got {h!r}")
    out = _euler(state.x, state.xd, state.xdd, h,
                 params.a, params.sign.factor, params.quadratic)
    if not _finite3(out):
        raise IntegrationOverflowError("euler step produced a non-finite state")
    return SystemState(*out)


def rk4_step(state: SystemState, h: float, params: JerkParams) -> SystemState:
    """One classical 4th-order Runge–Kutta step.

    The four stages are evaluated in the fixed order k1..k4 and combined as
    (k1 + 2k2 + 2k3 + k4)/6, so repeated calls are bit-identical.
    """
    h = float(h)
    if not (math.isfinite(h) and h > 0.0):
        raise ValidationError(f"step must be > 0, got {h!r}")
    a, sf, quad = params.a, params.sign.factor, params.quadratic
    x, xd, xdd = state.x, state.xd, state.xdd
    k1 = _rhs(x, xd, xdd, a, sf, quad)
    k2 = _rhs(x + 0.5 * h * k1[0], xd + 0.5 * h * k1[1], xdd + 0.5 * h * k1[2],
              a, sf, quad)
    k3 = _rhs(x + 0.5 * h * k2[0], xd + 0.5 * h * k2[1], xdd + 0.5 * h * k2[2],
              a, sf, quad)
    k4 = _rhs(x + h * k3[0], xd + h * k3[1], xdd + h * k3[2], a, sf, quad)
    for i, stage in enumerate((k1, k2, k3, k4), start=1):
        if not _finite3(stage):
            raise IntegrationOverflowError(
                f"rk4 stage k{i} is non-finite (step h={h!r})"
            )
    out = (
        x + h * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0,
        xd + h * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0,
        xdd + h * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]) / 6.0,
    )
    if not _finite3(out):
        raise IntegrationOverflowError("rk4 step produced a non-finite state")
    return SystemState(*out)


# ---------------------------------------------------------------------------

def _result(config: IntegratorConfig, dt_out: float, xs, xds, xdds,
            ) -> SimulationResult:
    source = config.method.value
    mk = lambda vals, name: UniformSeries(
        t0=config.t_start, dt=dt_out, values=tuple(vals),
        meta=SeriesMeta(source_id=source, signal=name, unit="dimensionless"),
    )
    return SimulationResult(x=mk(xs, "x"), xd=mk(xds, "xd"), xdd=mk(xdds, "xdd"))


def _partial(config: IntegratorConfig, dt_out: float, xs, xds, xdds):
    res = _result(config, dt_out, xs, xds, xdds)
    return (res.x, res.xd, res.xdd)


def _simulate_fixed(config: IntegratorConfig, params: JerkParams) -> SimulationResult:
    p = config.output_points
    dt_out = (config.t_end - config.t_start) / (p - 1)
    # Integer substep count per output interval; the 1e-12 slack keeps a
    # dt_out that is an exact multiple of the step from gaining a spare
    # substep through rounding.
    n_sub = max(1, math.ceil(dt_out / config.step - 1.0e-12))
    h = dt_out / n_sub
    kernel = _euler if config.method is Method.EULER else _rk4
    a, sf, quad = params.a, params.sign.factor, params.quadratic

    s = config.initial_state.as_tuple()
    xs = [s[0]]
    xds = [s[1]]
    xdds = [s[2]]
    for k in range(1, p):
        base = config.t_start + (k - 1) * dt_out
        for i in range(n_sub):
            s = kernel(s[0], s[1], s[2], h, a, sf, quad)
            if not _finite3(s):
                raise IntegrationOverflowError(
                    "integration diverged to non-finite values",
                    last_valid_time=base + i * h,
                    partial=_partial(config, dt_out, xs, xds, xdds),
                )
        xs.append(s[0])
        xds.append(s[1])
        xdds.append(s[2])
    return _result(config, dt_out, xs, xds, xdds)


def _simulate_rk45(config: IntegratorConfig, params: JerkParams) -> SimulationResult:
    a, sf, quad = params.a, params.sign.factor, params.quadratic
    t_end = config.t_end
    p = config.output_points
    dt_out = (t_end - config.t_start) / (p - 1)

    knot_t = [config.t_start]
    knot_y = [config.initial_state.as_tuple()]

    def dense_partial(upto_t):
        count = 1
        while count < p and config.t_start + count * dt_out <= upto_t:
            count += 1
        xs, xds, xdds = _dense(knot_t, knot_y, config.t_start, dt_out, count)
        return _partial(config, dt_out, xs, xds, xdds)

    t = config.t_start
    y = knot_y[0]
    h = min(config.step, t_end - t)
    while t < t_end:
        remaining = t_end - t
        last = h >= remaining
        h_eff = remaining if last else h

        ks = [_rhs(y[0], y[1], y[2], a, sf, quad)]
        overflow = not _finite3(ks[0])
        if not overflow:
            for row in _DP_A:
                yi = tuple(
                    y[c] + h_eff * sum(row[j] * ks[j][c] for j in range(len(row)))
                    for c in range(3)
                )
                if not _finite3(yi):
                    overflow = True
                    break
                ks.append(_rhs(yi[0], yi[1], yi[2], a, sf, quad))
        if overflow:
            raise IntegrationOverflowError(
                "integration diverged to non-finite values",
                last_valid_time=t,
                partial=dense_partial(t),
            )

        y5 = tuple(
            y[c] + h_eff * sum(_DP_B5[j] * ks[j][c] for j in range(7))
            for c in range(3)
        )
        y4 = tuple(
            y[c] + h_eff * sum(_DP_B4[j] * ks[j][c] for j in range(7))
            for c in range(3)
        )
        if not _finite3(y5) or not _finite3(y4):
            raise IntegrationOverflowError(
                "integration diverged to non-finite values",
                last_valid_time=t,
                partial=dense_partial(t),
            )
        acc = 0.0
        for c in range(3):
            scale = config.abs_tol + config.rel_tol * max(abs(y[c]), abs(y5[c]))
            ratio = (y5[c] - y4[c]) / scale
            acc += ratio * ratio
        err_norm = math.sqrt(acc / 3.0)

        if err_norm <= 1.0:
            t = t_end if last else t + h_eff
            y = y5
            knot_t.append(t)
            knot_y.append(y)

        if err_norm == 0.0:
            factor = RK45_MAX_FACTOR
        else:
            factor = RK45_SAFETY * err_norm ** -0.2
            factor = min(RK45_MAX_FACTOR, max(RK45_MIN_FACTOR, factor))
        h = h_eff * factor
        if h < 1.0e-14 * max(1.0, abs(t)):
            raise IntegrationOverflowError(
                "adaptive step size collapsed (trajectory is blowing up "
                "faster than the tolerance can follow)",
                last_valid_time=t,
                partial=dense_partial(t),
            )

    xs, xds, xdds = _dense(knot_t, knot_y, config.t_start, dt_out, p)
    return _result(config, dt_out, xs, xds, xdds)


def _dense(knot_t, knot_y, t0, dt_out, count):
    """Linear interpolation of accepted steps onto the first ``count`` grid points."""
    xs, xds, xdds = [], [], []
    j = 0
    last = len(knot_t) - 1
    for k in range(count):
        tq = t0 + k * dt_out
        while j < last - 1 and knot_t[j + 1] <= tq:
            j += 1
        ta, tb = knot_t[j], knot_t[j + 1] if j < last else knot_t[j]
        if j >= last or tq <= ta:
            ya = knot_y[j]
            xs.append(ya[0])
            xds.append(ya[1])
            xdds.append(ya[2])
            continue
        if tq >= tb:
            yb = knot_y[j + 1]
            xs.append(yb[0])
            xds.append(yb[1])
            xdds.append(yb[2])
            continue
        w = (tq - ta) / (tb - ta)
        ya, yb = knot_y[j], knot_y[j + 1]
        xs.append(ya[0] + w * (yb[0] - ya[0]))
        xds.append(ya[1] + w * (yb[1] - ya[1]))
        xdds.append(ya[2] + w * (yb[2] - ya[2]))
    return xs, xds, xdds


def simulate(config: IntegratorConfig, params: JerkParams | None = None,
             ) -> SimulationResult:
    """Integrate the jerk system and emit exactly ``output_points`` samples.

    The output grid spans [t_start, t_end] inclusive of both endpoints.
    Repeated calls with identical inputs produce bit-identical results.
    """
    if params is None:
        params = JerkParams()
    if config.method is Method.RK45:
        return _simulate_rk45(config, params)
    return _simulate_fixed(config, params)
