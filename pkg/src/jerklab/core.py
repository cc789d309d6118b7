"""The quadratic jerk oscillator in first-order state-space form.

The system is the third-order ODE

    x''' = -a * x'' - x + sign * (x')**2

written as a first-order system over the state (x, xd, xdd).  ``sign`` is
-1 or +1 and selects one of the two mirror-image nonlinearities; the two
choices are related by (x, xd, xdd) -> (-x, -xd, -xdd).  For ``a`` inside an
open window around 2.03 the system has a chaotic attractor.

Everything here is a pure function over immutable values; there is no hidden
state and no randomness.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ValidationError

#: Open interval of the bifurcation parameter on which the dynamics are
#: chaotic.  Both endpoints are truncated decimals of irrational boundaries,
#: so boundary equality counts as outside.
CHAOTIC_A_LOWER = 2.0168
CHAOTIC_A_UPPER = 2.0577

#: Default bifurcation parameter: comfortably interior to the chaotic window.
DEFAULT_A = 2.03

#: Seconds of wall-clock ("circuit") time per dimensionless time unit for the
#: reference analogue realization: a 1 kOhm / 1 uF integrator stage.
DEFAULT_TIME_SCALE_S = 1.0e-3


class Sign(enum.Enum):
    """Which sign the quadratic term carries."""

    MINUS = -1.0
    PLUS = 1.0

    @property
    def factor(self) -> float:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Sign":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValidationError(
                f"sign must be 'minus' or 'plus', got {text!r}"
            ) from None


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SystemState:
    """The instantaneous triple (x, xd, xdd) = (x, x', x'')."""

    x: float
    xd: float
    xdd: float

    def __post_init__(self):
        object.__setattr__(self, "x", _require_finite("x", self.x))
        object.__setattr__(self, "xd", _require_finite("xd", self.xd))
        object.__setattr__(self, "xdd", _require_finite("xdd", self.xdd))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.xd, self.xdd)


#: Default initial state: a small kick along xdd whose forward orbit is
#: captured by the bounded attractor at the default parameters (max |x| stays
#: below 8).  Note that much smaller kicks do NOT work: from (0, 0, 0.01) the
#: orbit spirals out of the equilibrium, misses the attractor, and blows up
#: to overflow near t = 66 — see the integration tests, which pin both facts.
DEFAULT_INITIAL_STATE = SystemState(0.0, 0.0, 0.1)


@dataclass(frozen=True)
class JerkParams:
    """Model parameters.

    ``quadratic`` exists for test instrumentation only: setting it False
    removes the (x')**2 term, leaving the linear subsystem
    x''' = -a*x'' - x, which has a closed-form solution that integrator
    accuracy tests compare against.
    """

    a: float = DEFAULT_A
    sign: Sign = Sign.MINUS
    time_scale_s: float = DEFAULT_TIME_SCALE_S
    quadratic: bool = True

    def __post_init__(self):
        a = _require_finite("a", self.a)
        if a <= 0.0:
            raise ValidationError(f"a must be > 0, got {a!r}")
        object.__setattr__(self, "a", a)
        if not isinstance(self.sign, Sign):
            raise ValidationError(f"sign must be a Sign, got {self.sign!r}")
        ts = _require_finite("time_scale_s", self.time_scale_s)
        if ts <= 0.0:
            raise ValidationError(f"time_scale_s must be > 0, got {ts!r}")
        object.__setattr__(self, "time_scale_s", ts)


def jerk_rhs(state: SystemState, params: JerkParams) -> SystemState:
    """Time derivative of the state.

    Returns (x', x'', x''') packed as a :class:`SystemState`; the third
    component is the jerk  -a*xdd - x + sign*xd**2.
    """
    x, xd, xdd = state.x, state.xd, state.xdd
    jerk = -(params.a * xdd) - x
    if params.quadratic:
        jerk += params.sign.factor * (xd * xd)
    return SystemState(xd, xdd, jerk)


def in_chaotic_range(params: JerkParams) -> bool:
    """True iff the bifurcation parameter lies strictly inside the chaotic window."""
    return CHAOTIC_A_LOWER < params.a < CHAOTIC_A_UPPER


def circuit_time_scale(resistance_ohm: float, capacitance_farad: float) -> float:
    """Wall-clock seconds per dimensionless time unit for an RC integrator stage.

    One dimensionless time unit corresponds to tau = R*C seconds, so e.g.
    1 kOhm with 1 uF gives 1 ms per unit and a 0.1 s capture spans 100 units.
    """
    r = _require_finite("resistance_ohm", resistance_ohm)
    c = _require_finite("capacitance_farad", capacitance_farad)
    if r <= 0.0:
        raise ValidationError(f"resistance_ohm must be > 0, got {r!r}")
    if c <= 0.0:
        raise ValidationError(f"capacitance_farad must be > 0, got {c!r}")
    return r * c
