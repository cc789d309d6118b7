"""Tests for the system definition: right-hand side, parameters, symmetry."""

from __future__ import annotations

import math
import random

import pytest

from jerklab import (
    CHAOTIC_A_LOWER,
    CHAOTIC_A_UPPER,
    DEFAULT_A,
    JerkParams,
    Sign,
    SystemState,
    ValidationError,
    circuit_time_scale,
    in_chaotic_range,
    jerk_rhs,
)


class TestJerkRhs:
    def test_origin_is_not_an_equilibrium(self):
        # J(0,0,0) = -0 - 0 - 0 = 0 ... x-feedback is -x, so the origin IS
        # a fixed point of the flow map: rhs(0,0,0) = (0, 0, 0).
        d = jerk_rhs(SystemState(0.0, 0.0, 0.0), JerkParams())
        assert d.as_tuple() == (0.0, 0.0, 0.0)

    def test_pure_displacement(self):
        # At (1, 0, 0): velocity and acceleration derivatives vanish and the
        # jerk reduces to the position feedback term alone.
        d = jerk_rhs(SystemState(1.0, 0.0, 0.0), JerkParams(a=2.0))
        assert d.as_tuple() == (0.0, 0.0, -1.0)

    def test_pure_velocity_minus(self):
        d = jerk_rhs(SystemState(0.0, 1.0, 0.0), JerkParams(a=2.0, sign=Sign.MINUS))
        assert d.as_tuple() == (1.0, 0.0, -1.0)

    def test_pure_velocity_plus(self):
        d = jerk_rhs(SystemState(0.0, 1.0, 0.0), JerkParams(a=2.0, sign=Sign.PLUS))
        assert d.as_tuple() == (1.0, 0.0, 1.0)

    def test_damping_term(self):
        d = jerk_rhs(SystemState(0.0, 0.0, 1.0), JerkParams(a=2.0))
        assert d.as_tuple() == (0.0, 1.0, -2.0)

    def test_quadratic_term_disabled(self):
        d = jerk_rhs(SystemState(0.0, 1.0, 0.0), JerkParams(a=2.0, quadratic=False))
        assert d.as_tuple() == (1.0, 0.0, 0.0)

    def test_not_odd_symmetric(self):
        # The squared-velocity term breaks odd symmetry of a single vector
        # field: negating the state does not negate the derivative.
        p = JerkParams()
        s = SystemState(0.3, 0.7, -0.2)
        d_pos = jerk_rhs(s, p)
        d_neg = jerk_rhs(SystemState(-s.x, -s.xd, -s.xdd), p)
        assert d_neg.xdd != -d_pos.xdd

    def test_mirror_pairing_between_signs(self):
        # Negating the state exactly swaps the two nonlinearity signs:
        # rhs_plus(-s) == -rhs_minus(s), bit for bit.
        rnd = random.Random(7)
        p_minus = JerkParams(a=2.03, sign=Sign.MINUS)
        p_plus = JerkParams(a=2.03, sign=Sign.PLUS)
        for _ in range(500):
            s = SystemState(rnd.uniform(-8, 8), rnd.uniform(-8, 8), rnd.uniform(-8, 8))
            d = jerk_rhs(s, p_minus)
            m = jerk_rhs(SystemState(-s.x, -s.xd, -s.xdd), p_plus)
            assert (m.x, m.xd, m.xdd) == (-d.x, -d.xd, -d.xdd)

    def test_linear_on_zero_velocity_slice(self):
        # With the velocity component pinned at zero the field is linear in
        # (x, xdd); check superposition to tight tolerance.
        rnd = random.Random(11)
        p = JerkParams(a=2.03)
        for _ in range(200):
            s1 = SystemState(rnd.uniform(-4, 4), 0.0, rnd.uniform(-4, 4))
            s2 = SystemState(rnd.uniform(-4, 4), 0.0, rnd.uniform(-4, 4))
            al, be = rnd.uniform(-2, 2), rnd.uniform(-2, 2)
            combo = SystemState(al * s1.x + be * s2.x, 0.0,
                                al * s1.xdd + be * s2.xdd)
            d1, d2, dc = jerk_rhs(s1, p), jerk_rhs(s2, p), jerk_rhs(combo, p)
            for got, want in zip(
                dc.as_tuple(),
                tuple(al * u + be * v
                      for u, v in zip(d1.as_tuple(), d2.as_tuple())),
            ):
                assert got == pytest.approx(want, abs=1e-12)


class TestJerkParams:
    def test_defaults(self):
        p = JerkParams()
        assert p.a == DEFAULT_A == 2.03
        assert p.sign is Sign.MINUS
        assert p.time_scale_s == 1e-3
        assert p.quadratic is True

    @pytest.mark.parametrize("bad_a", [0.0, -1.0, -2.03])
    def test_rejects_nonpositive_damping(self, bad_a):
        with pytest.raises(ValidationError, match="a must be > 0"):
            JerkParams(a=bad_a)

    @pytest.mark.parametrize("bad_a", [math.nan, math.inf])
    def test_rejects_nonfinite_damping(self, bad_a):
        with pytest.raises(ValidationError):
            JerkParams(a=bad_a)

    def test_rejects_nonpositive_time_scale(self):
        with pytest.raises(ValidationError):
            JerkParams(time_scale_s=0.0)

    def test_rejects_plain_number_for_sign(self):
        with pytest.raises(ValidationError):
            JerkParams(sign=-1)  # type: ignore[arg-type]


class TestSign:
    def test_factors(self):
        assert Sign.MINUS.factor == -1.0
        assert Sign.PLUS.factor == 1.0

    @pytest.mark.parametrize(
        "text,expected",
        [("minus", Sign.MINUS), ("plus", Sign.PLUS), ("MINUS", Sign.MINUS),
         ("Plus", Sign.PLUS), ("  minus  ", Sign.MINUS)],
    )
    def test_parse(self, text, expected):
        assert Sign.parse(text) is expected

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValidationError):
            Sign.parse("positive-ish")


class TestSystemState:
    def test_as_tuple(self):
        assert SystemState(1.0, 2.0, 3.0).as_tuple() == (1.0, 2.0, 3.0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_nonfinite(self, bad):
        with pytest.raises(ValidationError):
            SystemState(bad, 0.0, 0.0)


class TestChaoticRange:
    def test_default_inside(self):
        assert in_chaotic_range(JerkParams())

    @pytest.mark.parametrize("a", [2.0168, 2.0577])
    def test_endpoints_excluded(self, a):
        assert not in_chaotic_range(JerkParams(a=a))

    @pytest.mark.parametrize("a", [1.5, 2.0, 2.10, 3.0])
    def test_outside(self, a):
        assert not in_chaotic_range(JerkParams(a=a))

    def test_monotone_sweep(self):
        # Membership along increasing damping flips exactly twice:
        # out -> in at the lower edge, in -> out at the upper edge.
        n = 2001
        lo, hi = 1.9, 2.2
        flags = [
            in_chaotic_range(JerkParams(a=lo + (hi - lo) * k / (n - 1)))
            for k in range(n)
        ]
        flips = sum(1 for u, v in zip(flags, flags[1:]) if u != v)
        assert flips == 2
        assert not flags[0] and not flags[-1]
        mid_index = min(range(n), key=lambda k: abs(
            lo + (hi - lo) * k / (n - 1)
            - 0.5 * (CHAOTIC_A_LOWER + CHAOTIC_A_UPPER)))
        assert flags[mid_index]


class TestCircuitTimeScale:
    def test_unit_product(self):
        assert circuit_time_scale(1.0, 1.0) == 1.0

    def test_kilohm_microfarad(self):
        assert circuit_time_scale(1e3, 1e-6) == pytest.approx(1e-3, rel=1e-15)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            circuit_time_scale(0.0, 1e-6)
        with pytest.raises(ValidationError):
            circuit_time_scale(1e3, -1e-6)
