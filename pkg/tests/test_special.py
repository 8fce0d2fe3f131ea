import cmath
import math

import pytest

from ptspec.special import (BranchAmbiguityError, BranchState, GammaPoleError,
                            gamma_real, principal_power, recip_gamma,
                            tracked_sqrt)


def test_gamma_known_values():
    assert abs(gamma_real(0.5) - math.sqrt(math.pi)) < 1e-12
    assert abs(gamma_real(4.0) - 6.0) < 1e-11
    # reflection-formula oracle for the negative argument
    oracle = math.pi / (math.sin(-2.5 * math.pi) * math.gamma(3.5))
    assert abs(gamma_real(-2.5) - oracle) < 1e-12
    assert abs(gamma_real(-2.5) - (-0.9453087205)) < 1e-9


def test_gamma_matches_library_over_range():
    x = -29.75
    while x <= 30.0:
        if x > 0 or x != math.floor(x):
            ref = math.gamma(x)
            assert abs(gamma_real(x) - ref) <= 1e-12 * abs(ref), x
        x += 0.25


def test_gamma_pole_raises():
    for x in (0.0, -1.0, -7.0):
        with pytest.raises(GammaPoleError):
            gamma_real(x)


def test_recip_gamma_total():
    assert recip_gamma(-2.0) == 0.0
    assert recip_gamma(0.0) == 0.0
    assert abs(recip_gamma(1.0) - 1.0) < 1e-14
    assert abs(recip_gamma(-1.5) - 0.4231421876) < 1e-9


def test_recip_gamma_inverse_property():
    x = -9.9
    while x <= 10.0:
        if x != math.floor(x):
            assert abs(recip_gamma(x) * gamma_real(x) - 1.0) < 1e-12
        x += 0.2


def test_gamma_duplication_identity():
    # Gamma(2x) = Gamma(x) Gamma(x+1/2) 2^(2x-1) / sqrt(pi)
    x = 0.3
    while x <= 12.0:
        lhs = gamma_real(2 * x)
        rhs = (gamma_real(x) * gamma_real(x + 0.5)
               * 2.0 ** (2 * x - 1) / math.sqrt(math.pi))
        assert abs(lhs - rhs) <= 1e-11 * abs(rhs), x
        x += 0.7


def test_principal_power_values():
    assert principal_power(1.0, 2.7) == 1.0
    # (i z)^p at z = -i is 1 for any p
    z = -1j
    for p in (1.3, 2.0, 4.5):
        assert abs(principal_power(1j * z, p) - 1.0) < 1e-14
    # Arg(-1) = pi convention puts (-1)^(1/2) at +i
    assert abs(principal_power(complex(-1.0, 0.0), 0.5) - 1j) < 1e-14


def test_principal_power_addition_off_cut():
    for w in (0.5 + 0.3j, 2.0 - 1.0j, 1.2 + 0.9j):
        for p1, p2 in ((0.4, 1.1), (1.3, 2.2)):
            lhs = principal_power(w, p1 + p2)
            rhs = principal_power(w, p1) * principal_power(w, p2)
            assert abs(lhs - rhs) < 1e-12 * abs(lhs)


def test_principal_power_zero():
    assert principal_power(0.0, 2.0) == 0.0
    with pytest.raises(ValueError):
        principal_power(0.0, -1.0)


def test_tracked_sqrt_continuity():
    val, state = tracked_sqrt(4.0, BranchState(2.0 + 0j))
    assert val == 2.0
    val, state = tracked_sqrt(4.0, BranchState(-2.1 + 0j))
    assert val == -2.0
    assert state.last_value == -2.0


def test_tracked_sqrt_square_roundtrip():
    state = BranchState(1.0 + 0j)
    for k in range(50):
        w = cmath.exp(0.3j * k) * (1.0 + 0.1 * k)
        val, state = tracked_sqrt(w, state)
        assert abs(val * val - w) <= 1e-13 * abs(w)


def test_tracked_sqrt_monodromy():
    # One loop around the simple zero of w at the origin flips the branch.
    state = BranchState(1.0 + 0j)
    first = None
    val = None
    for k in range(201):
        w = cmath.exp(2j * math.pi * k / 200)
        val, state = tracked_sqrt(w, state)
        if first is None:
            first = val
    assert abs(val + first) < 1e-12


def test_tracked_sqrt_ambiguity():
    with pytest.raises(BranchAmbiguityError):
        tracked_sqrt(1e-16 + 0j, BranchState(1.0 + 0j))
