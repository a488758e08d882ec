import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from bspec.errors import InvalidArgument
from bspec.exact import LambdaParam
from bspec.oracle import decompose_zero
from bspec.transform import (
    EvalParams,
    Enclosure,
    default_precision,
    functional_equation_residual,
    moment,
    moment_series,
    moment_series_check,
    nu_hat,
)

F = Fraction
LAM = LambdaParam(3, 4)


def direct_product(t, lam, terms=400, dps=40):
    """Plain high-precision truncated product, no interval arithmetic."""
    with mpmath.workdps(dps):
        t = mpmath.mpf(t.numerator) / t.denominator if isinstance(t, Fraction) else mpmath.mpf(t)
        lam = mpmath.mpf(lam.a) / lam.b
        p = mpmath.mpf(1)
        for n in range(terms):
            p *= mpmath.cos(2 * mpmath.pi * lam**n * t)
        return float(p)


def cumulant_moment(k, lam):
    """m_2, m_4, m_6 of sum eps_n lam^n from Rademacher cumulants."""
    lam = Fraction(lam.a, lam.b)
    k2 = 1 / (1 - lam**2)
    k4 = -2 / (1 - lam**4)
    k6 = 16 / (1 - lam**6)
    return {2: k2, 4: k4 + 3 * k2**2, 6: k6 + 15 * k4 * k2 + 15 * k2**3}[k]


def test_nu_hat_at_zero():
    enc = nu_hat(0, LAM)
    assert 1.0 in enc
    assert enc.width <= 1e-12


def test_nu_hat_at_one_third_vanishes():
    enc = nu_hat(F(1, 3), LAM)
    assert 0.0 in enc
    assert abs(enc.lo) <= 1e-9 and abs(enc.hi) <= 1e-9


def test_nu_hat_point_one_against_moment_series():
    enc = nu_hat(0.1, LAM)
    assert enc.width <= 1e-6
    assert abs(enc.mid - float(moment_series(0.1, LAM, 20))) <= 1e-6


@pytest.mark.parametrize("t", [0.1, 0.37, F(5, 7), 1.9, F(-22, 9), 13.25, F(997, 729)])
@pytest.mark.parametrize("lam", [LAM, LambdaParam(1, 2), LambdaParam(5, 6), LambdaParam(1, 4)])
def test_enclosure_contains_direct_product(t, lam):
    enc = nu_hat(t, lam)
    ref = direct_product(t, lam)
    assert enc.lo - 1e-15 <= ref <= enc.hi + 1e-15
    assert enc.width <= 1e-12


def test_half_rule_width_is_loose_but_valid():
    enc = nu_hat(0.37, LAM, EvalParams(target_width=1.0))
    ref = direct_product(0.37, LAM)
    assert ref in enc
    assert enc.width > 1e-6


@pytest.mark.parametrize("t", [0.05, 0.37, F(7, 9), 3.3, F(-100, 27)])
def test_enclosures_nest_as_factors_increase(t):
    prev = nu_hat(t, LAM, EvalParams(min_factors=1, target_width=0.5))
    for m in (5, 10, 20, 40, 80):
        cur = nu_hat(t, LAM, EvalParams(min_factors=m, target_width=0.5))
        assert cur.lo >= prev.lo and cur.hi <= prev.hi
        prev = cur


def test_sign_semantics_on_rationals():
    rng = random.Random(3)
    for _ in range(150):
        t = F(rng.randint(-300, 300), 3 ** rng.randint(0, 4))
        if t == 0:
            continue
        enc = nu_hat(t, LAM)
        if decompose_zero(t, LAM) is not None:
            assert 0.0 in enc and max(abs(enc.lo), abs(enc.hi)) <= 1e-8
        else:
            assert enc.abs_lower() > 0


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-200, max_value=200, allow_nan=False))
def test_bounded_and_even(t):
    enc = nu_hat(t, LAM)
    assert enc.hi <= 1 + 1e-12 and enc.lo >= -1 - 1e-12
    assert enc.overlaps(nu_hat(-t, LAM))


def test_non_finite_rejected():
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(InvalidArgument):
            nu_hat(bad, LAM)


def test_eval_params_validation():
    with pytest.raises(InvalidArgument):
        EvalParams(min_factors=0)
    with pytest.raises(InvalidArgument):
        EvalParams(target_width=0)
    with pytest.raises(InvalidArgument):
        Enclosure(1.0, 0.0)


def test_precision_env_override(monkeypatch):
    monkeypatch.setenv("BSPEC_PRECISION", "200")
    assert default_precision() == 200
    assert EvalParams().precision == 200
    monkeypatch.setenv("BSPEC_PRECISION", "ten")
    with pytest.raises(InvalidArgument):
        default_precision()


def test_moment_examples():
    assert moment(0, LAM) == 1
    assert moment(1, LAM) == 0
    assert moment(2, LAM) == F(16, 7)


@pytest.mark.parametrize("lam", [LAM, LambdaParam(1, 2), LambdaParam(2, 3), LambdaParam(5, 7)])
def test_moments_match_cumulants(lam):
    for k in (2, 4, 6):
        assert moment(k, lam) == cumulant_moment(k, lam)
    assert all(moment(k, lam) == 0 for k in range(1, 16, 2))


def test_moments_match_finite_sign_enumeration():
    # sum_{n<N} eps_n lam^n over all 2^N sign patterns approaches the measure
    lam = LambdaParam(1, 2)
    N = 14
    vals = [sum((1 if mask >> n & 1 else -1) * Fraction(1, 2**n) for n in range(N))
            for mask in range(2**N)]
    for k in (2, 4):
        approx = sum(v**k for v in vals) / len(vals)
        assert abs(float(approx - moment(k, lam))) < 1e-3


def test_moment_negative_order():
    with pytest.raises(InvalidArgument):
        moment(-1, LAM)


def test_functional_equation_examples():
    assert functional_equation_residual(0, LAM) <= 1e-12
    assert functional_equation_residual(0.37, LAM, EvalParams(target_width=1e-10)) <= 1e-8
    assert functional_equation_residual(F(1, 3), LAM) <= 1e-8


def test_moment_series_examples():
    assert moment_series_check(0, LAM, 4) <= 1e-12
    assert moment_series_check(0.05, LAM, 12) <= 1e-8
    assert moment_series_check(0.1, LAM, 16) <= 1e-7


def test_moment_series_domain():
    with pytest.raises(InvalidArgument):
        moment_series_check(0.2, LAM, 16)
    with pytest.raises(InvalidArgument):
        moment_series_check(0.05, LAM, 7)
