"""Certified evaluation of the Bernoulli convolution Fourier transform

    nu_hat(t) = prod_{n >= 0} cos(2 pi lambda^n t)

and exact moments of the measure.

The product is split at the first index ``N`` with ``2 pi lambda^N |t| <= 1/2``.
The head is evaluated in interval arithmetic; each tail factor satisfies
``exp(-theta^2) <= cos(theta) <= 1`` for ``|theta| <= 1``, so the tail lies in
``[exp(-S_N), 1]`` with ``S_N = (2 pi lambda^N t)^2 / (1 - lambda^2)``.  All tail
factors are positive, so the sign is carried by the head.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import to_float

from .errors import InvalidArgument
from .exact import LambdaParam, parse_rational

RealLike = Union[Fraction, int, float, str]

DEFAULT_PRECISION = 128
MOMENT_SERIES_MAX_T = 0.1


def default_precision() -> int:
    env = os.environ.get("BSPEC_PRECISION")
    if not env:
        return DEFAULT_PRECISION
    try:
        bits = int(env)
    except ValueError:
        raise InvalidArgument(f"BSPEC_PRECISION={env!r} is not an integer") from None
    if bits < 53:
        raise InvalidArgument("BSPEC_PRECISION must be at least 53 bits")
    return bits


@dataclass(frozen=True)
class EvalParams:
    min_factors: int = 1
    target_width: float = 1e-12
    precision: int = field(default_factory=default_precision)

    def __post_init__(self):
        if self.min_factors < 1:
            raise InvalidArgument("min_factors must be >= 1")
        if not self.target_width > 0:
            raise InvalidArgument("target_width must be positive")
        if self.precision < 53:
            raise InvalidArgument("precision must be at least 53 bits")


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` certified to contain the true value."""

    lo: float
    hi: float
    n_factors: int = 0

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise InvalidArgument(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def abs_lower(self) -> float:
        """Lower bound of ``|value|``: 0 when the interval meets zero."""
        if self.lo <= 0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def as_fraction(t: RealLike) -> Fraction:
    """Exact rational value of ``t``; floats convert exactly (binary value)."""
    if isinstance(t, float):
        if not math.isfinite(t):
            raise InvalidArgument(f"non-finite argument {t}")
        return Fraction(t)
    if isinstance(t, str):
        try:
            return parse_rational(t)
        except InvalidArgument:
            value = float(t)
            if not math.isfinite(value):
                raise InvalidArgument(f"non-finite argument {t}") from None
            return Fraction(t)
    return parse_rational(t)


def _ctx(precision: int) -> MPIntervalContext:
    # a private context keeps precision local to the call
    ctx = MPIntervalContext()
    ctx.prec = precision
    return ctx


def _exact(ctx, r: Fraction):
    return ctx.mpf(r.numerator) / ctx.mpf(r.denominator)


def _split_index(t: Fraction, lam: LambdaParam, params: EvalParams) -> int:
    """Float estimate of the split index; the caller verifies it rigorously."""
    if t == 0:
        return params.min_factors
    lam_f = lam.a / lam.b
    # log of 2 pi |t| without overflowing for huge frequencies
    log_arg = math.log(2 * math.pi) + math.log(abs(t.numerator)) - math.log(t.denominator)
    # tail width: 1 - exp(-S_N) <= target_width  <=  S_N <= target_width
    tw = min(params.target_width, 0.5)
    bound = min(0.5, math.sqrt(tw * (1 - lam_f * lam_f)))
    n = math.ceil((log_arg - math.log(bound)) / -math.log(lam_f))
    return max(params.min_factors, n, 0)


def _nu_hat_interval(t: Fraction, lam: LambdaParam, params: EvalParams):
    ctx = _ctx(params.precision)
    lam_iv = ctx.mpf(lam.a) / ctx.mpf(lam.b)
    theta = 2 * ctx.pi * _exact(ctx, t)
    n_split = _split_index(t, lam, params)
    head = ctx.mpf(1)
    for _ in range(n_split):
        head = head * ctx.cos(theta)
        theta = theta * lam_iv
    # theta is now 2 pi lambda^N t
    while abs(theta).b > 0.5:
        head = head * ctx.cos(theta)
        theta = theta * lam_iv
        n_split += 1
    tail_exp = theta * theta / (1 - lam_iv * lam_iv)
    tail_lo = ctx.exp(-tail_exp).a
    return head * ctx.mpf([tail_lo, 1]), n_split


def _outward(iv_value) -> tuple[float, float]:
    lo, hi = iv_value._mpi_
    return to_float(lo, rnd="f"), to_float(hi, rnd="c")


def nu_hat(t: RealLike, lam, params: EvalParams | None = None) -> Enclosure:
    """Certified enclosure of the transform at ``t``."""
    lam = LambdaParam.of(lam)
    params = params or EvalParams()
    t = as_fraction(t)
    value, n = _nu_hat_interval(t, lam, params)
    lo, hi = _outward(value)
    return Enclosure(lo, hi, n)


def _mid(t: Fraction, lam: LambdaParam, params: EvalParams):
    value, _ = _nu_hat_interval(t, lam, params)
    return value.mid


def functional_equation_residual(t: RealLike, lam, params: EvalParams | None = None) -> float:
    """``|nu_hat(t) - cos(2 pi t) nu_hat(lambda t)|`` from independent truncations."""
    lam = LambdaParam.of(lam)
    params = params or EvalParams()
    t = as_fraction(t)
    ctx = _ctx(params.precision)
    left = _mid(t, lam, params)
    right = ctx.cos(2 * ctx.pi * _exact(ctx, t)).mid * _mid(t * lam.value, lam, params)
    return float(abs(left - right).b)


@lru_cache(maxsize=64)
def _moments(a: int, b: int, k_max: int) -> tuple[Fraction, ...]:
    lam = Fraction(a, b)
    m = [Fraction(1)]
    binom = [1]
    for k in range(1, k_max + 1):
        binom = [1] + [binom[i] + binom[i + 1] for i in range(len(binom) - 1)] + [1]
        if k % 2:
            m.append(Fraction(0))
            continue
        # only j with k - j even contribute; the bracket is then 2
        s = sum(binom[j] * lam**j * m[j] for j in range(0, k, 2))
        m.append(s / (1 - lam**k))
    return tuple(m)


def moment(k: int, lam) -> Fraction:
    """Exact ``int x^k d nu``, from the self-similarity recursion

    ``m_k (1 - lambda^k) = 1/2 sum_{j<k} C(k, j) lambda^j m_j ((-1)^(k-j) + 1)``.
    """
    if k < 0:
        raise InvalidArgument("moment order must be >= 0")
    lam = LambdaParam.of(lam)
    return _moments(lam.a, lam.b, k)[k]


def moment_series(t: RealLike, lam, K: int, precision: int | None = None):
    """Partial sum ``sum_{j <= K/2} (-1)^j (2 pi t)^(2j) m_{2j} / (2j)!`` as an mpf."""
    lam = LambdaParam.of(lam)
    t = as_fraction(t)
    ctx = _ctx(precision or default_precision())
    x = 2 * ctx.pi * _exact(ctx, t)
    total = ctx.mpf(0)
    for j in range(0, K // 2 + 1):
        m = moment(2 * j, lam)
        term = (x ** (2 * j)) * _exact(ctx, m) / math.factorial(2 * j)
        total = total + term if j % 2 == 0 else total - term
    return total.mid


def moment_series_check(
    t: RealLike, lam, K: int, params: EvalParams | None = None
) -> float:
    """``|nu_hat(t) - moment series of order K|`` for small ``|t|``."""
    if K < 0 or K % 2:
        raise InvalidArgument("K must be a nonnegative even integer")
    lam = LambdaParam.of(lam)
    params = params or EvalParams()
    tf = as_fraction(t)
    if abs(tf) > MOMENT_SERIES_MAX_T:
        raise InvalidArgument(
            f"|t| = {float(abs(tf))} exceeds {MOMENT_SERIES_MAX_T}; "
            "the moment series remainder is not controlled there"
        )
    ctx = _ctx(params.precision)
    series = ctx.mpf(moment_series(tf, lam, K, params.precision))
    return float(abs(_mid(tf, lam, params) - series).b)
