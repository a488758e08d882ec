"""Non-orthogonality witnesses showing that Gamma_1 (lambda = 3/4) is a
maximal orthogonal set: every rational ``x`` outside it fails to be
orthogonal to some element of it.

Zero-set points for lambda = 3/4 are ``4^(n-1) (2k+1) / 3^n``; the 2-adic
order of such a point is ``2n - 2``, so ``n`` is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgument
from .exact import LambdaParam, RationalLike, parse_rational, split_power, to_digits
from .oracle import are_orthogonal, decompose_zero

LAM = LambdaParam(3, 4)

NOT_IN_O = "NotInO"
CASE0_QUARTER = "Case0_quarter"
CASE1_DIGIT2 = "Case1_digit2"
CASE1_DIGIT3 = "Case1_digit3"
CASE2_M_GT_1 = "Case2_m_gt_1"
CASE2_M_EQ_1_DIGIT2 = "Case2_m_eq_1_digit2"
CASE2_M_EQ_1_DIGIT3 = "Case2_m_eq_1_digit3"


class WitnessError(AssertionError):
    """A constructed witness turned out orthogonal to ``x``."""


@dataclass(frozen=True)
class WitnessResult:
    witness: Fraction
    case_tag: str


def is_member_gamma1(x: RationalLike) -> bool:
    """True iff ``x = m/3`` with ``m >= 0`` having base-4 digits in {0, 1}."""
    x = parse_rational(x)
    if x == 0:
        return True
    m = x * 3
    if m.denominator != 1 or m < 0:
        return False
    return all(d < 2 for d in to_digits(m.numerator, 4))


def _prefix_witness(u: int) -> tuple[int, int]:
    """For odd ``u`` with some 4-adic digit in {2, 3}: return ``(g, digit)``.

    ``g`` is the digits below the first 2-or-3 digit ``a_r``, plus ``4^r``
    when ``a_r = 3``, so that ``u - g = 2 * 4^r * (odd)``.  Floor division
    gives the 4-adic digits of negative ``u`` as well; those end in an
    infinite run of 3s, so the loop always terminates.
    """
    prefix = 0
    scale = 1
    while True:
        u, d = divmod(u, 4)
        if d >= 2:
            return (prefix + scale if d == 3 else prefix), d
        prefix += d * scale
        scale *= 4


def non_orthogonal_witness(x: RationalLike) -> WitnessResult:
    """Return ``gamma`` in Gamma_1 whose exponential is not orthogonal to ``e_x``."""
    x = parse_rational(x)
    if is_member_gamma1(x):
        raise InvalidArgument(f"{x} lies in Gamma_1")
    wit = decompose_zero(x, LAM)
    if wit is None:
        result = WitnessResult(Fraction(0), NOT_IN_O)
    elif wit.n == 0:
        # x = odd/4; x - 1/3 = (odd)/12 has 3 in its reduced denominator and no power of 4
        result = WitnessResult(Fraction(1, 3), CASE0_QUARTER)
    elif wit.n == 1:
        g, d = _prefix_witness(wit.odd)
        tag = CASE1_DIGIT3 if d == 3 else CASE1_DIGIT2
        result = WitnessResult(Fraction(g, 3), tag)
    else:
        n = wit.n
        e3, _ = split_power(wit.odd, 3)
        m = max(1, n - e3)
        if m > 1:
            result = WitnessResult(Fraction(1, 3), CASE2_M_GT_1)
        else:
            u = wit.odd // 3 ** (n - 1)
            g, d = _prefix_witness(u)
            tag = CASE2_M_EQ_1_DIGIT3 if d == 3 else CASE2_M_EQ_1_DIGIT2
            # shifting base-4 digits by n-1 places keeps them in {0, 1}
            result = WitnessResult(Fraction(4 ** (n - 1) * g, 3), tag)
    if not is_member_gamma1(result.witness):
        raise WitnessError(f"witness {result.witness} for x = {x} is not in Gamma_1")
    if are_orthogonal(x, result.witness, LAM):
        raise WitnessError(f"witness {result.witness} is orthogonal to x = {x}")
    return result
