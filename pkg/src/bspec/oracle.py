"""Exact membership test for the rational zero set of the Fourier transform.

For ``lambda = a/b`` the transform ``prod_n cos(2 pi lambda^n t)`` vanishes
exactly when one factor does, i.e. when ``t = (1/4) (b/a)^n (2k+1)`` for
some ``n >= 0`` and integer ``k``.  Two exponentials ``e_l`` and ``e_l'``
are orthogonal iff ``l - l'`` has this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import InvalidArgument
from .exact import LambdaParam, RationalLike, parse_rational


@dataclass(frozen=True)
class ZeroDecomposition:
    """Witness ``t = (1/4) (b/a)^n (2k+1)``."""

    n: int
    k: int

    @property
    def odd(self) -> int:
        return 2 * self.k + 1

    def value(self, lam: LambdaParam) -> Fraction:
        return Fraction(lam.b**self.n * self.odd, 4 * lam.a**self.n)


@dataclass(frozen=True)
class OrthogonalityReport:
    ok: bool
    violation: Optional[tuple[Fraction, Fraction]] = None

    def __post_init__(self):
        if self.ok != (self.violation is None):
            raise InvalidArgument("ok must be True exactly when there is no violation")

    def __bool__(self) -> bool:
        return self.ok


def _iter_witnesses(t: Fraction, lam: LambdaParam) -> Iterator[ZeroDecomposition]:
    # 4t = p/q in lowest terms; need n with p a^n / (q b^n) an odd integer.
    # gcd(a, b) = gcd(p, q) = 1 forces b^n | p and q | a^n, so n is bounded
    # above by the b-adic order of p (finite because b >= 2).
    x = 4 * t
    p, q = x.numerator, x.denominator
    a, b = lam.a, lam.b
    n = 0
    an, bn = 1, 1
    while p % bn == 0:
        if an % q == 0:
            m = (p // bn) * (an // q)
            if m & 1:
                yield ZeroDecomposition(n, (m - 1) // 2)
        n += 1
        an *= a
        bn *= b


def decompose_zero(t: RationalLike, lam) -> Optional[ZeroDecomposition]:
    """Witness with the smallest ``n`` for ``t`` in the zero set, else None.

    ``t = 0`` is never in the zero set and returns None.
    """
    lam = LambdaParam.of(lam)
    t = parse_rational(t)
    if t == 0:
        return None
    for w in _iter_witnesses(t, lam):
        assert w.value(lam) == t, (t, w)
        return w
    return None


def zero_witnesses(t: RationalLike, lam) -> list[ZeroDecomposition]:
    """Every witness ``(n, k)`` for ``t``, in increasing ``n``."""
    lam = LambdaParam.of(lam)
    t = parse_rational(t)
    if t == 0:
        return []
    out = list(_iter_witnesses(t, lam))
    for w in out:
        assert w.value(lam) == t, (t, w)
    return out


def in_zero_set(t: RationalLike, lam) -> bool:
    return decompose_zero(t, lam) is not None


def are_orthogonal(l1: RationalLike, l2: RationalLike, lam) -> bool:
    l1, l2 = parse_rational(l1), parse_rational(l2)
    if l1 == l2:
        raise InvalidArgument(f"frequencies coincide ({l1}); inner product is the norm")
    return decompose_zero(l1 - l2, lam) is not None


def check_family(freqs: Iterable[RationalLike], lam) -> OrthogonalityReport:
    """Test pairwise orthogonality.

    The reported violation is the lexicographically first pair ``(l_i, l_j)``,
    ``i < j``, in the order the frequencies were given.
    """
    lam = LambdaParam.of(lam)
    fs = [parse_rational(f) for f in freqs]
    if len(set(fs)) != len(fs):
        raise InvalidArgument("family contains duplicate frequencies")
    for i, li in enumerate(fs):
        for lj in fs[i + 1:]:
            if decompose_zero(li - lj, lam) is None:
                return OrthogonalityReport(False, (li, lj))
    return OrthogonalityReport(True)
