"""Orthogonal frequency families, classification of rational lambda and
exhaustive search for maximum orthogonal sets in a finite window."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, TextIO

import networkx as nx

from .errors import InvalidArgument, ResourceLimit, UnsupportedClassification
from .exact import (
    LambdaParam,
    format_rational,
    parse_rational,
    spread_bits,
)
from .oracle import decompose_zero

THREE_QUARTERS = LambdaParam(3, 4)
ONE_QUARTER = LambdaParam(1, 4)

MAX_SEARCH_CANDIDATES = 10**5

KINDS = ("lambda-k", "gamma-k", "even-b", "quarter-onb", "custom")


def lambda_k(k: int, count: int) -> list[Fraction]:
    """``{0} u {4^j / 3^k : j >= k-1}``, the first ``count`` elements (0 included)."""
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    if count < 1:
        raise InvalidArgument("count must be >= 1")
    den = 3**k
    return [Fraction(0)] + [Fraction(4**j, den) for j in range(k - 1, k + count - 2)]


def _gamma_k_element(k: int, m: int) -> Fraction:
    # m-th element in increasing order; m = 0 gives 0
    return Fraction(4 ** (k - 1) * spread_bits(m), 3**k)


def gamma_k(k: int, max_power: int) -> list[Fraction]:
    """All sums ``sum_{j=k-1}^{p} a_j 4^j / 3^k`` with ``a_j`` in {0,1}, ``p <= max_power``."""
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    if max_power < k - 1:
        raise InvalidArgument(f"max_power must be >= k-1 = {k - 1}")
    n_digits = max_power - k + 2
    return [_gamma_k_element(k, m) for m in range(2**n_digits)]


def even_b_family(lam, count: int) -> list[Fraction]:
    """``{0} u {b^i / (4a) : i = 1..count}``; exists only for even ``b``."""
    lam = LambdaParam.of(lam)
    if lam.b % 2:
        raise UnsupportedClassification(
            f"lambda = {lam} has odd denominator; every orthogonal family is finite"
        )
    if count < 1:
        raise InvalidArgument("count must be >= 1")
    return [Fraction(0)] + [Fraction(lam.b**i, 4 * lam.a) for i in range(1, count + 1)]


def _quarter_element(m: int) -> Fraction:
    return Fraction(spread_bits(m), 4)


def quarter_onb(max_power: int) -> list[Fraction]:
    """Candidate spectrum for lambda = 1/4: ``{sum_{i=0}^{p} a_i 4^(i-1)}``, ``a_i`` in {0,1}.

    With the maps ``x -> x/4 +- 1`` the attractor is a dilate by 4 of the
    classical quarter Cantor set, so its spectrum is the classical one
    ``{sum a_i 4^i}`` scaled by 1/4.
    """
    if max_power < 0:
        raise InvalidArgument("max_power must be >= 0")
    return [_quarter_element(m) for m in range(2 ** (max_power + 1))]


@dataclass(frozen=True)
class FrequencyFamily:
    """A lazily enumerable frequency set.

    ``params`` holds the kind-specific integer (``k`` for lambda-k and
    gamma-k); ``members`` is the frequency list of a custom family.
    Enumeration is ascending before translation, exclusions are removed
    before counting.
    """

    kind: str
    lam: LambdaParam
    k: Optional[int] = None
    members: tuple[Fraction, ...] = ()
    exclusions: frozenset = field(default_factory=frozenset)
    translation: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown family kind {self.kind!r}")
        if self.kind in ("lambda-k", "gamma-k"):
            if self.k is None or self.k < 1:
                raise InvalidArgument(f"{self.kind} needs k >= 1")
            if self.lam != THREE_QUARTERS:
                raise InvalidArgument(f"{self.kind} is defined for lambda = 3/4")
        if self.kind == "quarter-onb" and self.lam != ONE_QUARTER:
            raise InvalidArgument("quarter-onb is defined for lambda = 1/4")
        if self.kind == "even-b" and self.lam.b % 2:
            raise UnsupportedClassification(f"lambda = {self.lam} has odd denominator")
        if self.kind == "custom":
            ms = tuple(sorted(set(parse_rational(m) for m in self.members)))
            object.__setattr__(self, "members", ms)
        object.__setattr__(
            self, "exclusions", frozenset(parse_rational(e) for e in self.exclusions)
        )
        object.__setattr__(self, "translation", parse_rational(self.translation))

    @classmethod
    def lambda_k(cls, k: int, **kw) -> "FrequencyFamily":
        return cls("lambda-k", THREE_QUARTERS, k=k, **kw)

    @classmethod
    def gamma_k(cls, k: int, **kw) -> "FrequencyFamily":
        return cls("gamma-k", THREE_QUARTERS, k=k, **kw)

    @classmethod
    def even_b(cls, lam, **kw) -> "FrequencyFamily":
        return cls("even-b", LambdaParam.of(lam), **kw)

    @classmethod
    def quarter_onb(cls, **kw) -> "FrequencyFamily":
        return cls("quarter-onb", ONE_QUARTER, **kw)

    @classmethod
    def custom(cls, members: Iterable, lam=THREE_QUARTERS, **kw) -> "FrequencyFamily":
        return cls("custom", LambdaParam.of(lam), members=tuple(members), **kw)

    def _base(self) -> Iterable[Fraction]:
        if self.kind == "lambda-k":
            den = 3**self.k
            return itertools.chain(
                [Fraction(0)], (Fraction(4**j, den) for j in itertools.count(self.k - 1))
            )
        if self.kind == "gamma-k":
            return (_gamma_k_element(self.k, m) for m in itertools.count())
        if self.kind == "even-b":
            a, b = self.lam.a, self.lam.b
            return itertools.chain(
                [Fraction(0)], (Fraction(b**i, 4 * a) for i in itertools.count(1))
            )
        if self.kind == "quarter-onb":
            return (_quarter_element(m) for m in itertools.count())
        return iter(self.members)

    def enumerate(self, count: int) -> list[Fraction]:
        if count < 1:
            raise InvalidArgument("count must be >= 1")
        if self.kind == "custom" and count > len(self.members) - len(
            self.exclusions & set(self.members)
        ):
            raise InvalidArgument(
                f"custom family has fewer than {count} members after exclusions"
            )
        kept = (f for f in self._base() if f not in self.exclusions)
        return [f + self.translation for f in itertools.islice(kept, count)]

    def metadata(self, count: int) -> dict:
        meta = {
            "kind": self.kind,
            "lambda": str(self.lam),
            "count": count,
            "exclusions": [format_rational(e) for e in sorted(self.exclusions)],
        }
        if self.k is not None:
            meta["k"] = self.k
        if self.translation:
            meta["translation"] = format_rational(self.translation)
        return meta


def union_family(
    families: Sequence[FrequencyFamily], count_each: int, exclusions: Iterable = ()
) -> FrequencyFamily:
    """Custom family from the union of prefixes of ``families``."""
    if not families:
        raise InvalidArgument("need at least one family")
    lam = families[0].lam
    members = set()
    for fam in families:
        if fam.lam != lam:
            raise InvalidArgument("families in a union must share lambda")
        members.update(fam.enumerate(count_each))
    return FrequencyFamily.custom(members, lam, exclusions=frozenset(exclusions))


def write_family(fh: TextIO, family: FrequencyFamily, count: int) -> None:
    """Header line ``# {json metadata}`` followed by one ``num/den`` per line."""
    fh.write("# " + json.dumps(family.metadata(count), sort_keys=True) + "\n")
    for f in family.enumerate(count):
        fh.write(format_rational(f) + "\n")


def read_family(fh: TextIO) -> tuple[dict, list[Fraction]]:
    meta: dict = {}
    freqs = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not meta:
                meta = json.loads(line[1:])
            continue
        freqs.append(parse_rational(line))
    return meta, freqs


@dataclass(frozen=True)
class LambdaClass:
    verdict: str
    witness_family: Optional[FrequencyFamily] = None

    INFINITE = "infinite-exists"
    FINITE = "finite-only"


def classify_lambda(lam) -> LambdaClass:
    """Even denominator: infinite orthogonal families exist; odd: all are finite."""
    lam = LambdaParam.of(lam)
    if lam.b % 2 == 0:
        return LambdaClass(LambdaClass.INFINITE, FrequencyFamily.even_b(lam))
    return LambdaClass(LambdaClass.FINITE)


@dataclass(frozen=True)
class SearchResult:
    members: tuple[Fraction, ...]
    n_max: int
    k_max: int
    n_candidates: int
    exact_within_window: bool = True

    @property
    def size(self) -> int:
        return len(self.members)


def search_candidates(lam: LambdaParam, n_max: int, k_max: int) -> list[Fraction]:
    """Distinct nonzero zero-set points ``(1/4)(b/a)^n(2k+1)``, ``n <= n_max``, ``|k| <= k_max``."""
    cands = set()
    for n in range(n_max + 1):
        scale = Fraction(lam.b**n, 4 * lam.a**n)
        for k in range(-k_max, k_max + 1):
            cands.add(scale * (2 * k + 1))
    return sorted(cands)


def max_set_search(lam, n_max: int, k_max: int) -> SearchResult:
    """Maximum-cardinality pairwise-orthogonal set containing 0 within the window.

    Every candidate is itself a zero-set point, hence orthogonal to 0; the
    answer is 0 plus a maximum clique of the orthogonality graph on the
    candidates.  Exact within the window, no claim beyond it.
    """
    lam = LambdaParam.of(lam)
    if n_max < 0 or k_max < 0:
        raise InvalidArgument("window bounds must be nonnegative")
    estimate = (n_max + 1) * (2 * k_max + 1)
    if estimate > MAX_SEARCH_CANDIDATES:
        raise ResourceLimit(
            f"window has {estimate} candidates (limit {MAX_SEARCH_CANDIDATES}); "
            "reduce n_max or k_max"
        )
    cands = search_candidates(lam, n_max, k_max)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(cands)))
    for i, ci in enumerate(cands):
        for j in range(i + 1, len(cands)):
            if decompose_zero(ci - cands[j], lam) is not None:
                graph.add_edge(i, j)
    if cands:
        clique, _ = nx.max_weight_clique(graph, weight=None)
    else:
        clique = []
    members = tuple([Fraction(0)] + sorted(cands[i] for i in clique))
    return SearchResult(members, n_max, k_max, len(cands))
