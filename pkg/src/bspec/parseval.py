"""Truncated Parseval sums ``Q(t) = sum_gamma nu_hat(t - gamma)^2`` on grids.

A set of orthonormal exponentials is total iff ``Q`` is identically 1.
Products are truncated to ``n_factors`` cosines and evaluated in double
precision.  Each grid value is accumulated in a fixed family order with
elementwise operations only, so results do not depend on how the grid is
split across workers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

import numpy as np

from .errors import InvalidArgument, ResourceLimit
from .exact import LambdaParam
from .families import FrequencyFamily

MAX_GRID_POINTS = 10**7
# below this many points worker start-up costs more than the scan
PARALLEL_MIN_POINTS = 4096


@dataclass(frozen=True)
class ScanConfig:
    family: FrequencyFamily
    t_min: float
    t_max: float
    step: float
    n_terms: int = 40
    n_factors: int = 40
    lam: Optional[LambdaParam] = None

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise InvalidArgument("t_min must be below t_max")
        if not self.step > 0:
            raise InvalidArgument("step must be positive")
        if self.n_terms < 1 or self.n_factors < 1:
            raise InvalidArgument("n_terms and n_factors must be >= 1")
        object.__setattr__(
            self, "lam", LambdaParam.of(self.lam) if self.lam is not None else self.family.lam
        )

    @property
    def n_points(self) -> int:
        # inclusive endpoints; the slack absorbs round-off in (t_max - t_min) / step
        return math.floor((self.t_max - self.t_min) / self.step + 1e-9) + 1

    def grid(self) -> np.ndarray:
        n = self.n_points
        if n > MAX_GRID_POINTS:
            raise ResourceLimit(f"grid has {n} points (limit {MAX_GRID_POINTS})")
        return self.t_min + np.arange(n) * self.step

    def frequencies(self) -> np.ndarray:
        return np.array([float(g) for g in self.family.enumerate(self.n_terms)])


@dataclass
class ScanRow:
    t: float
    q: float
    contributions: Optional[list[float]] = None


def _terms(ts: np.ndarray, gammas: np.ndarray, lam: float, n_factors: int) -> np.ndarray:
    """Matrix of squared truncated products, shape (len(gammas), len(ts))."""
    out = np.empty((len(gammas), len(ts)))
    scales = 2 * math.pi * lam ** np.arange(n_factors)
    for i, g in enumerate(gammas):
        d = ts - g
        p = np.ones_like(ts)
        for s in scales:
            p *= np.cos(s * d)
        out[i] = p * p
    return out


def _accumulate(terms: np.ndarray) -> np.ndarray:
    q = np.zeros(terms.shape[1])
    for row in terms:
        q += row
    return q


def _block(args):
    ts, gammas, lam, n_factors, contributions = args
    terms = _terms(ts, gammas, lam, n_factors)
    return _accumulate(terms), (terms if contributions else None)


def parseval_sum(t: float, config: ScanConfig) -> float:
    ts = np.array([float(t)])
    terms = _terms(ts, config.frequencies(), float(config.lam), config.n_factors)
    return float(_accumulate(terms)[0])


def scan(config: ScanConfig, jobs: Optional[int] = 1, contributions: bool = False) -> list[ScanRow]:
    """One row per grid point in increasing ``t``.

    ``jobs=None`` uses every available processor.
    """
    ts = config.grid()
    gammas = config.frequencies()
    lam = float(config.lam)
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise InvalidArgument("jobs must be >= 1")
    if jobs == 1 or len(ts) < PARALLEL_MIN_POINTS:
        q, terms = _block((ts, gammas, lam, config.n_factors, contributions))
    else:
        chunks = np.array_split(ts, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(_block, [(c, gammas, lam, config.n_factors, contributions) for c in chunks])
            )
        q = np.concatenate([p[0] for p in parts])
        terms = np.concatenate([p[1] for p in parts], axis=1) if contributions else None
    rows = []
    for i, (t, qi) in enumerate(zip(ts.tolist(), q.tolist())):
        contrib = terms[:, i].tolist() if terms is not None else None
        rows.append(ScanRow(t, qi, contrib))
    return rows


def peak_report(rows: Sequence[ScanRow], threshold: float) -> list[tuple[float, float]]:
    """Strict local maxima with ``q >= threshold``, sorted by ``t``.

    A run of equal values counts once, at its smallest ``t``, when it is
    strictly above both neighbours.  Grid endpoints are compared with their
    single neighbour; a run spanning the whole grid is not a peak.
    """
    if not rows:
        raise InvalidArgument("no rows to analyse")
    qs = [r.q for r in rows]
    n = len(qs)
    peaks = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and qs[j + 1] == qs[i]:
            j += 1
        left_ok = i == 0 or qs[i - 1] < qs[i]
        right_ok = j == n - 1 or qs[j + 1] < qs[i]
        if left_ok and right_ok and not (i == 0 and j == n - 1) and qs[i] >= threshold:
            peaks.append((rows[i].t, qs[i]))
        i = j + 1
    return peaks


def _fmt(x: float) -> str:
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


def write_csv(fh: TextIO, rows: Sequence[ScanRow], contributions: bool = False) -> None:
    """``t,q`` header and rows, decimal notation with 12 significant digits."""
    header = ["t", "q"]
    if contributions:
        if not rows or rows[0].contributions is None:
            raise InvalidArgument("rows carry no per-term contributions")
        header += [f"q_{i}" for i in range(len(rows[0].contributions))]
    fh.write(",".join(header) + "\n")
    for r in rows:
        fields = [_fmt(r.t), _fmt(r.q)]
        if contributions:
            fields += [_fmt(c) for c in r.contributions]
        fh.write(",".join(fields) + "\n")


def read_csv(fh: TextIO) -> list[ScanRow]:
    header = fh.readline().strip().split(",")
    if header[:2] != ["t", "q"]:
        raise InvalidArgument("expected a t,q header")
    rows = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        vals = [float(v) for v in line.split(",")]
        rows.append(ScanRow(vals[0], vals[1], vals[2:] or None))
    return rows


def write_svg(fh: TextIO, rows: Sequence[ScanRow], width: int = 800, height: int = 400) -> None:
    """Single polyline of ``q`` against ``t`` with plain axes."""
    if not rows:
        raise InvalidArgument("no rows to plot")
    pad = 40
    ts = [r.t for r in rows]
    qs = [r.q for r in rows]
    t0, t1 = ts[0], ts[-1]
    q1 = max(1.0, max(qs))
    sx = (width - 2 * pad) / ((t1 - t0) or 1.0)
    sy = (height - 2 * pad) / q1

    def xy(t, q):
        return f"{pad + (t - t0) * sx:.2f},{height - pad - q * sy:.2f}"

    pts = " ".join(xy(t, q) for t, q in zip(ts, qs))
    fh.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<text x="{pad}" y="{height - pad / 4}">{_fmt(t0)}</text>\n'
        f'<text x="{width - pad}" y="{height - pad / 4}" text-anchor="end">{_fmt(t1)}</text>\n'
        f'<text x="{pad / 8}" y="{height - pad - q1 * sy}">{_fmt(q1)}</text>\n'
        f'<polyline fill="none" stroke="blue" points="{pts}"/>\n'
        "</svg>\n"
    )
