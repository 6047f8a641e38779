"""Balls-into-bins on a bipartite graph.

Each X-vertex independently picks a uniform neighbor in Y; the picked edges
form the output graph, and the quantities of interest are the Y-side
in-degrees ("bin loads").  This module samples the process, computes exact
load moments, and evaluates the closed-form concentration bounds for the
count of bins at a given load.

Exact computations use rationals while the X side is small (degrees <= 64,
|X| <= 2000); beyond that the same dynamic programs run in float64, whose
per-factor relative error (~1e-15) sits far inside the documented 1e-9
budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import BipartiteGraph
from .rng import substream

EXACT_MAX_DEGREE = 64
EXACT_MAX_BALLS = 2000


class OutputAssignment:
    """One sample of the process: choice[i] is the Y-vertex picked by x_i."""

    __slots__ = ("choice", "ny", "in_degrees")

    def __init__(self, choice: np.ndarray, ny: int):
        self.choice = choice
        self.ny = ny
        self.in_degrees = np.bincount(choice, minlength=ny)

    def __len__(self) -> int:
        return len(self.choice)


@dataclass(frozen=True)
class DegreeStats:
    """Histogram of Y-side loads, truncated with an overflow bucket."""

    counts: tuple[int, ...]
    overflow: int

    @property
    def kmax(self) -> int:
        return len(self.counts) - 1

    def total(self) -> int:
        return sum(self.counts) + self.overflow


def sample_assignment(h: BipartiteGraph, rng: np.random.Generator) -> OutputAssignment:
    """Draw one output assignment; every coordinate uniform and independent."""
    flat, offsets, degs = h.x_neighbor_arrays()
    if h.nx and int(degs.min()) == 0:
        raise ValueError("every X-vertex needs at least one neighbor")
    idx = rng.integers(0, degs) if h.nx else np.zeros(0, dtype=np.int64)
    return OutputAssignment(flat[offsets[:-1] + idx], h.ny)


def degree_stats(a: OutputAssignment, kmax: int) -> DegreeStats:
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    hist = np.bincount(a.in_degrees, minlength=kmax + 1)
    counts = tuple(int(c) for c in hist[: kmax + 1])
    return DegreeStats(counts, int(hist[kmax + 1 :].sum()))


def _exact_regime(h: BipartiteGraph) -> bool:
    return h.nx <= EXACT_MAX_BALLS and all(len(a) <= EXACT_MAX_DEGREE for a in h.adj_x)


def exact_degree_prob(h: BipartiteGraph, y: int, m: int):
    """Probability that bin y holds exactly m balls.

    Poisson-binomial dynamic program over y's neighbors: the coefficient of
    x^m in prod_v ((1 - 1/d(v)) + x/d(v)).  Rational in the exact regime,
    float64 otherwise.  m beyond deg(y) gives probability 0.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    nbrs = h.adj_y[y]
    exact = _exact_regime(h)
    zero = Fraction(0) if exact else 0.0
    if m > len(nbrs):
        return zero
    one = Fraction(1) if exact else 1.0
    coeffs = [one] + [zero] * m
    for v in nbrs:
        d = len(h.adj_x[v])
        p = Fraction(1, d) if exact else 1.0 / d
        q = one - p
        for j in range(m, 0, -1):
            coeffs[j] = coeffs[j] * q + coeffs[j - 1] * p
        coeffs[0] = coeffs[0] * q
    return coeffs[m]


def exact_count_expectation(h: BipartiteGraph, m: int):
    """Exact expected number of bins at load exactly m (sum over y)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    exact = _exact_regime(h)
    total = Fraction(0) if exact else 0.0
    for y in range(h.ny):
        total += exact_degree_prob(h, y, m)
    return total


def exact_pair_prob(h: BipartiteGraph, y1: int, y2: int, m: int):
    """Probability that bins y1 and y2 both hold exactly m balls.

    Bivariate dynamic program: private neighbors feed one count each, shared
    neighbors feed y1 or y2 with probability 1/d(w) each, neither otherwise.
    """
    if y1 == y2:
        raise ValueError("bins must be distinct")
    if m < 0:
        raise ValueError("m must be nonnegative")
    n1 = set(h.adj_y[y1])
    n2 = set(h.adj_y[y2])
    shared = sorted(n1 & n2)
    only1 = sorted(n1 - n2)
    only2 = sorted(n2 - n1)
    exact = _exact_regime(h)
    zero = Fraction(0) if exact else 0.0
    if m > len(n1) or m > len(n2):
        return zero
    one = Fraction(1) if exact else 1.0

    # dp[a][b] = P[y1 has taken a balls, y2 has taken b] over processed vertices;
    # counts beyond m can never come back down, so they are dropped
    dp = [[zero] * (m + 1) for _ in range(m + 1)]
    dp[0][0] = one
    for v in only1:
        d = len(h.adj_x[v])
        p = Fraction(1, d) if exact else 1.0 / d
        q = one - p
        for a in range(m, -1, -1):
            row = dp[a]
            prev = dp[a - 1] if a else None
            for b in range(m + 1):
                row[b] = row[b] * q + (prev[b] * p if prev else zero)
    for v in only2:
        d = len(h.adj_x[v])
        p = Fraction(1, d) if exact else 1.0 / d
        q = one - p
        for a in range(m + 1):
            row = dp[a]
            for b in range(m, 0, -1):
                row[b] = row[b] * q + row[b - 1] * p
            row[0] = row[0] * q
    for v in shared:
        d = len(h.adj_x[v])
        p = Fraction(1, d) if exact else 1.0 / d
        q = one - 2 * p
        for a in range(m, -1, -1):
            row = dp[a]
            prev = dp[a - 1] if a else None
            for b in range(m, -1, -1):
                acc = row[b] * q
                if prev is not None:
                    acc += prev[b] * p
                if b:
                    acc += row[b - 1] * p
                row[b] = acc
    return dp[m][m]


def exact_count_variance(h: BipartiteGraph, m: int):
    """Exact variance of the number of bins at load exactly m.

    Second moment over ordered bin pairs: the diagonal contributes the
    single-bin probabilities, off-diagonal pairs are symmetric and computed
    once each.
    """
    mean = exact_count_expectation(h, m)
    second = Fraction(0) if _exact_regime(h) else 0.0
    for y1 in range(h.ny):
        second += exact_degree_prob(h, y1, m)
        for y2 in range(y1 + 1, h.ny):
            second += 2 * exact_pair_prob(h, y1, y2, m)
    return second - mean * mean


def poisson_reference(k: int) -> float:
    """Limit fraction of bins at load k: e^(-1) / k!."""
    return math.exp(-1.0) / math.factorial(k)


def delta_limit(k: int) -> float:
    """Largest regularity slack the tail bound admits at level k."""
    return 1e-8 / math.factorial(k + 2) ** 2


@dataclass(frozen=True)
class BoundParams:
    """Shared parameters of the closed-form load-count bounds.

    The tail bound additionally requires delta <= delta_limit(k); the band
    evaluators are plain formulas and accept any nonnegative delta.
    """

    k: int
    m: int
    delta: float
    gamma: float = 0.0
    n: int = 1

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if not 0 <= self.m <= self.k:
            raise ValueError("m must satisfy 0 <= m <= k")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        if self.n < 1:
            raise ValueError("n must be positive")


@dataclass(frozen=True)
class Band:
    center: float
    half_width: float

    @property
    def lo(self) -> float:
        return self.center - self.half_width

    @property
    def hi(self) -> float:
        return self.center + self.half_width


def gamma_threshold(p: BoundParams) -> float:
    return 600.0 * (p.k + 1) * math.sqrt(p.delta)


def tail_bound(p: BoundParams) -> float:
    """Closed-form bound on Pr[|count at load k - e^(-1) n / k!| > gamma n].

    Valid for gamma >= 600 (k+1) sqrt(delta) and delta inside the admissible
    interval; the returned value may exceed 1 (vacuous), callers clamp for
    display.
    """
    if p.delta > delta_limit(p.k):
        raise ValueError(
            f"delta={p.delta} above the admissible limit {delta_limit(p.k):.3e} for k={p.k}"
        )
    thr = gamma_threshold(p)
    if p.gamma < thr:
        raise ValueError(f"gamma={p.gamma} below the threshold {thr}")
    return 10.0 * math.exp(-((p.gamma - thr) ** 2) / (32.0 * (p.k + 1)) * p.n)


def expectation_band(p: BoundParams) -> Band:
    """Band claimed to contain the expected count at load m, for large
    enough degree: center e^(-1) n / m!, relative half-width 100 (k+1) delta."""
    center = poisson_reference(p.m) * p.n
    return Band(center, 100.0 * (p.k + 1) * p.delta * center)


def stddev_bound(p: BoundParams) -> float:
    """Bound on the standard deviation of the count at load m."""
    return 100.0 * math.sqrt((p.k + 1) * p.delta) * poisson_reference(p.m) * p.n


def median_band(p: BoundParams) -> Band:
    """Band holding the count of bins at load > m with probability >= 1/2:
    center sum_{i>m} e^(-1) n / i!, half-width 300 (k+1) sqrt(delta) n."""
    partial = sum(1.0 / math.factorial(i) for i in range(p.m + 1))
    center = (1.0 - math.exp(-1.0) * partial) * p.n
    return Band(center, 300.0 * (p.k + 1) * math.sqrt(p.delta) * p.n)


@dataclass(frozen=True)
class MCTailEstimate:
    frequency: float
    std_error: float
    samples: int
    hits: int


def mc_tail_estimate(
    h: BipartiteGraph, k: int, gamma: float, samples: int, master_seed: int
) -> MCTailEstimate:
    """Empirical frequency of |count at load k - e^(-1) ny / k!| > gamma ny.

    Sample i draws from the counter-based stream (master_seed, i), so the
    estimate is reproducible regardless of execution order.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    center = poisson_reference(k) * h.ny
    cutoff = gamma * h.ny
    hits = 0
    for i in range(samples):
        a = sample_assignment(h, substream(master_seed, i))
        ik = int(np.count_nonzero(a.in_degrees == k))
        if abs(ik - center) > cutoff:
            hits += 1
    freq = hits / samples
    se = math.sqrt(freq * (1.0 - freq) / samples)
    return MCTailEstimate(freq, se, samples, hits)
