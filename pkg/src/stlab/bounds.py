"""Counting bounds behind the spanning-tree anticoncentration estimate:
permanent bounds, labeled-copy counts of trees in host graphs, and the
composite bound on those counts with few-leaves / many-leaves dispatch.

All bound arithmetic lives in natural-log space; the magnitudes involved
(d^n) overflow doubles otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graphs import BipartiteGraph, Graph, is_connected
from .spanning import Tree, count_spanning_trees
from .treeiso import aut_size, leaf_count
from .ballsbins import delta_limit

PERMANENT_CAP = 20
EMBEDDING_CAP = 12

FEW_LEAVES_GAMMA = math.exp(-1.0) - 0.1  # tail level for the few-leaves case
MATCHING_SLACK = 1e-9  # (1+1e-9) factor the matching bound carries per leaf


def bregman_minc_log(h: BipartiteGraph) -> float:
    """Natural log of the permanent bound prod_v (d(v)!)^(1/d(v)) over the
    X side; -inf when some X-vertex is isolated (no perfect matching)."""
    if h.nx != h.ny:
        raise ValueError("perfect-matching bound needs equal part sizes")
    total = 0.0
    for d in h.x_degrees():
        if d == 0:
            return float("-inf")
        total += math.lgamma(d + 1) / d
    return total


def permanent_ryser(h: BipartiteGraph) -> int:
    """Exact perfect-matching count by inclusion-exclusion over column
    subsets (Gray-code order); parts capped at 20."""
    if h.nx != h.ny:
        raise ValueError("permanent needs equal part sizes")
    n = h.nx
    if n > PERMANENT_CAP:
        raise ValueError(f"part size {n} exceeds the cap of {PERMANENT_CAP}")
    if n == 0:
        return 1
    rows_of_col = [h.adj_y[j] for j in range(n)]
    sums = [0] * n
    total = 0
    prev = 0
    for s in range(1, 1 << n):
        gray = s ^ (s >> 1)
        bit = gray ^ prev
        j = bit.bit_length() - 1
        if gray & bit:
            for i in rows_of_col[j]:
                sums[i] += 1
        else:
            for i in rows_of_col[j]:
                sums[i] -= 1
        prev = gray
        prod = 1
        for v in sums:
            if v == 0:
                prod = 0
                break
            prod *= v
        if prod:
            total += -prod if (gray.bit_count() & 1) else prod
    return total if n % 2 == 0 else -total


def count_labeled_copies(t: Tree, g: Graph) -> int:
    """Number of injective adjacency-preserving maps V(t) -> V(g).

    This counts labeled copies: subgraph copies times the automorphism count
    of t.  Backtracking over a BFS order of t with degree pruning; host
    graphs capped at 12 vertices.
    """
    if t.n > g.n:
        return 0
    if g.n > EMBEDDING_CAP:
        raise ValueError(f"host graph size {g.n} exceeds the cap of {EMBEDDING_CAP}")
    if t.n == 0:
        return 1
    order = [0]
    parent = {0: -1}
    for u in order:
        for v in t.adjacency[u]:
            if v != parent[u]:
                parent[v] = u
                order.append(v)
    tdeg = [t.degree(v) for v in range(t.n)]
    gdeg = [g.degree(v) for v in range(g.n)]
    image = [-1] * t.n
    used = bytearray(g.n)

    def rec(i: int) -> int:
        if i == t.n:
            return 1
        tv = order[i]
        need = tdeg[tv]
        if i == 0:
            cands = range(g.n)
        else:
            cands = g.adjacency[image[parent[tv]]]
        total = 0
        for c in cands:
            if not used[c] and gdeg[c] >= need:
                used[c] = 1
                image[tv] = c
                total += rec(i + 1)
                used[c] = 0
        return total

    return rec(0)


def iso_class_probability(t: Tree, g: Graph) -> Fraction:
    """Exact probability that a uniform spanning tree of g is isomorphic
    to t: labeled copies / |Aut(t)| / |T(g)|."""
    if t.n != g.n:
        raise ValueError("tree must span the host graph's vertex count")
    if not is_connected(g):
        raise ValueError("host graph must be connected")
    total = count_spanning_trees(g)
    return Fraction(count_labeled_copies(t, g), aut_size(t) * total)


def anticoncentration_bound(n: int) -> float:
    """e^(-n/2000): bound on the probability of any single spanning-tree
    isomorphism class in an almost-regular host."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.exp(-n / 2000.0)


def stirling_factor(d: int) -> float:
    """Diagnostic ratio (d!)^(1/d) * e / d; > 1 for finite d, decreasing
    toward 1, the factor the matching bound needs close to 1."""
    if d < 1:
        raise ValueError("d must be positive")
    return math.exp(math.lgamma(d + 1) / d) * math.e / d


@dataclass(frozen=True)
class BoundReport:
    """Log-space bound on the labeled-copy count of an n-vertex tree in an
    almost-regular n-vertex host, with its active case and components."""

    n: int
    d: int
    delta: float
    leaves: int
    case: str
    log_bound: float
    components: dict[str, float]
    headline_log_bound: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "delta": self.delta,
            "leaves": self.leaves,
            "case": self.case,
            "log_bound": self.log_bound,
            "components": dict(self.components),
            "headline_log_bound": self.headline_log_bound,
        }


def composite_min_n(delta: float = 1e-10) -> float:
    """Scale at which the bound machinery engages: the n beyond which the
    few-leaves tail term overcomes its constant prefactor of 10."""
    thr = 600.0 * math.sqrt(delta)
    return 32.0 * math.log(10.0) / (FEW_LEAVES_GAMMA - thr) ** 2


def labeled_copies_bound(n: int, leaves: int, d: int, delta: float = 1e-10) -> BoundReport:
    """Composite log-space bound on labeled copies of a tree with the given
    leaf count.

    Trees with fewer than n/10 leaves route through the load-count tail
    (every out-choice functional digraph containing the tree has few empty
    bins); trees with many leaves route through the embedding count of the
    leafless core times the perfect-matching bound for placing the leaves.
    Below composite_min_n(delta), and whenever the case bound exceeds it,
    the always-valid trivial bound n*ln((1+delta)d) is reported instead.
    The headline rate -n/1000 + n*ln(d) is shown alongside; it holds only
    asymptotically and never enters the minimum.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 <= leaves <= n - 1:
        raise ValueError("leaf count must lie in [0, n-1]")
    if d < 1:
        raise ValueError("d must be positive")
    if not 0.0 <= delta <= delta_limit(0):
        raise ValueError(f"delta must lie in [0, {delta_limit(0):.3e}]")

    log_deg = math.log((1.0 + delta) * d)
    trivial = n * log_deg
    headline = -n / 1000.0 + n * math.log(d)

    composite = math.inf
    tail = embedding = matching = 0.0
    if n >= composite_min_n(delta):
        if leaves < n / 10.0:
            case = "few-leaves"
            thr = 600.0 * math.sqrt(delta)
            tail = math.log(10.0) - ((FEW_LEAVES_GAMMA - thr) ** 2 / 32.0) * n
            embedding = n * log_deg
            composite = tail + embedding
        else:
            case = "many-leaves"
            embedding = math.log(n) + (n - 1 - leaves) * log_deg
            matching = leaves * (math.log1p(MATCHING_SLACK) - 1.0 + math.log(d))
            composite = embedding + matching

    if composite <= trivial:
        components = {"tail": tail, "embedding": embedding, "matching": matching, "trivial": 0.0}
        log_bound = composite
    else:
        case = "trivial"
        components = {"tail": 0.0, "embedding": 0.0, "matching": 0.0, "trivial": trivial}
        log_bound = trivial

    return BoundReport(n, d, delta, leaves, case, log_bound, components, headline)


def bound_for_tree(t: Tree, d: int, delta: float = 1e-10) -> BoundReport:
    """Convenience wrapper taking the tree itself."""
    return labeled_copies_bound(t.n, leaf_count(t), d, delta)
