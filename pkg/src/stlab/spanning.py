"""Exact spanning-tree counting, uniform sampling, and enumeration.

Counts are exact Python integers throughout: the Kirchhoff determinant is
evaluated with fraction-free integer elimination, never floating point.
"""

from __future__ import annotations

import math

from .graphs import Graph, is_connected
from .rng import IntStream

ENUMERATION_CAP = 10**6


class Tree(Graph):
    """Connected acyclic graph spanning vertices 0..n-1."""

    def __init__(self, n: int, edges):
        super().__init__(n, edges)
        if self.m != max(n - 1, 0):
            raise ValueError(f"tree on {n} vertices needs {n - 1} edges, got {self.m}")
        if not is_connected(self):
            raise ValueError("tree must be connected")


def _bareiss_determinant(mat: list[list[int]]) -> int:
    """Exact determinant by fraction-free (integer-preserving) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    """Exact |T(g)| via the determinant of a Laplacian minor."""
    if g.n == 0:
        raise ValueError("empty graph")
    if g.n == 1:
        return 1
    if not is_connected(g):
        return 0
    # minor obtained by deleting row/column 0
    size = g.n - 1
    mat = [[0] * size for _ in range(size)]
    for u in range(1, g.n):
        mat[u - 1][u - 1] = g.degree(u)
        for v in g.adjacency[u]:
            if v >= 1:
                mat[u - 1][v - 1] = -1
    return _bareiss_determinant(mat)


def sample_ust(g: Graph, rng) -> Tree:
    """Uniform spanning tree by loop-erased random walks from each vertex.

    Walks are attached to the growing tree rooted at vertex 0; the result is
    exactly uniform over all spanning trees of `g`.
    """
    if not is_connected(g):
        raise ValueError("uniform spanning tree needs a connected graph")
    n = g.n
    if n == 1:
        return Tree(1, [])
    stream = IntStream(rng)
    adj = g.adjacency
    in_tree = bytearray(n)
    in_tree[0] = 1
    succ = [-1] * n
    for start in range(1, n):
        u = start
        while not in_tree[u]:
            nbrs = adj[u]
            succ[u] = nbrs[stream.int_below(len(nbrs))]
            u = succ[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = 1
            u = succ[u]
    return Tree(n, [(v, succ[v]) for v in range(1, n)])


def enumerate_spanning_trees(g: Graph, cap: int = ENUMERATION_CAP) -> list[Tree]:
    """Every spanning tree exactly once, by contraction-deletion.

    Each recursion step branches on one edge: trees containing it come from
    the contraction, trees avoiding it from the deletion (skipped when the
    edge is a bridge).  Refuses graphs with more than `cap` trees.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    total = count_spanning_trees(g)
    if total > cap:
        raise ValueError(f"{total} spanning trees exceed the cap of {cap}")
    if total == 0:
        return []
    if g.n == 1:
        return [Tree(1, [])]

    out: list[Tree] = []
    start_edges = g.edges()

    # cur[i] holds the contracted endpoints of original edge i
    cur = [list(e) for e in start_edges]

    def connected(edge_idx: list[int], nverts: int) -> bool:
        # union-find over the current contracted labels
        parent: dict[int, int] = {}

        def find(a):
            while parent.get(a, a) != a:
                parent[a] = parent.get(parent[a], parent[a])
                a = parent[a]
            return a

        comps = nverts
        for i in edge_idx:
            ra, rb = find(cur[i][0]), find(cur[i][1])
            if ra != rb:
                parent[ra] = rb
                comps -= 1
        return comps == 1

    def recurse(alive: list[int], nverts: int, chosen: list[int]):
        if nverts == 1:
            out.append(Tree(g.n, [start_edges[i] for i in chosen]))
            return
        e = alive[0]
        u, v = cur[e]

        # branch 1: contract e (merge v into u)
        saved = [(i, cur[i][0], cur[i][1]) for i in alive]
        kept = []
        for i in alive:
            if i == e:
                continue
            if cur[i][0] == v:
                cur[i][0] = u
            if cur[i][1] == v:
                cur[i][1] = u
            if cur[i][0] != cur[i][1]:
                kept.append(i)
        chosen.append(e)
        recurse(kept, nverts - 1, chosen)
        chosen.pop()
        for i, a, b in saved:
            cur[i][0] = a
            cur[i][1] = b

        # branch 2: delete e, valid only if the rest stays connected
        rest = alive[1:]
        if connected(rest, nverts):
            recurse(rest, nverts, chosen)

    recurse(list(range(len(start_edges))), g.n, [])
    return out


def kostochka_upper_log(g: Graph) -> float:
    """Natural log of the degree-geometric-mean upper bound d_g^n / (n-1)."""
    if g.n < 2:
        raise ValueError("bound needs n >= 2")
    degs = g.degrees()
    if any(d < 1 for d in degs):
        raise ValueError("bound needs minimum degree >= 1")
    return sum(math.log(d) for d in degs) - math.log(g.n - 1)


def almost_regular_lower_log(n: int, d: int) -> float:
    """Natural log of the (1 - 2e-10)^n d^n spanning-tree lower bound.

    Asymptotic statement (holds for d beyond an unspecified threshold); this
    is an evaluator only, never asserted against finite instances.
    """
    if n < 1 or d < 1:
        raise ValueError("need n, d >= 1")
    return n * math.log((1.0 - 2e-10) * d)


def mckay_growth_constant(d: int) -> float:
    """Growth constant (d-1)^(d-1) / (d^2-2d)^(d/2-1) of the per-vertex
    spanning-tree rate in connected d-regular graphs."""
    if d < 3:
        raise ValueError("growth constant is defined for d >= 3")
    return math.exp((d - 1) * math.log(d - 1) - (d / 2 - 1) * math.log(d * d - 2 * d))
