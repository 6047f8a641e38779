"""Shared test utilities: small random instances and brute-force oracles."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations, product

from stlab import BipartiteGraph, Graph, Tree, is_connected, substream


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = substream(seed, 0)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_connected_graph(n: int, seed: int) -> Graph:
    for attempt in range(200):
        rng = substream(seed, attempt)
        p = 0.3 + 0.6 * rng.random()
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph(n, edges)
        if is_connected(g):
            return g
    raise RuntimeError("could not build a connected test graph")


def random_bipartite(nx: int, ny: int, p: float, seed: int, min_x_degree: int = 0) -> BipartiteGraph:
    rng = substream(seed, 1)
    edges = {(x, y) for x in range(nx) for y in range(ny) if rng.random() < p}
    if min_x_degree > 0:
        for x in range(nx):
            have = sum(1 for e in edges if e[0] == x)
            while have < min_x_degree:
                y = int(rng.integers(ny))
                if (x, y) not in edges:
                    edges.add((x, y))
                    have += 1
    return BipartiteGraph(nx, ny, sorted(edges))


def brute_force_isomorphic(t1: Graph, t2: Graph) -> bool:
    if t1.n != t2.n or t1.m != t2.m:
        return False
    if sorted(t1.degrees()) != sorted(t2.degrees()):
        return False
    target = {frozenset(e) for e in t2.edges()}
    for perm in permutations(range(t1.n)):
        if all(frozenset((perm[u], perm[v])) in target for u, v in t1.edges()):
            return True
    return False


def brute_force_aut(t: Graph) -> int:
    target = {frozenset(e) for e in t.edges()}
    count = 0
    for perm in permutations(range(t.n)):
        if all(frozenset((perm[u], perm[v])) in target for u, v in t.edges()):
            count += 1
    return count


def brute_force_permanent(h: BipartiteGraph) -> int:
    n = h.nx
    rows = [set(h.adj_x[x]) for x in range(n)]
    total = 0
    for perm in permutations(range(n)):
        if all(perm[i] in rows[i] for i in range(n)):
            total += 1
    return total


def enumerate_assignment_moments(h: BipartiteGraph, m: int) -> tuple[Fraction, Fraction]:
    """Exact (mean, variance) of the count of bins at load m, by enumerating
    every one of prod_x deg(x) assignments."""
    spaces = [h.adj_x[x] for x in range(h.nx)]
    total = Fraction(0)
    total_sq = Fraction(0)
    count = 0
    for choice in product(*spaces):
        loads = [0] * h.ny
        for y in choice:
            loads[y] += 1
        hits = sum(1 for load in loads if load == m)
        total += hits
        total_sq += hits * hits
        count += 1
    mean = Fraction(total, count)
    return mean, Fraction(total_sq, count) - mean * mean


def rooted_tree_counts(max_n: int) -> list[int]:
    """Rooted-tree counts r[1..max_n] by the divisor-sum recurrence."""
    r = [0] * (max_n + 1)
    r[1] = 1
    weighted = [0] * (max_n + 1)
    for n in range(2, max_n + 1):
        for k in range(1, n):
            wk = sum(d * r[d] for d in range(1, k + 1) if k % d == 0)
            weighted[k] = wk
        r[n] = sum(weighted[k] * r[n - k] for k in range(1, n)) // (n - 1)
    return r


def free_tree_counts(max_n: int) -> list[int]:
    """Free-tree counts t[1..max_n] from rooted counts via the
    dissimilarity identity t(x) = r(x) - (r(x)^2 - r(x^2)) / 2."""
    r = rooted_tree_counts(max_n)
    t = [0] * (max_n + 1)
    for n in range(1, max_n + 1):
        ordered = sum(r[i] * r[n - i] for i in range(1, n))
        even_term = r[n // 2] if n % 2 == 0 else 0
        t[n] = r[n] - (ordered - even_term) // 2
    return t


def contract_edge_multi(g: Graph, u: int, v: int) -> tuple[int, list[tuple[int, int]]]:
    """g / uv as a multigraph: v merged into u, parallel edges kept, the
    contracted edge (and any loops) dropped."""
    relabel = {}
    nxt = 0
    for w in range(g.n):
        if w == v:
            continue
        relabel[w] = nxt
        nxt += 1
    relabel[v] = relabel[u]
    skipped_contracted = False
    edges = []
    for a, b in g.edges():
        if not skipped_contracted and frozenset((a, b)) == frozenset((u, v)):
            skipped_contracted = True
            continue
        ra, rb = relabel[a], relabel[b]
        if ra != rb:
            edges.append((ra, rb))
    return g.n - 1, edges


def multigraph_tree_count(n: int, edges: list[tuple[int, int]]) -> int:
    """Matrix-tree count for a multigraph given as an edge list with repeats."""
    from stlab.spanning import _bareiss_determinant

    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    minor = [row[1:] for row in lap[1:]]
    return _bareiss_determinant(minor)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """g / uv as a simple graph (parallels collapsed); only sound when u and
    v share no neighbor, e.g. when uv is a bridge."""
    n, edges = contract_edge_multi(g, u, v)
    return Graph(n, sorted({(min(a, b), max(a, b)) for a, b in edges}))


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    edges = [e for e in g.edges() if frozenset(e) != frozenset((u, v))]
    return Graph(g.n, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def path_tree(n: int) -> Tree:
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    return Tree(n, [(0, i) for i in range(1, n)])


def log_factorial(n: int) -> float:
    return math.lgamma(n + 1)
