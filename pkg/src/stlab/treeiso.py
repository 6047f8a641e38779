"""Tree canonical forms, automorphism counts, Prüfer bijection, and the
unlabeled-tree census machinery.

Canonical code: nested parentheses of the tree rooted at its center, children
ordered lexicographically.  Bicentral trees concatenate the two halves rooted
at the central edge's endpoints, lexicographically smaller half first.  Two
trees have equal codes iff they are isomorphic; codes have length 2n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heapify, heappush, heappop

from .graphs import Graph
from .spanning import Tree

TreeCanonCode = str

MAX_ENUM_N = 18


def _centers(g: Graph) -> list[int]:
    """Centers by iterative leaf stripping (1 or 2 vertices)."""
    n = g.n
    if n <= 2:
        return list(range(n))
    cur = [g.degree(v) for v in range(n)]
    alive = bytearray([1]) * n
    remaining = n
    layer = [v for v in range(n) if cur[v] == 1]
    while remaining > 2:
        nxt = []
        for v in layer:
            alive[v] = 0
            remaining -= 1
            for u in g.adjacency[v]:
                if alive[u]:
                    cur[u] -= 1
                    if cur[u] == 1:
                        nxt.append(u)
        layer = nxt
    return [v for v in range(n) if alive[v]]


def _bfs(g: Graph, root: int, block: int = -1):
    order = [root]
    parent = {root: -1}
    for u in order:
        pu = parent[u]
        for v in g.adjacency[u]:
            if v != pu and v != block:
                parent[v] = u
                order.append(v)
    return order, parent


def _rooted_code_aut(g: Graph, root: int, block: int = -1) -> tuple[str, int]:
    """Canonical code and automorphism count of the subtree at `root`,
    not crossing into `block`."""
    order, parent = _bfs(g, root, block)
    codes: dict[int, str] = {}
    auts: dict[int, int] = {}
    for u in reversed(order):
        pu = parent[u]
        ch = sorted(
            (codes[v] for v in g.adjacency[u] if v != pu and v != block),
        )
        aut = 1
        run = 0
        for i, c in enumerate(ch):
            run += 1
            if i + 1 == len(ch) or ch[i + 1] != c:
                aut *= math.factorial(run)
                run = 0
        for v in g.adjacency[u]:
            if v != pu and v != block:
                aut *= auts[v]
        codes[u] = "(" + "".join(ch) + ")"
        auts[u] = aut
    return codes[root], auts[root]


def canonical_code(t: Tree) -> TreeCanonCode:
    """Isomorphism-invariant code; equal codes iff isomorphic trees."""
    cs = _centers(t)
    if len(cs) == 1:
        return _rooted_code_aut(t, cs[0])[0]
    a, b = cs
    ca = _rooted_code_aut(t, a, block=b)[0]
    cb = _rooted_code_aut(t, b, block=a)[0]
    return ca + cb if ca <= cb else cb + ca


def aut_size(t: Tree) -> int:
    """Exact size of the automorphism group of `t`."""
    cs = _centers(t)
    if len(cs) == 1:
        return _rooted_code_aut(t, cs[0])[1]
    a, b = cs
    ca, aa = _rooted_code_aut(t, a, block=b)
    cb, ab = _rooted_code_aut(t, b, block=a)
    return 2 * aa * ab if ca == cb else aa * ab


def leaf_count(t: Tree) -> int:
    """Number of degree-1 vertices (0 for a single vertex)."""
    return sum(1 for v in range(t.n) if t.degree(v) == 1)


def code_to_tree(code: TreeCanonCode) -> Tree:
    """Rebuild a representative tree (DFS-preorder labels) from a code."""
    stack: list[int] = []
    roots: list[int] = []
    edges: list[tuple[int, int]] = []
    nv = 0
    for ch in code:
        if ch == "(":
            v = nv
            nv += 1
            if stack:
                edges.append((stack[-1], v))
            else:
                roots.append(v)
            stack.append(v)
        elif ch == ")":
            if not stack:
                raise ValueError("unbalanced code")
            stack.pop()
        else:
            raise ValueError(f"invalid code character {ch!r}")
    if stack:
        raise ValueError("unbalanced code")
    if len(roots) == 2:
        edges.append((roots[0], roots[1]))
    elif len(roots) != 1:
        raise ValueError("code must contain one or two top-level groups")
    return Tree(nv, edges)


def prufer_encode(t: Tree) -> tuple[int, ...]:
    """Length n-2 sequence of the smallest-leaf-elimination bijection."""
    n = t.n
    if n < 2:
        raise ValueError("sequence defined for n >= 2")
    deg = [t.degree(v) for v in range(n)]
    alive = bytearray([1]) * n
    leaves = [v for v in range(n) if deg[v] == 1]
    heapify(leaves)
    seq = []
    for _ in range(n - 2):
        v = heappop(leaves)
        alive[v] = 0
        u = next(w for w in t.adjacency[v] if alive[w])
        seq.append(u)
        deg[u] -= 1
        if deg[u] == 1:
            heappush(leaves, u)
    return tuple(seq)


def prufer_decode(seq) -> Tree:
    """Inverse of prufer_encode; n = len(seq) + 2."""
    seq = list(seq)
    n = len(seq) + 2
    for s in seq:
        if not 0 <= s < n:
            raise ValueError(f"sequence entry {s} out of range for n={n}")
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapify(leaves)
    edges = []
    for s in seq:
        v = heappop(leaves)
        edges.append((v, s))
        deg[s] -= 1
        if deg[s] == 1:
            heappush(leaves, s)
    u = heappop(leaves)
    v = heappop(leaves)
    edges.append((u, v))
    return Tree(n, edges)


def _level_sequences(n: int):
    """All canonical rooted-tree level sequences on n vertices, generated by
    the successor rule, in decreasing lexicographic order."""
    L = list(range(n))
    while True:
        yield L
        p = -1
        for i in range(n - 1, 0, -1):
            if L[i] > 1:
                p = i
                break
        if p < 0:
            return
        q = p - 1
        while L[q] != L[p] - 1:
            q -= 1
        L = L[:p] + [0] * (n - p)
        for i in range(p, n):
            L[i] = L[i - (p - q)]


def _tree_from_levels(L: list[int]) -> Tree:
    last_at = [0] * (len(L) + 1)
    edges = []
    for i in range(1, len(L)):
        edges.append((last_at[L[i] - 1], i))
        last_at[L[i]] = i
    return Tree(len(L), edges)


def enumerate_unlabeled_trees(n: int) -> list[TreeCanonCode]:
    """Sorted canonical codes of every n-vertex tree, one per class.

    Rooted level sequences are generated by the successor rule; a sequence is
    kept exactly when its root is the canonical center of the underlying free
    tree (bicentral ties broken by the lexicographically smaller half), so no
    dedup memory is needed.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"supported range is 1 <= n <= {MAX_ENUM_N}")
    if n == 1:
        return ["()"]
    if n == 2:
        return ["()()"]
    out = []
    for L in _level_sequences(n):
        t = _tree_from_levels(L)
        cs = _centers(t)
        if 0 not in cs:
            continue
        if len(cs) == 1:
            out.append(_rooted_code_aut(t, 0)[0])
        else:
            other = cs[0] if cs[1] == 0 else cs[1]
            ha = _rooted_code_aut(t, 0, block=other)[0]
            hb = _rooted_code_aut(t, other, block=0)[0]
            if ha <= hb:
                out.append(ha + hb)
    out.sort()
    return out


def enumerate_unlabeled_trees_dedup(n: int, restricted: bool = True) -> list[TreeCanonCode]:
    """Oracle twin of enumerate_unlabeled_trees: exhaustive Prüfer decoding
    plus code deduplication (n <= 10).  Imported lazily; the kernel is
    numba-compiled on first use."""
    from ._dedup import unlabeled_tree_codes_dedup

    return unlabeled_tree_codes_dedup(n, restricted)


def census(trees) -> dict[TreeCanonCode, int]:
    """Multiset of canonical codes; all trees must share one vertex count."""
    counts: dict[str, int] = {}
    size = None
    for t in trees:
        if size is None:
            size = t.n
        elif t.n != size:
            raise ValueError(f"mixed tree sizes {size} and {t.n}")
        c = canonical_code(t)
        counts[c] = counts.get(c, 0) + 1
    return counts


@dataclass(frozen=True)
class OtterFit:
    """Growth-rate diagnostics of an unlabeled-tree count sequence."""

    ns: tuple[int, ...]
    counts: tuple[int, ...]
    ratios: tuple[float, ...]
    alpha_hat: float
    c_hat: float


def otter_ratio_fit(counts: dict[int, int]) -> OtterFit:
    """Ratio sequence and point estimates of the growth constant alpha and
    amplitude C in the count model C * n^(-5/2) * alpha^n.

    alpha is fitted by least squares on log t_n + (5/2) log n over the upper
    half of the range; C is evaluated at the largest n with that alpha.
    """
    if len(counts) < 3:
        raise ValueError("need at least 3 data points")
    ns = sorted(counts)
    if ns[-1] - ns[0] != len(ns) - 1:
        raise ValueError("counts must cover a contiguous range of n")
    vals = [counts[n] for n in ns]
    if any(v <= 0 for v in vals):
        raise ValueError("counts must be positive")
    ratios = tuple(vals[i + 1] / vals[i] for i in range(len(vals) - 1))

    tail = max(3, len(ns) // 2)
    xs = ns[-tail:]
    ys = [math.log(counts[n]) + 2.5 * math.log(n) for n in xs]
    xbar = sum(xs) / tail
    ybar = sum(ys) / tail
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    alpha_hat = math.exp(slope)
    n_big = ns[-1]
    c_hat = counts[n_big] * n_big**2.5 / alpha_hat**n_big
    return OtterFit(tuple(ns), tuple(vals), ratios, alpha_hat, c_hat)
