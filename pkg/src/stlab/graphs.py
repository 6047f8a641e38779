"""Graph and bipartite-graph representations, generators, and edge-list I/O.

Graphs are immutable after construction (adjacency stored as sorted tuples),
so instances are safe to share across threads and workers.  All generators
are pure functions of (spec, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .rng import substream

RETRY_CAP = 1000


class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency."""

    __slots__ = ("n", "adjacency", "_np_cache")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._np_cache = None

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        # adjacency is sorted; binary search is overkill at these sizes
        return v in a

    def neighbor_arrays(self):
        """(flat, offsets, degs) numpy view of the adjacency, cached."""
        if self._np_cache is None:
            degs = np.array([len(a) for a in self.adjacency], dtype=np.int64)
            offsets = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(degs, out=offsets[1:])
            flat = np.fromiter(
                (v for a in self.adjacency for v in a), dtype=np.int64, count=int(offsets[-1])
            )
            self._np_cache = (flat, offsets, degs)
        return self._np_cache

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class BipartiteGraph:
    """Bipartite graph on parts X (size nx) and Y (size ny).

    Adjacency is stored from X to Y with Y-vertices indexed 0..ny-1; the
    transpose is kept in sync.  Vertex ids in the flattened (unipartite)
    view are X first, then Y shifted by nx.
    """

    __slots__ = ("nx", "ny", "adj_x", "adj_y", "_np_cache")

    def __init__(self, nx: int, ny: int, edges: Iterable[tuple[int, int]]):
        if nx < 0 or ny < 0:
            raise ValueError("part sizes must be nonnegative")
        ax: list[list[int]] = [[] for _ in range(nx)]
        ay: list[list[int]] = [[] for _ in range(ny)]
        seen = set()
        for x, y in edges:
            if not (0 <= x < nx and 0 <= y < ny):
                raise ValueError(f"edge ({x},{y}) out of range for parts {nx}+{ny}")
            if (x, y) in seen:
                raise ValueError(f"repeated edge ({x},{y})")
            seen.add((x, y))
            ax[x].append(y)
            ay[y].append(x)
        self.nx = nx
        self.ny = ny
        self.adj_x: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in ax)
        self.adj_y: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in ay)
        self._np_cache = None

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj_x)

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.nx) for y in self.adj_x[x]]

    def x_degrees(self) -> list[int]:
        return [len(a) for a in self.adj_x]

    def y_degrees(self) -> list[int]:
        return [len(a) for a in self.adj_y]

    def degrees(self) -> list[int]:
        return self.x_degrees() + self.y_degrees()

    def to_graph(self) -> Graph:
        """Unipartite view: X keeps its ids, Y is shifted by nx."""
        return Graph(self.nx + self.ny, [(x, self.nx + y) for x, y in self.edges()])

    def x_neighbor_arrays(self):
        if self._np_cache is None:
            degs = np.array([len(a) for a in self.adj_x], dtype=np.int64)
            offsets = np.zeros(self.nx + 1, dtype=np.int64)
            np.cumsum(degs, out=offsets[1:])
            flat = np.fromiter(
                (y for a in self.adj_x for y in a), dtype=np.int64, count=int(offsets[-1])
            )
            self._np_cache = (flat, offsets, degs)
        return self._np_cache

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BipartiteGraph)
            and (self.nx, self.ny) == (other.nx, other.ny)
            and self.adj_x == other.adj_x
        )

    def __hash__(self) -> int:
        return hash((self.nx, self.ny, self.adj_x))

    def __repr__(self) -> str:
        return f"BipartiteGraph(nx={self.nx}, ny={self.ny}, m={self.m})"


FAMILIES = (
    "complete",
    "cycle",
    "complete-bipartite",
    "random-regular",
    "random-bipartite-regular",
    "from-file",
)


@dataclass(frozen=True)
class GraphSpec:
    """Parameters identifying one generated graph, including its seed."""

    family: str
    n: int = 0
    d: int = 0
    nx: int = 0
    ny: int = 0
    delta: float = 0.0
    seed: int = 0
    path: str = ""

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown graph family {self.family!r}")
        if self.family == "complete" and self.n < 1:
            raise ValueError("complete family needs n >= 1")
        if self.family == "cycle" and self.n < 3:
            raise ValueError("cycle family needs n >= 3")
        if self.family == "complete-bipartite" and (self.nx < 1 or self.ny < 1):
            raise ValueError("complete-bipartite family needs nx, ny >= 1")
        if self.family == "random-regular":
            if not 0 < self.d < self.n:
                raise ValueError("random-regular needs 0 < d < n")
            if (self.n * self.d) % 2 != 0:
                raise ValueError("random-regular needs n*d even")
        if self.family == "random-bipartite-regular":
            if self.nx < 1 or self.ny < 1 or self.d < 1:
                raise ValueError("random-bipartite-regular needs nx, ny, d >= 1")
            if self.delta < 0:
                raise ValueError("delta must be nonnegative")
            lo, hi = _degree_interval(self.d, self.delta)
            if lo > hi:
                raise ValueError(f"empty degree interval for d={self.d}, delta={self.delta}")
            if self.nx * lo > self.ny * hi or self.ny * lo > self.nx * hi:
                raise ValueError("part sizes cannot carry equal edge totals in the degree interval")
            if hi > min(self.nx, self.ny):
                raise ValueError("degree interval exceeds the opposite part size")
        if self.family == "from-file" and not self.path:
            raise ValueError("from-file family needs a path")


def _degree_interval(d: int, delta: float) -> tuple[int, int]:
    lo = math.ceil((1.0 - delta) * d)
    hi = math.floor((1.0 + delta) * d)
    return max(lo, 0), hi


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])

def complete_bipartite(nx: int, ny: int) -> BipartiteGraph:
    return BipartiteGraph(nx, ny, [(x, y) for x in range(nx) for y in range(ny)])


def _pair_regular_stubs(n: int, d: int, rng: np.random.Generator) -> set[tuple[int, int]] | None:
    """One attempt of the stub-matching construction of a simple d-regular graph.

    Failed stub pairs (loops, repeats) are recycled and reshuffled; returns
    None when the leftover stubs admit no simple completion.
    """
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    while stubs.size:
        rng.shuffle(stubs)
        retry: list[int] = []
        for i in range(0, stubs.size, 2):
            u, v = int(stubs[i]), int(stubs[i + 1])
            if u > v:
                u, v = v, u
            if u == v or (u, v) in edges:
                retry.append(u)
                retry.append(v)
            else:
                edges.add((u, v))
        if len(retry) == stubs.size:
            # no progress this round: check whether any legal pair remains
            uniq = sorted(set(retry))
            ok = any(
                a != b and ((a, b) if a < b else (b, a)) not in edges
                for ai, a in enumerate(uniq)
                for b in uniq[ai:]
            )
            if not ok:
                return None
        stubs = np.array(retry, dtype=np.int64)
    return edges


def random_regular_graph(n: int, d: int, seed: int) -> Graph:
    """Connected simple d-regular graph via stub matching; retries with
    derived seeds on failure or disconnection, up to RETRY_CAP attempts."""
    for attempt in range(RETRY_CAP):
        rng = substream(seed, attempt)
        edges = _pair_regular_stubs(n, d, rng)
        if edges is None:
            continue
        g = Graph(n, edges)
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected simple {d}-regular graph on {n} vertices in {RETRY_CAP} attempts")


def _nudge_to_total(seq: np.ndarray, lo: int, hi: int, target: int, rng) -> None:
    s = int(seq.sum())
    while s != target:
        if s < target:
            idx = np.flatnonzero(seq < hi)
            seq[int(rng.choice(idx))] += 1
            s += 1
        else:
            idx = np.flatnonzero(seq > lo)
            seq[int(rng.choice(idx))] -= 1
            s -= 1


def _draw_degree_sequences(nx, ny, lo, hi, rng) -> tuple[np.ndarray, np.ndarray]:
    dx = rng.integers(lo, hi + 1, size=nx)
    dy = rng.integers(lo, hi + 1, size=ny)
    # both sides must carry the same edge total, reachable from both sides
    t_lo = max(nx * lo, ny * lo)
    t_hi = min(nx * hi, ny * hi)
    target = min(max(int(dx.sum()), t_lo), t_hi)
    _nudge_to_total(dx, lo, hi, target, rng)
    _nudge_to_total(dy, lo, hi, target, rng)
    return dx, dy


def random_bipartite_regular(nx: int, ny: int, d: int, delta: float, seed: int) -> BipartiteGraph:
    """Simple bipartite graph with every degree in [(1-delta)d, (1+delta)d].

    Per-side degree sequences are drawn uniformly from the allowed integer
    interval, balanced to a common edge total, then stub-matched with
    recycling of colliding pairs.
    """
    lo, hi = _degree_interval(d, delta)
    for attempt in range(RETRY_CAP):
        rng = substream(seed, attempt)
        dx, dy = _draw_degree_sequences(nx, ny, lo, hi, rng)
        xs = np.repeat(np.arange(nx, dtype=np.int64), dx)
        ys = np.repeat(np.arange(ny, dtype=np.int64), dy)
        rng.shuffle(ys)
        edges: set[tuple[int, int]] = set()
        stalled = False
        while xs.size:
            rx: list[int] = []
            ry: list[int] = []
            for i in range(xs.size):
                e = (int(xs[i]), int(ys[i]))
                if e in edges:
                    rx.append(e[0])
                    ry.append(e[1])
                else:
                    edges.add(e)
            if len(rx) == xs.size:
                stalled = True
                break
            xs = np.array(rx, dtype=np.int64)
            ys = np.array(ry, dtype=np.int64)
            rng.shuffle(ys)
        if stalled:
            continue
        return BipartiteGraph(nx, ny, edges)
    raise RuntimeError(f"no simple ({lo}..{hi})-degree bipartite graph in {RETRY_CAP} attempts")


def generate(spec: GraphSpec) -> Union[Graph, BipartiteGraph]:
    """Build the graph described by `spec`; bit-reproducible in (spec, seed)."""
    spec.validate()
    if spec.family == "complete":
        return complete_graph(spec.n)
    if spec.family == "cycle":
        return cycle_graph(spec.n)
    if spec.family == "complete-bipartite":
        return complete_bipartite(spec.nx, spec.ny)
    if spec.family == "random-regular":
        return random_regular_graph(spec.n, spec.d, spec.seed)
    if spec.family == "random-bipartite-regular":
        return random_bipartite_regular(spec.nx, spec.ny, spec.d, spec.delta, spec.seed)
    return read_edge_list(spec.path)


def check_almost_regular(g: Union[Graph, BipartiteGraph], d: int, delta: float) -> bool:
    """True iff every degree lies in the closed interval [(1-delta)d, (1+delta)d]."""
    if d < 1 or delta < 0:
        raise ValueError("need d >= 1 and delta >= 0")
    lo = (1.0 - delta) * d
    hi = (1.0 + delta) * d
    return all(lo <= deg <= hi for deg in g.degrees())


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity is undefined for the empty graph")
    if g.n == 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    stack = [0]
    count = 1
    adj = g.adjacency
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                stack.append(v)
    return count == g.n


def laplacian(g: Graph) -> np.ndarray:
    """Integer Laplacian: degrees on the diagonal, -1 per edge off it."""
    L = np.zeros((g.n, g.n), dtype=np.int64)
    for u in range(g.n):
        L[u, u] = g.degree(u)
        for v in g.adjacency[u]:
            L[u, v] = -1
    return L


def geometric_avg_degree(g: Union[Graph, BipartiteGraph]) -> float:
    """(prod of degrees)^(1/n), accumulated in log space."""
    degs = g.degrees()
    if any(d == 0 for d in degs):
        raise ValueError("geometric average degree needs all degrees >= 1")
    return math.exp(sum(math.log(d) for d in degs) / len(degs))


def write_edge_list(g: Union[Graph, BipartiteGraph], path: str | Path) -> None:
    """Plain-text edge list: header `n m` (`nx ny m` bipartite), LF newlines.

    Bipartite files store X ids then Y ids shifted by nx.
    """
    lines = []
    if isinstance(g, BipartiteGraph):
        lines.append(f"{g.nx} {g.ny} {g.m}")
        lines.extend(f"{x} {g.nx + y}" for x, y in g.edges())
    else:
        lines.append(f"{g.n} {g.m}")
        lines.extend(f"{u} {v}" for u, v in g.edges())
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def read_edge_list(path: str | Path) -> Union[Graph, BipartiteGraph]:
    text = Path(path).read_text(encoding="ascii")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty edge-list file")
    header = lines[0].split()
    pairs = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    if any(len(p) != 2 for p in pairs):
        raise ValueError(f"{path}: malformed edge line")
    if len(header) == 2:
        n, m = (int(t) for t in header)
        if len(pairs) != m:
            raise ValueError(f"{path}: header announces {m} edges, file has {len(pairs)}")
        return Graph(n, pairs)
    if len(header) == 3:
        nx, ny, m = (int(t) for t in header)
        if len(pairs) != m:
            raise ValueError(f"{path}: header announces {m} edges, file has {len(pairs)}")
        for x, y in pairs:
            if not (0 <= x < nx and nx <= y < nx + ny):
                raise ValueError(f"{path}: edge ({x},{y}) not from X into Y")
        return BipartiteGraph(nx, ny, [(x, y - nx) for x, y in pairs])
    raise ValueError(f"{path}: header must hold 2 or 3 integers")
