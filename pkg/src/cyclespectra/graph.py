"""Immutable simple undirected graphs and the structural primitives built on them.

Vertices are always ``0..n-1``. Every graph also carries ``labels``: for each
local vertex, the id it has in the graph the whole derivation chain started
from. Subgraph constructors compose labels, so any witness found deep inside a
pipeline can be lifted back and replayed against the original input.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex references."""


class Graph:
    __slots__ = ("n", "edges", "adj", "masks", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[int] | None = None):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        canon = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise GraphError(f"duplicate edge {e}")
            canon.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = frozenset(canon)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self.masks = tuple(sum(1 << w for w in a) for a in self.adj)
        if labels is None:
            self.labels = tuple(range(n))
        else:
            if len(labels) != n:
                raise GraphError("labels must have one entry per vertex")
            self.labels = tuple(labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def average_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and (self.masks[u] >> v) & 1 == 1

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise GraphError(f"vertex {v!r} out of range for {self.n} vertices")

    # -- derived graphs -------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph; local ids follow the sorted order of ``vertices``."""
        keep = sorted(set(vertices))
        self.check_vertices(keep)
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), edges, [self.labels[v] for v in keep])

    def edge_subgraph(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Spanning subgraph on the same vertex set keeping only ``edges``."""
        kept = []
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"({u}, {v}) is not an edge of the parent graph")
            kept.append((u, v))
        return Graph(self.n, kept, self.labels)

    def lift(self, vertices: Iterable[int]) -> tuple[int, ...]:
        """Map local vertex ids to the ids of the originating graph."""
        return tuple(self.labels[v] for v in vertices)

    def local_index(self) -> dict[int, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def problems(self, g: Graph) -> list[str]:
        vs = self.vertices
        out = []
        if not vs:
            return ["empty path"]
        if any(not (isinstance(v, int) and 0 <= v < g.n) for v in vs):
            return ["vertex out of range"]
        if len(set(vs)) != len(vs):
            out.append("repeated vertex")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                out.append(f"missing edge ({a}, {b})")
        return out

    def is_valid(self, g: Graph) -> bool:
        return not self.problems(g)

    def reversed(self) -> PathWitness:
        return PathWitness(self.vertices[::-1])


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def problems(self, g: Graph) -> list[str]:
        vs = self.vertices
        if len(vs) < 3:
            return [f"cycle too short ({len(vs)} vertices)"]
        out = PathWitness(vs).problems(g)
        if not out and not g.has_edge(vs[-1], vs[0]):
            out.append(f"missing closing edge ({vs[-1]}, {vs[0]})")
        return out

    def is_valid(self, g: Graph) -> bool:
        return not self.problems(g)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        vs = self.vertices
        return frozenset(tuple(sorted((vs[i], vs[(i + 1) % len(vs)]))) for i in range(len(vs)))


@dataclass(frozen=True)
class BfsLayering:
    root: int
    layers: tuple[frozenset[int], ...]
    parent: dict[int, int] = field(repr=False)
    depth: dict[int, int] = field(repr=False)

    def layer_of(self, v: int) -> int:
        return self.depth[v]

    def path_to_root(self, v: int) -> list[int]:
        out = [v]
        while out[-1] != self.root:
            out.append(self.parent[out[-1]])
        return out

    def lca(self, u: int, v: int) -> int:
        du, dv = self.depth[u], self.depth[v]
        while du > dv:
            u, du = self.parent[u], du - 1
        while dv > du:
            v, dv = self.parent[v], dv - 1
        while u != v:
            u, v = self.parent[u], self.parent[v]
        return u

    def common_ancestor(self, vertices: Iterable[int]) -> int:
        it = iter(vertices)
        acc = next(it)
        for v in it:
            acc = self.lca(acc, v)
        return acc

    def tree_path(self, u: int, v: int) -> list[int]:
        """Vertices of the unique tree path from ``u`` to ``v``."""
        top = self.lca(u, v)
        up = []
        while u != top:
            up.append(u)
            u = self.parent[u]
        down = []
        while v != top:
            down.append(v)
            v = self.parent[v]
        return up + [top] + down[::-1]

    def child_toward(self, ancestor: int, v: int) -> int:
        """The child of ``ancestor`` whose subtree contains ``v``."""
        while self.parent.get(v) != ancestor:
            v = self.parent[v]
        return v


def bfs_distances(g: Graph, source: int, allowed: set[int] | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bfs_layering(g: Graph, root: int) -> BfsLayering:
    """Distance classes from ``root`` within its component, with a BFS parent map."""
    g.check_vertices([root])
    parent: dict[int, int] = {}
    depth = {root: 0}
    layers = [[root]]
    while True:
        nxt = []
        for u in layers[-1]:
            for w in g.adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    nxt.append(w)
        if not nxt:
            break
        layers.append(nxt)
    return BfsLayering(root, tuple(frozenset(layer) for layer in layers), parent, depth)


def girth(g: Graph) -> float | int:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def boundary(g: Graph, x: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``x`` with at least one neighbour in ``x``."""
    xs = set(x)
    g.check_vertices(xs)
    mask = 0
    for v in xs:
        mask |= g.masks[v]
    for v in xs:
        mask &= ~(1 << v)
    return frozenset(_bits(mask))


def k_core(g: Graph, k: int) -> Graph:
    """Maximal induced subgraph of minimum degree at least ``k`` (possibly empty)."""
    deg = g.degrees
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] < k]
    for v in stack:
        alive[v] = False
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < k:
                    alive[w] = False
                    stack.append(w)
    return g.induced(v for v in range(g.n) if alive[v])


def degeneracy(g: Graph) -> int:
    """Largest k with a nonempty k-core."""
    deg = g.degrees
    removed = [False] * g.n
    best = 0
    buckets: dict[int, set[int]] = {}
    for v, d in enumerate(deg):
        buckets.setdefault(d, set()).add(v)
    current = 0
    for _ in range(g.n):
        current = 0
        while not buckets.get(current):
            current += 1
        v = buckets[current].pop()
        best = max(best, current)
        removed[v] = True
        for w in g.adj[v]:
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
    return best


def components(g: Graph) -> list[frozenset[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = list(bfs_distances(g, s))
        for v in comp:
            seen[v] = True
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(bfs_distances(g, 0)) == g.n


def cut_vertices(g: Graph) -> frozenset[int]:
    """Articulation points (iterative low-link search)."""
    disc = [-1] * g.n
    low = [0] * g.n
    out = set()
    clock = 0
    for s in range(g.n):
        if disc[s] >= 0:
            continue
        disc[s] = low[s] = clock
        clock += 1
        children = 0
        stack = [(s, -1, iter(g.adj[s]))]
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if parent != s and low[v] >= disc[parent]:
                        out.add(parent)
                continue
            if disc[w] < 0:
                disc[w] = low[w] = clock
                clock += 1
                if v == s:
                    children += 1
                stack.append((w, v, iter(g.adj[w])))
            elif w != parent:
                low[v] = min(low[v], disc[w])
        if children > 1:
            out.add(s)
    return frozenset(out)


def is_biconnected(g: Graph) -> bool:
    """Connected, at least three vertices, and no cut vertex."""
    return g.n >= 3 and is_connected(g) and not cut_vertices(g)


def two_coloring(g: Graph) -> dict[int, int] | None:
    """A proper 2-colouring, or ``None`` when ``g`` has an odd cycle."""
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


@dataclass(frozen=True)
class ComponentStats:
    vertices: frozenset[int]
    average_degree: float
    radius: int
    center: int


def component_stats(g: Graph) -> list[ComponentStats]:
    """Per component: vertex set, average degree and radius (with a centre attaining it)."""
    out = []
    for comp in components(g):
        edges2 = sum(g.degree(v) for v in comp)
        radius, center = min((max(bfs_distances(g, v).values()), v) for v in comp)
        out.append(ComponentStats(comp, edges2 / len(comp), radius, center))
    return out


@dataclass(frozen=True)
class LevelPair:
    index: int
    subgraph: Graph

    @property
    def average_degree(self) -> float:
        return self.subgraph.average_degree


def level_pairs(g: Graph, layering: BfsLayering) -> list[LevelPair]:
    """Induced subgraphs on consecutive layer pairs, densest first (ties: smallest index)."""
    layers = layering.layers
    if len(layers) < 2:
        return [LevelPair(0, g.induced(layers[0]))]
    pairs = [LevelPair(i, g.induced(layers[i] | layers[i + 1])) for i in range(len(layers) - 1)]
    return sorted(pairs, key=lambda p: (-p.average_degree, p.index))


def densest_level_pair(g: Graph, layering: BfsLayering) -> LevelPair:
    return level_pairs(g, layering)[0]


@dataclass(frozen=True)
class Cut:
    subgraph: Graph
    side: frozenset[int]

    @property
    def size(self) -> int:
        return self.subgraph.m


def max_cut_bipartite_subgraph(g: Graph) -> Cut:
    """Bipartite spanning subgraph from a locally optimal cut.

    Greedy placement seeds the sides; then any vertex with more neighbours on
    its own side than across is flipped until none remain. At a local optimum
    every vertex keeps at least half its edges, so the cut has at least
    ceil(m/2) edges.
    """
    side = [0] * g.n
    placed = [False] * g.n
    for v in range(g.n):
        same = sum(1 for w in g.adj[v] if placed[w] and side[w] == 0)
        other = sum(1 for w in g.adj[v] if placed[w] and side[w] == 1)
        side[v] = 1 if same > other else 0
        placed[v] = True
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            own = sum(1 for w in g.adj[v] if side[w] == side[v])
            if 2 * own > g.degree(v):
                side[v] ^= 1
                improved = True
    crossing = [(u, v) for u, v in g.sorted_edges() if side[u] != side[v]]
    return Cut(g.edge_subgraph(crossing), frozenset(v for v in range(g.n) if side[v] == 0))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
