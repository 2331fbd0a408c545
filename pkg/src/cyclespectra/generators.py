"""Named graphs, parametric families and the seeded random models."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, GraphError, girth


class GeneratorError(ValueError):
    pass


def complete(n: int) -> Graph:
    if n < 1:
        raise GeneratorError("complete graph needs n >= 1")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(r: int, s: int) -> Graph:
    if r < 1 or s < 1:
        raise GeneratorError("complete bipartite graph needs both parts nonempty")
    return Graph(r + s, [(u, r + v) for u in range(r) for v in range(s)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GeneratorError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GeneratorError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def wheel(rim: int) -> Graph:
    """Hub 0 joined to every vertex of a ``rim``-cycle on 1..rim."""
    if rim < 3:
        raise GeneratorError("wheel needs a rim of at least 3")
    rim_edges = [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph(rim + 1, rim_edges + [(0, 1 + i) for i in range(rim)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


@dataclass(frozen=True)
class Theta:
    graph: Graph
    hubs: tuple[int, int]
    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def theta_graph(a: int, b: int, c: int) -> Theta:
    """Two hubs (0 and 1) joined by internally disjoint paths of lengths a <= b <= c."""
    if not (1 <= a <= b <= c):
        raise GeneratorError("theta graph needs 1 <= a <= b <= c")
    if b < 2:
        raise GeneratorError("at most one theta path may have length 1")
    edges = []
    paths = []
    nxt = 2
    for length in (a, b, c):
        verts = [0] + list(range(nxt, nxt + length - 1)) + [1]
        nxt += length - 1
        edges.extend(zip(verts, verts[1:]))
        paths.append(tuple(verts))
    return Theta(Graph(nxt, edges), (0, 1), tuple(paths))


# Petersen: outer 5-cycle, spokes, inner pentagram.
_PETERSEN = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)

# Hamiltonian cages in LCF notation: (shifts, repeats).
_LCF = {
    "heawood": ([5, -5], 7),
    "mcgee": ([12, 7, -7], 8),
    "tutte_coxeter": ([-13, -9, 7, -7, 9, 13], 5),
}

CAGES = {
    "petersen": (10, 3, 5),
    "heawood": (14, 3, 6),
    "mcgee": (24, 3, 7),
    "tutte_coxeter": (30, 3, 8),
}


def _lcf(shifts: list[int], repeats: int) -> Graph:
    n = len(shifts) * repeats
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    for i in range(n):
        j = (i + shifts[i % len(shifts)]) % n
        edges.add(tuple(sorted((i, j))))
    return Graph(n, sorted(edges))


def cage(name: str) -> Graph:
    if name not in CAGES:
        raise GeneratorError(f"unknown cage {name!r}; known: {', '.join(sorted(CAGES))}")
    g = Graph(10, _PETERSEN) if name == "petersen" else _lcf(*_LCF[name])
    n, k, gi = CAGES[name]
    if g.n != n or set(g.degrees) != {k} or girth(g) != gi:
        raise GeneratorError(f"embedded edge list for {name} failed its self-check")
    return g


def random_regular(n: int, d: int, seed: int = 0, max_restarts: int = 1000) -> Graph:
    """d-regular simple graph from the pairing model.

    Pairs are drawn one at a time and a pair that would create a loop or a
    repeated edge is redrawn (Steger-Wormald style); whole-matching rejection
    almost never succeeds once d is above ~6. A matching that gets stuck is
    restarted, up to ``max_restarts`` times.
    """
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise GeneratorError(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(max_restarts):
        points = [v for v in range(n) for _ in range(d)]
        edges: set[tuple[int, int]] = set()
        stuck = False
        while points:
            for _attempt in range(100):
                i = rng.randrange(len(points))
                j = rng.randrange(len(points))
                u, v = points[i], points[j]
                e = (u, v) if u < v else (v, u)
                if i != j and u != v and e not in edges:
                    break
            else:
                stuck = True
                break
            edges.add(e)
            for k in sorted((i, j), reverse=True):
                points[k] = points[-1]
                points.pop()
        if not stuck:
            return Graph(n, sorted(edges))
    raise GeneratorError(f"pairing model rejected {max_restarts} attempts for n={n}, d={d}")


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_min_degree(n: int, k: int, seed: int = 0, p: float = 0.0) -> Graph:
    """Random graph with minimum degree at least ``k``: G(n, p) topped up with random edges."""
    if k >= n:
        raise GeneratorError(f"minimum degree {k} impossible on {n} vertices")
    rng = random.Random(seed)
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v in rng.sample(range(n), n):
        while deg[v] < k:
            w = rng.choice([w for w in range(n) if w != v and (min(v, w), max(v, w)) not in edges])
            edges.add((min(v, w), max(v, w)))
            deg[v] += 1
            deg[w] += 1
    return Graph(n, sorted(edges))


GENERATOR_KINDS = ("complete", "complete_bipartite", "cycle", "path", "theta", "cage", "random_regular")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    parameters: tuple[int, ...] = ()
    seed: int = 0
    name: str | None = None

    def build(self) -> Graph:
        p = self.parameters
        try:
            if self.kind == "complete":
                return complete(*p)
            if self.kind == "complete_bipartite":
                return complete_bipartite(*p)
            if self.kind == "cycle":
                return cycle(*p)
            if self.kind == "path":
                return path(*p)
            if self.kind == "theta":
                return theta_graph(*p).graph
            if self.kind == "cage":
                return cage(self.name or "")
            if self.kind == "random_regular":
                return random_regular(*p, seed=self.seed)
        except TypeError as exc:
            raise GeneratorError(f"bad parameters {p} for {self.kind}: {exc}") from None
        except GraphError as exc:
            raise GeneratorError(str(exc)) from None
        raise GeneratorError(f"unknown generator kind {self.kind!r}")
