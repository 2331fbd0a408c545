"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

import gzip
import itertools
from decimal import Decimal, getcontext
from pathlib import Path

import networkx as nx

from cyclespectra.graph import Graph

DATA = Path(__file__).parent / "data"


def naive_spectrum(g: Graph) -> set[int]:
    """Cycle lengths by trying every vertex subset and every cyclic order of it."""
    found = set()
    for k in range(3, g.n + 1):
        for subset in itertools.combinations(range(g.n), k):
            if any(sum(g.has_edge(v, w) for w in subset) < 2 for v in subset):
                continue
            first, rest = subset[0], subset[1:]
            for perm in itertools.permutations(rest):
                if perm[0] > perm[-1]:
                    continue
                order = (first,) + perm
                if all(g.has_edge(order[i], order[(i + 1) % k]) for i in range(k)):
                    found.add(k)
                    break
            if k in found:
                break
    return found


def brute_chromatic(g: Graph) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n - 1):
            c = (0,) + colors
            if all(c[u] != c[v] for u, v in g.edges):
                return k
    return g.n


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph(len(index), [(index[u], index[v]) for u, v in h.edges])


def atlas(connected: bool = True, min_n: int = 1) -> list[Graph]:
    """Every graph on at most 7 vertices, from the networkx atlas."""
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() < min_n:
            continue
        if connected and not nx.is_connected(h):
            continue
        out.append(from_nx(h))
    return out


def graph6_file(name: str) -> list[Graph]:
    path = DATA / name
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rb") as fh:
        return [from_nx(nx.from_graph6_bytes(line.strip())) for line in fh if line.strip()]


def decimal_ln(x: int | Decimal, digits: int = 50) -> Decimal:
    getcontext().prec = digits
    return Decimal(x).ln()


def theorem3_reference(pi: list[int], sigma_members: list[int], n: int, digits: int = 50) -> Decimal:
    """6r + sum 2 ln Delta(i) / pi(i-1) + 2 ln n / pi(r), gaps read off an explicit member list."""
    getcontext().prec = digits
    r = len(pi)
    full = [1] + list(pi)
    total = Decimal(6 * r)
    for i in range(1, r + 1):
        if i == 1:
            d = pi[0]
        else:
            upto = [v for v in sigma_members if v <= pi[i - 1]]
            d = max(b - a for a, b in zip(upto, upto[1:]))
        total += 2 * decimal_ln(d, digits) / full[i - 1]
    total += 2 * decimal_ln(n, digits) / full[r]
    return total
