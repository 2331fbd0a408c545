"""Exact colouring and the odd-theta route to consecutive cycle lengths.

A layer of high chromatic number inside a BFS layering contains a critical
subgraph, which is 2-connected and non-bipartite. There every pair of
vertices is joined by paths of both parities, and every even cycle sits in
a theta graph with an odd cycle. Paths of all lengths between the two
branches of the BFS tree above that theta then close into cycles of
consecutive lengths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .extraction import (
    CycleFamilyCertificate,
    ExtractionError,
    PipelineFailure,
    ThetaSubgraph,
    ab_path_lengths,
    consecutive_even_cycles,
    locate_theta,
)
from .graph import (
    CycleWitness,
    Graph,
    PathWitness,
    bfs_distances,
    bfs_layering,
    components,
    cut_vertices,
    is_bipartite,
    is_connected,
)
from .spectrum import DEFAULT_BUDGET, BudgetExceeded, cycle_spectrum, has_cycle_of_length, longest_run

CHI_BUDGET = 10_000_000
EVEN_CYCLE_BUDGET = 100_000


class ChromaticError(ValueError):
    pass


class ColoringBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ColoringWitness:
    colors: tuple[int, ...]

    @property
    def color_count(self) -> int:
        return len(set(self.colors))

    def problems(self, g: Graph) -> list[str]:
        if len(self.colors) != g.n:
            return [f"{len(self.colors)} colours for {g.n} vertices"]
        return [f"edge ({u}, {v}) is monochromatic" for u, v in g.sorted_edges() if self.colors[u] == self.colors[v]]

    def is_valid(self, g: Graph) -> bool:
        return not self.problems(g)


# -- exact colouring ---------------------------------------------------------


def _greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    for v in sorted(range(g.n), key=lambda x: -g.degree(x)):
        clique = [v]
        cand = g.masks[v]
        while cand:
            w = max((u for u in range(g.n) if cand >> u & 1), key=lambda u: ((cand & g.masks[u]).bit_count(), -u))
            clique.append(w)
            cand &= g.masks[w]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur_greedy(g: Graph) -> list[int]:
    color = [-1] * g.n
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if color[u] < 0),
            key=lambda u: (len({color[w] for w in g.adj[u] if color[w] >= 0}), g.degree(u), -u),
        )
        taken = {color[w] for w in g.adj[v]}
        color[v] = next(c for c in range(g.n) if c not in taken)
    return color


def _k_coloring(g: Graph, k: int, clique: list[int], state: dict) -> list[int] | None:
    """A proper k-colouring by DSATUR backtracking, or ``None`` if there is none."""
    n = g.n
    if len(clique) > k:
        return None
    if n == 0:
        return []
    if k == 0:
        return None
    adj = g.adj
    color = [-1] * n
    count = [[0] * k for _ in range(n)]
    sat = [0] * n

    def assign(v: int, c: int) -> None:
        color[v] = c
        for w in adj[v]:
            if count[w][c] == 0:
                sat[w] += 1
            count[w][c] += 1

    def unassign(v: int, c: int) -> None:
        color[v] = -1
        for w in adj[v]:
            count[w][c] -= 1
            if count[w][c] == 0:
                sat[w] -= 1

    # Colours of a clique can be fixed up to symmetry.
    for c, v in enumerate(clique):
        assign(v, c)

    def rec(used: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        state["nodes"] += 1
        if state["nodes"] > state["budget"]:
            raise ColoringBudgetExceeded(f"colouring search exceeded {state['budget']} nodes")
        v = -1
        key = (-1, -1)
        for u in range(n):
            if color[u] < 0 and (sat[u], len(adj[u])) > key:
                v, key = u, (sat[u], len(adj[u]))
        if sat[v] >= k:
            return False
        for c in range(min(used + 1, k)):
            if count[v][c] == 0:
                assign(v, c)
                if rec(max(used, c + 1), remaining - 1):
                    return True
                unassign(v, c)
        return False

    return list(color) if rec(len(clique), n - len(clique)) else None


def _component_chi(g: Graph, state: dict) -> tuple[int, list[int]]:
    if g.n == 0:
        return 0, []
    clique = _greedy_clique(g)
    upper = _dsatur_greedy(g)
    ub = max(upper) + 1
    for k in range(len(clique), ub):
        found = _k_coloring(g, k, clique, state)
        if found is not None:
            return k, found
    return ub, upper


def chromatic_number(g: Graph, budget: int = CHI_BUDGET) -> tuple[int, ColoringWitness]:
    """Exact chromatic number with an optimal colouring.

    Each component is solved separately: a greedy clique gives the lower
    bound, greedy DSATUR the upper bound, and DSATUR backtracking settles
    each k in between. Raises ``ColoringBudgetExceeded`` rather than return
    an unproven value.
    """
    state = {"nodes": 0, "budget": budget}
    colors = [0] * g.n
    chi = 0
    for comp in components(g):
        sub = g.induced(comp)
        k, col = _component_chi(sub, state)
        chi = max(chi, k)
        for i, v in enumerate(sorted(comp)):
            colors[v] = col[i]
    return chi, ColoringWitness(tuple(colors))


def is_colorable(g: Graph, k: int, budget: int = CHI_BUDGET) -> bool:
    state = {"nodes": 0, "budget": budget}
    for comp in components(g):
        sub = g.induced(comp)
        if _k_coloring(sub, k, _greedy_clique(sub), state) is None:
            return False
    return True


# -- critical subgraphs ------------------------------------------------------


def critical_subgraph(g: Graph, d: int, budget: int = CHI_BUDGET) -> Graph:
    """Minimal subgraph of chromatic number at least ``d``.

    Vertices are deleted greedily while the rest still needs ``d`` colours,
    then edges likewise. The result carries labels back to ``g``.
    """
    if d < 1:
        raise ChromaticError("d must be positive")
    if is_colorable(g, d - 1, budget):
        raise ChromaticError(f"graph is {d - 1}-colourable, so it has no {d}-chromatic subgraph")
    keep = list(range(g.n))
    for v in range(g.n):
        trial = [u for u in keep if u != v]
        if not is_colorable(g.induced(trial), d - 1, budget):
            keep = trial
    h = g.induced(keep)
    edges = h.sorted_edges()
    for e in list(edges):
        trial = [f for f in edges if f != e]
        if not is_colorable(Graph(h.n, trial), d - 1, budget):
            edges = trial
    h = Graph(h.n, edges, h.labels)
    if d >= 3 and (not is_connected(h) or cut_vertices(h)):
        raise ChromaticError("critical subgraph is not 2-connected")
    return h


# -- parity paths ------------------------------------------------------------


def odd_cycle(g: Graph) -> CycleWitness:
    """A short odd cycle from a BFS edge inside one layer; ``ChromaticError`` if bipartite."""
    for comp in components(g):
        root = min(comp)
        layering = bfs_layering(g, root)
        for u in sorted(comp):
            for w in g.adj[u]:
                if u < w and layering.depth.get(w) == layering.depth[u]:
                    return CycleWitness(tuple(layering.tree_path(u, w)))
    raise ChromaticError("graph is bipartite")


def _disjoint_paths_to(g: Graph, sources: list[int], targets: set[int]) -> list[list[int]]:
    """Vertex-disjoint paths from each source to distinct targets (unit vertex capacities).

    Max-flow on the split graph with breadth-first augmentation; each path is
    cut at its first target vertex.
    """
    n = g.n
    src, sink = 2 * n, 2 * n + 1
    cap: dict[tuple[int, int], int] = {}
    nbr: dict[int, set[int]] = {x: set() for x in range(2 * n + 2)}

    def arc(a: int, b: int, c: int) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        nbr[a].add(b)
        nbr[b].add(a)

    for v in range(n):
        arc(2 * v, 2 * v + 1, 1)
        for w in g.adj[v]:
            arc(2 * v + 1, 2 * w, 1)
    for s in sources:
        arc(src, 2 * s, 1)
    for t in targets:
        arc(2 * t + 1, sink, 1)
    flow = 0
    while flow < len(sources):
        prev = {src: src}
        queue = deque([src])
        while queue and sink not in prev:
            a = queue.popleft()
            for b in sorted(nbr[a]):
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            raise ChromaticError(f"no {len(sources)} disjoint paths to the target set")
        b = sink
        while b != src:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    paths = []
    for s in sources:
        path = [s]
        while path[-1] not in targets:
            v = path[-1]
            path.append(next(w for w in g.adj[v] if cap[(2 * v + 1, 2 * w)] == 0))
        paths.append(path)
    return paths


def parity_paths(h: Graph, u: int, v: int) -> tuple[PathWitness, PathWitness]:
    """A u-v path of odd length and one of even length in a 2-connected non-bipartite graph.

    Two disjoint paths lead from u and v onto an odd cycle; going round the
    cycle either way between their landing points gives lengths of opposite
    parity.
    """
    h.check_vertices((u, v))
    if u == v:
        raise ChromaticError("endpoints must differ")
    if h.n < 3 or not is_connected(h) or cut_vertices(h):
        raise ChromaticError("graph is not 2-connected")
    if is_bipartite(h):
        raise ChromaticError("graph is bipartite")
    cyc = list(odd_cycle(h).vertices)
    pu, pv = _disjoint_paths_to(h, [u, v], set(cyc))
    w, x = pu[-1], pv[-1]
    i, j = cyc.index(w), cyc.index(x)
    k = len(cyc)
    forward = [cyc[(i + t) % k] for t in range((j - i) % k + 1)]
    backward = [cyc[(i - t) % k] for t in range((i - j) % k + 1)]
    out = []
    for arc in (forward, backward):
        out.append(PathWitness(tuple(pu[:-1] + arc + pv[::-1][1:])))
    out.sort(key=lambda p: p.length % 2 == 0)
    odd, even = out
    if odd.length % 2 != 1 or even.length % 2 != 0:
        raise ChromaticError("parity routing failed")
    return odd, even


# -- odd theta ---------------------------------------------------------------


def _parity_bfs(h: Graph, a: int, b: int, blocked: set[int], parity: int) -> list[int] | None:
    """Shortest a-b walk of the given parity avoiding ``blocked`` in its interior."""
    start = (a, 0)
    prev = {start: None}
    queue = deque([start])
    while queue:
        v, p = queue.popleft()
        for w in h.adj[v]:
            state = (w, 1 - p)
            if w == b:
                if 1 - p == parity:
                    walk = [w, v]
                    node = (v, p)
                    while prev[node] is not None:
                        node = prev[node]
                        walk.append(node[0])
                    return walk[::-1]
                continue
            if w in blocked or w == a or state in prev:
                continue
            prev[state] = (v, p)
            queue.append(state)
    return None


def _dfs_parity_path(h: Graph, a: int, b: int, blocked: set[int], parity: int, budget: int) -> list[int] | None:
    """Shortest simple a-b path of the given parity, interior off ``blocked`` (bounded DFS)."""
    best: list[int] | None = None
    count = 0
    path = [a]
    on = {a}

    def rec() -> None:
        nonlocal best, count
        count += 1
        if count > budget:
            return
        v = path[-1]
        if best is not None and len(path) >= len(best):
            return
        for w in h.adj[v]:
            if w == b:
                if len(path) % 2 == parity and (best is None or len(path) + 1 < len(best)):
                    best = path + [b]
                continue
            if w in on or w in blocked:
                continue
            path.append(w)
            on.add(w)
            rec()
            on.discard(path.pop())

    rec()
    return best


def odd_theta(h: Graph, c: CycleWitness, budget: int = 200_000) -> ThetaSubgraph:
    """Non-bipartite theta in ``h`` made of the even cycle ``c`` and one path across it.

    The path leaves ``c`` at one vertex and returns at another, avoiding ``c``
    in between, with length parity opposite to the distance round ``c``
    between its ends; the shortest such path is used.
    """
    if not c.is_valid(h):
        raise ChromaticError(f"cycle is not valid in the graph: {c.problems(h)}")
    if c.length % 2:
        raise ChromaticError("odd_theta needs an even cycle")
    if is_bipartite(h):
        raise ChromaticError("bipartite graphs have no odd theta")
    cyc = list(c.vertices)
    k = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    on_cycle = set(cyc)
    best: list[int] | None = None
    for a in cyc:
        for b in cyc:
            if a == b:
                continue
            gap = (pos[b] - pos[a]) % k
            want = 1 - gap % 2
            blocked = on_cycle - {a, b}
            walk = _parity_bfs(h, a, b, blocked, want)
            if walk is None:
                continue
            if len(set(walk)) != len(walk):
                walk = _dfs_parity_path(h, a, b, blocked, want, budget)
                if walk is None:
                    continue
            if best is None or len(walk) < len(best):
                best = walk
    if best is None:
        raise ChromaticError(f"no parity-mismatched path across the {k}-cycle")
    a, b = best[0], best[-1]
    i, j = pos[a], pos[b]
    forward = tuple(cyc[(i + t) % k] for t in range((j - i) % k + 1))
    backward = tuple(cyc[(i - t) % k] for t in range((i - j) % k + 1))
    theta = ThetaSubgraph((a, b), (PathWitness(tuple(best)), PathWitness(forward), PathWitness(backward)), h)
    bad = theta.problems()
    if bad:
        raise ChromaticError(f"odd theta construction failed: {bad}")
    return theta


# -- consecutive cycles ------------------------------------------------------


def _even_cycle(h: Graph, budget: int) -> CycleWitness:
    """Longest even cycle a budgeted search can settle, else one from a bipartite theta."""
    for ell in range(h.n - h.n % 2, 3, -2):
        try:
            found = has_cycle_of_length(h, ell, budget)
        except BudgetExceeded:
            continue
        if found is not None:
            return found
    try:
        return locate_theta(h).longest_cycle()
    except ExtractionError:
        raise ChromaticError("no even cycle found") from None


def _spectrum_fallback(g: Graph, stages: list[dict], reason: str, budget: int) -> CycleFamilyCertificate:
    s = cycle_spectrum(g, witnesses=True, budget=budget)
    start, count = longest_run(s.lengths, "any")
    if count == 0:
        raise PipelineFailure("fallback", "graph has no cycles", stages)
    if not s.exhaustive:
        stages.append({"stage": "fallback_note", "exhaustive_up_to": s.exhaustive_up_to})
    cycles = tuple(s.witnesses[ell] for ell in range(start, start + count))
    stages.append({"stage": "fallback", "method": "spectrum", "reason": reason, "start": start, "count": count})
    cert = CycleFamilyCertificate(cycles, "any", (start, count), tuple(stages))
    bad = cert.problems(g)
    if bad:
        raise PipelineFailure("replay", "; ".join(bad[:5]), stages)
    return cert


def consecutive_cycles_chromatic(
    g: Graph,
    seed: int = 0,
    chi_budget: int = CHI_BUDGET,
    spectrum_budget: int = DEFAULT_BUDGET,
) -> CycleFamilyCertificate:
    """Certificate of consecutive cycle lengths (both parities) driven by chromatic number.

    Bipartite inputs get the even-only certificate. When a stage cannot run
    (the densest layer is bipartite, no even cycle, no odd theta) the run is
    read off the exhaustive spectrum instead, and the certificate says so.
    """
    stages: list[dict] = [{"stage": "input", "vertices": g.n, "edges": g.m, "seed": seed}]
    chi, _ = chromatic_number(g, chi_budget)
    stages.append({"stage": "chromatic", "chi": chi})
    if chi <= 2:
        stages.append({"stage": "odd_theta", "status": "unreachable", "reason": "graph is bipartite"})
        even = consecutive_even_cycles(g, seed=seed)
        return CycleFamilyCertificate(even.cycles, even.parity, even.run, tuple(stages) + even.stages)
    best_comp = None
    for comp in sorted(components(g), key=min):
        k, _ = chromatic_number(g.induced(comp), chi_budget)
        if best_comp is None or k > best_comp[0]:
            best_comp = (k, comp)
    f = g.induced(best_comp[1])
    root = min((max(bfs_distances(f, v).values()), v) for v in range(f.n))[1]
    outer = bfs_layering(f, root)
    layer_chi = [chromatic_number(f.induced(layer), chi_budget)[0] for layer in outer.layers]
    i = max(range(len(layer_chi)), key=lambda t: (layer_chi[t], -t))
    k = layer_chi[i]
    stages.append({"stage": "layering", "root": f.labels[root], "layer": i, "layer_chi": layer_chi})
    if k < 3:
        return _spectrum_fallback(g, stages, f"densest layer has chromatic number {k}", spectrum_budget)
    try:
        crit = critical_subgraph(f.induced(outer.layers[i]), k, chi_budget)
        stages.append({"stage": "critical", "vertices": crit.n, "edges": crit.m, "chi": k})
        c = _even_cycle(crit, EVEN_CYCLE_BUDGET)
        stages.append({"stage": "even_cycle", "length": c.length})
        theta = odd_theta(crit, c)
    except ChromaticError as exc:
        return _spectrum_fallback(g, stages, str(exc), spectrum_budget)
    to_f = f.local_index()
    theta_f = ThetaSubgraph(
        tuple(to_f[crit.labels[v]] for v in theta.hubs),
        tuple(PathWitness(tuple(to_f[crit.labels[v]] for v in p.vertices)) for p in theta.paths),
        f,
    )
    stages.append({"stage": "odd_theta", "path_lengths": list(theta_f.path_lengths), "bipartite": theta_f.is_bipartite})
    verts = sorted(theta_f.vertices)
    top = outer.common_ancestor(verts)
    first = min(verts, key=lambda v: f.labels[v])
    branch = outer.child_toward(top, first)
    a_side = {v for v in verts if outer.child_toward(top, v) == branch}
    half = i - outer.depth[top]
    paths = ab_path_lengths(theta_f, a_side)
    start, count = longest_run([2 * half + ell for ell in paths], "any")
    to_g = g.local_index()
    cycles = []
    for ell in range(start - 2 * half, start - 2 * half + count):
        p = paths[ell].vertices
        tree = outer.tree_path(p[-1], p[0])
        cycles.append(CycleWitness(tuple(to_g[f.labels[v]] for v in tuple(p) + tuple(tree[1:-1]))))
    stages.append({
        "stage": "partition",
        "tree_root": f.labels[top],
        "half_tree_length": half,
        "a_side": sorted(f.labels[v] for v in a_side),
        "ab_lengths": sorted(paths),
    })
    stages.append({"stage": "run", "start": start, "count": count})
    cert = CycleFamilyCertificate(tuple(cycles), "any", (start, count), tuple(stages))
    bad = cert.problems(g)
    if bad:
        raise PipelineFailure("replay", "; ".join(bad[:5]), stages)
    return cert


# -- the odd-length count ----------------------------------------------------


@dataclass(frozen=True)
class GyarfasResult:
    chi: int
    odd_count: int
    required: int

    @property
    def passes(self) -> bool:
        return self.odd_count >= self.required


def gyarfas_check(g: Graph, budget: int = DEFAULT_BUDGET, chi_budget: int = CHI_BUDGET) -> GyarfasResult:
    """Compare the number of odd cycle lengths with floor((chi - 1) / 2)."""
    chi, _ = chromatic_number(g, chi_budget)
    s = cycle_spectrum(g, budget=budget)
    if not s.exhaustive:
        raise BudgetExceeded(f"spectrum only exhaustive up to {s.exhaustive_up_to}", s)
    odd = sum(1 for ell in s.lengths if ell % 2)
    return GyarfasResult(chi, odd, (chi - 1) // 2)
