import pytest

from cyclespectra.chromatic import (
    ChromaticError,
    ColoringBudgetExceeded,
    ColoringWitness,
    chromatic_number,
    consecutive_cycles_chromatic,
    critical_subgraph,
    gyarfas_check,
    is_colorable,
    odd_cycle,
    odd_theta,
    parity_paths,
)
from cyclespectra.generators import cage, complete, complete_bipartite, cycle, disjoint_union, gnp, path, wheel
from cyclespectra.graph import CycleWitness, Graph, cut_vertices, is_connected

from oracles import atlas, brute_chromatic


def test_chromatic_number_matches_brute_force_on_small_graphs():
    for g in atlas(connected=False, min_n=1)[::3]:
        chi, w = chromatic_number(g)
        assert chi == brute_chromatic(g)
        assert w.is_valid(g) and w.color_count == chi


@pytest.mark.parametrize(
    "g, chi",
    [
        (complete(6), 6),
        (cycle(7), 3),
        (cycle(8), 2),
        (cage("petersen"), 3),
        (wheel(5), 4),
        (complete_bipartite(3, 4), 2),
        (Graph(4), 1),
        (Graph(0), 0),
        (disjoint_union(complete(4), cycle(5)), 4),
    ],
)
def test_known_chromatic_numbers(g, chi):
    got, w = chromatic_number(g)
    assert got == chi
    assert w.is_valid(g)


def test_chromatic_budget():
    with pytest.raises(ColoringBudgetExceeded):
        chromatic_number(gnp(40, 0.5, seed=3), budget=5)


def test_is_colorable():
    assert is_colorable(cycle(6), 2)
    assert not is_colorable(cycle(7), 2)
    assert is_colorable(cage("petersen"), 3)


def test_coloring_witness_problems():
    g = cycle(4)
    assert ColoringWitness((0, 1, 0, 1)).is_valid(g)
    assert ColoringWitness((0, 0, 1, 1)).problems(g)
    assert ColoringWitness((0, 1)).problems(g) == ["2 colours for 4 vertices"]


@pytest.mark.parametrize("seed", range(4))
def test_critical_subgraph_is_vertex_and_edge_critical(seed):
    g = gnp(11, 0.55, seed=seed)
    chi, _ = chromatic_number(g)
    h = critical_subgraph(g, chi)
    assert chromatic_number(h)[0] == chi
    for v in range(h.n):
        assert chromatic_number(h.induced([u for u in range(h.n) if u != v]))[0] < chi
    for e in h.sorted_edges():
        assert chromatic_number(Graph(h.n, [f for f in h.edges if f != e]))[0] < chi
    assert all(g.has_edge(*map(h.labels.__getitem__, e)) for e in h.edges)
    if chi >= 3:
        assert is_connected(h) and not cut_vertices(h)


def test_critical_subgraph_of_odd_wheel_plus_tail():
    g = Graph(8, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)] + [(5, 6), (6, 7)])
    h = critical_subgraph(g, 4)
    assert h.n == 6 and h.m == 10
    with pytest.raises(ChromaticError):
        critical_subgraph(cycle(8), 3)


def test_odd_cycle():
    c = odd_cycle(cage("petersen"))
    assert c.length % 2 == 1 and c.is_valid(cage("petersen"))
    with pytest.raises(ChromaticError):
        odd_cycle(cycle(6))


@pytest.mark.parametrize("g", [cage("petersen"), complete(5), wheel(6), gnp(14, 0.4, seed=8)])
def test_parity_paths(g):
    if cut_vertices(g) or not is_connected(g):
        pytest.skip("needs a 2-connected graph")
    for u, v in [(0, 1), (0, g.n - 1), (2, g.n - 2)]:
        odd, even = parity_paths(g, u, v)
        for p in (odd, even):
            assert p.is_valid(g) and {p.vertices[0], p.vertices[-1]} == {u, v}
        assert odd.length % 2 == 1 and even.length % 2 == 0


def test_parity_paths_rejects_bad_inputs():
    with pytest.raises(ChromaticError):
        parity_paths(cycle(6), 0, 3)
    with pytest.raises(ChromaticError):
        parity_paths(path(4), 0, 3)
    with pytest.raises(ChromaticError):
        parity_paths(cycle(5), 1, 1)


def test_odd_theta_on_wheel():
    g = wheel(6)  # hub 0, rim 1..6
    c = CycleWitness((1, 2, 3, 4, 5, 6))
    th = odd_theta(g, c)
    assert th.problems() == []
    assert not th.is_bipartite
    assert th.vertices >= set(c.vertices)
    with pytest.raises(ChromaticError):
        odd_theta(g, CycleWitness((0, 1, 2)))
    with pytest.raises(ChromaticError):
        odd_theta(complete_bipartite(3, 3), CycleWitness((0, 3, 1, 4)))


def test_consecutive_cycles_chromatic_on_k9():
    g = complete(9)
    cert = consecutive_cycles_chromatic(g)
    assert cert.is_valid(g)
    assert cert.parity == "any"
    assert cert.run[1] >= 3 and any(ell % 2 for ell in cert.lengths)
    stages = {s["stage"] for s in cert.stages}
    assert {"critical", "even_cycle", "odd_theta", "partition", "run"} <= stages


def test_consecutive_cycles_chromatic_falls_back_when_layers_are_bipartite():
    g = cage("petersen")
    cert = consecutive_cycles_chromatic(g)
    assert cert.is_valid(g)
    assert cert.stages[-1]["stage"] == "fallback"
    assert cert.run == (5, 2)


def test_consecutive_cycles_chromatic_on_bipartite_input():
    g = complete_bipartite(8, 8)
    cert = consecutive_cycles_chromatic(g)
    assert cert.is_valid(g) and cert.parity == "even"
    assert any(s.get("status") == "unreachable" for s in cert.stages)


@pytest.mark.parametrize("seed", range(3))
def test_consecutive_cycles_chromatic_on_dense_random_graphs(seed):
    g = gnp(24, 0.7, seed=seed)
    cert = consecutive_cycles_chromatic(g, seed=seed)
    assert cert.is_valid(g)
    assert cert.run[1] >= 3


def test_gyarfas_check():
    for d in range(1, 5):
        res = gyarfas_check(complete(2 * d + 1))
        assert res.chi == 2 * d + 1 and res.odd_count == d == res.required and res.passes
    res = gyarfas_check(cage("petersen"))
    assert (res.chi, res.odd_count, res.required) == (3, 2, 1)
