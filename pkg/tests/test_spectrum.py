import networkx as nx
import pytest
from hypothesis import given, settings

from cyclespectra.generators import cage, complete, complete_bipartite, cycle, gnp, path, theta_graph
from cyclespectra.graph import Graph
from cyclespectra.spectrum import (
    BudgetExceeded,
    SpectrumError,
    cycle_spectrum,
    find_cycle_in,
    has_cycle_of_length,
    longest_run,
    odd_length_count,
    reciprocal_sum,
)

from oracles import naive_spectrum
from test_graph import graphs, to_nx


def test_known_spectra():
    assert cycle_spectrum(cage("petersen")).lengths == (5, 6, 8, 9)
    assert cycle_spectrum(complete(6)).lengths == (3, 4, 5, 6)
    assert cycle_spectrum(complete_bipartite(3, 5)).lengths == (4, 6)
    assert cycle_spectrum(path(7)).lengths == ()
    assert cycle_spectrum(theta_graph(2, 3, 4).graph).lengths == (5, 6, 7)
    assert cycle_spectrum(Graph(0)).lengths == ()


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=8))
def test_spectrum_matches_naive_oracle(g):
    assert set(cycle_spectrum(g).lengths) == naive_spectrum(g)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_spectrum_matches_networkx_cycles(g):
    expected = {len(c) for c in nx.simple_cycles(to_nx(g))}
    assert set(cycle_spectrum(g).lengths) == expected


def test_witnesses_are_valid_cycles():
    g = cage("heawood")
    s = cycle_spectrum(g, witnesses=True)
    assert sorted(s.witnesses) == list(s.lengths)
    for ell, c in s.witnesses.items():
        assert c.length == ell and c.is_valid(g)


def test_max_len_caps_the_search():
    s = cycle_spectrum(complete(8), max_len=5)
    assert s.lengths == (3, 4, 5) and s.exhaustive


def test_budget_exhaustion_is_partial_not_wrong():
    g = gnp(22, 0.5, seed=1)
    s = cycle_spectrum(g, budget=50)
    assert not s.exhaustive
    full = cycle_spectrum(g)
    assert set(s.lengths) <= set(full.lengths)
    assert all(ell in s.lengths for ell in range(3, s.exhaustive_up_to + 1) if ell in full.lengths)
    with pytest.raises(SpectrumError):
        reciprocal_sum(s)


def test_has_cycle_of_length():
    g = cage("petersen")
    assert has_cycle_of_length(g, 7) is None
    c = has_cycle_of_length(g, 9)
    assert c.length == 9 and c.is_valid(g)
    assert has_cycle_of_length(g, 11) is None
    with pytest.raises(SpectrumError):
        has_cycle_of_length(g, 2)
    with pytest.raises(BudgetExceeded):
        has_cycle_of_length(gnp(30, 0.3, seed=2), 29, budget=10)


def test_find_cycle_in():
    g = cage("petersen")
    assert find_cycle_in(g, [4, 7]) is None
    assert find_cycle_in(g, [4, 8]).length == 8
    assert find_cycle_in(g, []) is None


def test_statistics():
    s = cycle_spectrum(complete(5))
    assert reciprocal_sum(s) == pytest.approx(1 / 3 + 1 / 4 + 1 / 5)
    assert odd_length_count(s) == 2
    assert longest_run(s) == (3, 3)
    assert longest_run([4, 6, 8, 9, 11, 12], "even") == (4, 3)
    assert longest_run([3, 7, 9, 11], "odd") == (7, 3)
    assert longest_run([]) == (0, 0)
    with pytest.raises(ValueError):
        longest_run([3], "prime")


def test_cycle_is_its_only_length():
    for n in range(3, 12):
        assert cycle_spectrum(cycle(n)).lengths == (n,)
