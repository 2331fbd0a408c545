"""Search streams of graphs for cycle-length counterexample candidates.

Two targets are supported: powers of two in graphs of minimum degree at
least three, and one more than a power of two in graphs of chromatic number
at least four. A graph becomes a candidate only when the search proves it
has no cycle with a target length; graphs the budget cannot settle are
listed as unknown and never reported as candidates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .chromatic import CHI_BUDGET, chromatic_number
from .generators import gnp, random_min_degree, random_regular
from .graph import Graph
from .io import format_edge_list
from .spectrum import DEFAULT_BUDGET, BudgetExceeded, cycle_spectrum, find_cycle_in


def powers_of_two_up_to(n: int) -> list[int]:
    out, v = [], 4
    while v <= n:
        out.append(v)
        v *= 2
    return out


def powers_of_two_plus_one_up_to(n: int) -> list[int]:
    out, v = [], 2
    while v + 1 <= n:
        out.append(v + 1)
        v *= 2
    return out


def min_degree_filter(g: Graph, k: int) -> bool:
    return g.n > 0 and g.min_degree >= k


@dataclass
class ScanReport:
    target: str
    parameters: dict
    seed: int | None = None
    instances_checked: int = 0
    filtered: int = 0
    unknown: list[int] = field(default_factory=list)
    counterexample_candidates: list[tuple[Graph, tuple[int, ...]]] = field(default_factory=list)

    def merge(self, other: ScanReport) -> ScanReport:
        """Combine two reports over disjoint parts of a stream."""
        if other.target != self.target:
            raise ValueError("cannot merge reports for different targets")
        return ScanReport(
            self.target,
            dict(self.parameters),
            self.seed,
            self.instances_checked + other.instances_checked,
            self.filtered + other.filtered,
            sorted(self.unknown + other.unknown),
            self.counterexample_candidates + other.counterexample_candidates,
        )

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "parameters": self.parameters,
            "seed": self.seed,
            "instances_checked": self.instances_checked,
            "filtered": self.filtered,
            "unknown": len(self.unknown),
            "unknown_indices": self.unknown,
            "candidates": [
                {"edge_list": format_edge_list(g), "spectrum": list(s)} for g, s in self.counterexample_candidates
            ],
        }


def _scan(
    source: Iterable[Graph],
    target: str,
    targets_for: Callable[[int], list[int]],
    precondition: Callable[[Graph], bool],
    limit: int | None,
    budget: int,
    parameters: dict,
    seed: int | None,
) -> ScanReport:
    report = ScanReport(target, parameters, seed)
    for index, g in enumerate(source):
        if limit is not None and report.instances_checked >= limit:
            break
        if not precondition(g):
            report.filtered += 1
            continue
        report.instances_checked += 1
        try:
            hit = find_cycle_in(g, targets_for(g.n), budget)
        except BudgetExceeded:
            report.unknown.append(index)
            continue
        if hit is None:
            s = cycle_spectrum(g, budget=budget)
            if not s.exhaustive:
                report.unknown.append(index)
                continue
            report.counterexample_candidates.append((g, s.lengths))
    return report


def erdos_gyarfas_scan(
    source: Iterable[Graph],
    limit: int | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
) -> ScanReport:
    """Graphs of minimum degree >= 3 with no cycle whose length is a power of two."""
    return _scan(
        source,
        "pow2",
        powers_of_two_up_to,
        lambda g: min_degree_filter(g, 3),
        limit,
        budget,
        {"min_degree": 3, "limit": limit, "budget": budget},
        seed,
    )


def power_plus_one_scan(
    source: Iterable[Graph],
    limit: int | None = None,
    budget: int = DEFAULT_BUDGET,
    chi_budget: int = CHI_BUDGET,
    seed: int | None = None,
) -> ScanReport:
    """Graphs of chromatic number >= 4 with no cycle of length 2^k + 1."""
    return _scan(
        source,
        "pow2plus1",
        powers_of_two_plus_one_up_to,
        lambda g: chromatic_number(g, chi_budget)[0] >= 4,
        limit,
        budget,
        {"min_chromatic": 4, "limit": limit, "budget": budget, "chi_budget": chi_budget},
        seed,
    )


# -- internal samplers -------------------------------------------------------------


def random_cubic_source(n: int, seed: int = 0) -> Iterator[Graph]:
    for i in itertools.count():
        yield random_regular(n, 3, seed + i)


def random_min_degree_source(n: int, k: int = 3, seed: int = 0, p: float = 0.0) -> Iterator[Graph]:
    for i in itertools.count():
        yield random_min_degree(n, k, seed + i, p)


def random_gnp_source(n_lo: int, n_hi: int, p: float, seed: int = 0) -> Iterator[Graph]:
    """G(n, p) with n cycling through n_lo..n_hi; paired with a chromatic filter downstream."""
    sizes = list(range(n_lo, n_hi + 1))
    for i in itertools.count():
        yield gnp(sizes[i % len(sizes)], p, seed + i)
