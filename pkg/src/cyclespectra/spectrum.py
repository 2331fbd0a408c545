"""Exact cycle-length spectra by pruned backtracking.

Each cycle is enumerated from its smallest vertex (the root), visiting only
larger vertices, and is closed only when the second vertex is smaller than
the last one, so every cycle is seen once per orientation class. Because the
question is existence per length, a branch is abandoned as soon as no
still-missing length fits between a lower bound (edges so far plus the BFS
distance back to the root avoiding the path) and an upper bound (edges so far
plus every vertex still reachable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import CycleWitness, Graph, girth, is_bipartite

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """The node-expansion budget ran out before the question was settled."""

    def __init__(self, message: str, partial: CycleSpectrum | None = None):
        super().__init__(message)
        self.partial = partial


class SpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class CycleSpectrum:
    lengths: tuple[int, ...]
    exhaustive_up_to: int
    max_len: int
    witnesses: dict[int, CycleWitness] | None = field(default=None, compare=False)
    expansions: int = field(default=0, compare=False)

    @property
    def exhaustive(self) -> bool:
        return self.exhaustive_up_to >= self.max_len

    def __contains__(self, length: int) -> bool:
        return length in self.lengths

    def __len__(self) -> int:
        return len(self.lengths)


class _Stop(Exception):
    pass


def _search(g: Graph, targets: set[int], want_witness: bool, budget: int, first_only: bool = False):
    """Core DFS. Returns (found lengths -> witness-or-None, expansions, completed)."""
    n = g.n
    masks = g.masks
    need = 0
    for t in targets:
        need |= 1 << t
    found: dict[int, tuple[int, ...] | None] = {}
    state = {"need": need, "count": 0, "over": False}

    def fits(lo: int, hi: int) -> bool:
        if hi < lo:
            return False
        return (state["need"] >> lo) & ((1 << (hi - lo + 1)) - 1) != 0

    def dist_and_reach(v: int, avail: int, root_bit: int) -> tuple[int, int]:
        # BFS from v through avail; returns (distance to root or -1, #reachable avail vertices)
        if masks[v] & root_bit:
            first_hit = 1
        else:
            first_hit = -1
        seen = 1 << v
        frontier = 1 << v
        reach = 0
        d = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            d += 1
            if first_hit < 0 and nxt & root_bit:
                first_hit = d
            nxt &= avail & ~seen
            seen |= nxt
            reach += nxt.bit_count()
            frontier = nxt
        return first_hit, reach

    def dfs(root: int, path: list[int], on_path: int, allowed: int) -> None:
        state["count"] += 1
        if state["count"] > budget:
            state["over"] = True
            raise _Stop
        v = path[-1]
        k = len(path)
        root_bit = 1 << root
        if k >= 3 and masks[v] & root_bit and path[1] < v:
            if (state["need"] >> k) & 1:
                state["need"] &= ~(1 << k)
                found[k] = tuple(path) if want_witness else None
                if first_only or not state["need"]:
                    raise _Stop
        avail = allowed & ~on_path
        dist, reach = dist_and_reach(v, avail, root_bit)
        if dist < 0 or not fits(max(k - 1 + dist, k + 1), k + reach):
            return
        cand = masks[v] & avail
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            dfs(root, path, on_path | low, allowed)
            path.pop()
            if not state["need"]:
                return

    try:
        for root in range(n):
            if not state["need"]:
                break
            allowed = ((1 << n) - 1) & ~((1 << (root + 1)) - 1)
            if (masks[root] & allowed).bit_count() < 2:
                continue
            dfs(root, [root], 1 << root, allowed)
    except _Stop:
        pass
    return found, state["count"], not state["over"]


def cycle_spectrum(
    g: Graph,
    max_len: int | None = None,
    witnesses: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> CycleSpectrum:
    """Set of cycle lengths of ``g`` (up to ``max_len``), exact unless the budget runs out.

    When the budget is exhausted the result is partial: ``exhaustive_up_to``
    is the largest L such that every length <= L is either witnessed or ruled
    out by the girth or by bipartiteness.
    """
    upper = g.n if max_len is None else min(max_len, g.n)
    gi = girth(g)
    bip = is_bipartite(g)
    targets = {ell for ell in range(3, upper + 1) if ell >= gi and not (bip and ell % 2)}
    found, count, completed = _search(g, targets, witnesses, budget)
    lengths = tuple(sorted(found))
    if completed:
        reach = upper
    else:
        reach = 2
        while reach + 1 <= upper and (reach + 1 not in targets or reach + 1 in found):
            reach += 1
    wit = None
    if witnesses:
        wit = {ell: CycleWitness(p) for ell, p in found.items()}
    return CycleSpectrum(lengths, max(reach, 2), max(upper, 2), wit, count)


def has_cycle_of_length(g: Graph, length: int, budget: int = DEFAULT_BUDGET) -> CycleWitness | None:
    """A cycle of exactly ``length`` vertices, or ``None`` if none exists.

    Raises ``BudgetExceeded`` when the search could not settle the question.
    """
    if length < 3:
        raise SpectrumError("cycle length must be at least 3")
    if length > g.n:
        return None
    found, count, completed = _search(g, {length}, True, budget, first_only=True)
    if length in found:
        return CycleWitness(found[length])
    if not completed:
        raise BudgetExceeded(f"no verdict for length {length} after {count} expansions")
    return None


def find_cycle_in(g: Graph, lengths: Iterable[int], budget: int = DEFAULT_BUDGET) -> CycleWitness | None:
    """Any cycle whose length lies in ``lengths``; ``None`` if provably none."""
    targets = {ell for ell in lengths if 3 <= ell <= g.n}
    if not targets:
        return None
    found, count, completed = _search(g, targets, True, budget, first_only=True)
    if found:
        return CycleWitness(next(iter(found.values())))
    if not completed:
        raise BudgetExceeded(f"no verdict for lengths {sorted(targets)} after {count} expansions")
    return None


def _require_exhaustive(s: CycleSpectrum) -> None:
    if not s.exhaustive:
        raise SpectrumError(f"spectrum only exhaustive up to {s.exhaustive_up_to} of {s.max_len}")


def reciprocal_sum(s: CycleSpectrum) -> float:
    _require_exhaustive(s)
    return sum(1.0 / ell for ell in s.lengths)


def longest_run(s: CycleSpectrum | Iterable[int], parity: str = "any") -> tuple[int, int]:
    """Longest run of lengths with step 2 (``even``/``odd``) or 1 (``any``) as (start, count)."""
    if isinstance(s, CycleSpectrum):
        _require_exhaustive(s)
        values = s.lengths
    else:
        values = tuple(sorted(set(s)))
    if parity == "any":
        step, members = 1, sorted(values)
    elif parity in ("even", "odd"):
        want = 0 if parity == "even" else 1
        step, members = 2, sorted(v for v in values if v % 2 == want)
    else:
        raise ValueError(f"parity must be even, odd or any, not {parity!r}")
    best = (0, 0)
    start, count = None, 0
    for v in members:
        if start is not None and v == start + step * count:
            count += 1
        else:
            start, count = v, 1
        if count > best[1]:
            best = (start, count)
    return best


def odd_length_count(s: CycleSpectrum) -> int:
    _require_exhaustive(s)
    return sum(1 for ell in s.lengths if ell % 2)
