"""Closed-form degree and size bounds, evaluated exactly or in natural-log space.

Exponents are returned as natural logarithms so that quantities such as
exp(6r + ...) never have to be formed. Rational inputs stay rational
(``fractions.Fraction``) and astronomically large values go through mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .graph import Graph
from .sequences import (
    SCAN_BUDGET,
    SequenceError,
    SequenceSpec,
    SubsequenceChoice,
    greedy_tower_choice,
)
from .spectrum import DEFAULT_BUDGET, cycle_spectrum

PRECISION = 60  # decimal digits for the high-precision paths


class BoundsError(ValueError):
    pass


def _mp():
    ctx = mpmath.mp.clone()
    ctx.dps = PRECISION
    return ctx


# -- Moore bound and expansion sizes ------------------------------------------


def moore_bound(d: int, g: int) -> int:
    """Fewest vertices a d-regular graph of girth g can have."""
    if d < 2 or g < 3:
        raise BoundsError("moore_bound needs d >= 2 and g >= 3")
    t = (g - 1) // 2
    if g % 2:
        return 1 + d * sum((d - 1) ** i for i in range(t))
    return 2 * sum((d - 1) ** i for i in range(t + 1))


def _as_fraction(x: float | int | Fraction) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x).limit_denominator(10**9)


def _iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for integers."""
    if x < 2 or k == 1:
        return x
    r = int(round(x ** (1.0 / k))) if x.bit_length() < 1000 else 1 << (x.bit_length() // k)
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def turan_expansion_size(a: float | Fraction, b: float | Fraction, d: int) -> tuple[int, int]:
    """(ceil(18ad), floor(d^(1/(2b-1)))): minimum degree needed and the guaranteed expansion size."""
    a, b = _as_fraction(a), _as_fraction(b)
    if a <= 0 or not Fraction(1, 2) < b < 1 or d < 1:
        raise BoundsError("need a > 0, 1/2 < b < 1 and d >= 1")
    need = math.ceil(18 * a * d)
    e = 1 / (2 * b - 1)
    return need, _iroot(d ** e.numerator, e.denominator)


# -- H-free exponents ------------------------------------------------------------


@dataclass(frozen=True)
class HFreeSpec:
    kind: str
    r: int | None = None
    k: int | None = None
    t: Fraction | None = None
    c: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "r_half_bounded":
            if self.r is None or self.r < 2:
                raise BoundsError("r-half-bounded needs r >= 2")
        elif self.kind == "even_cycle":
            if self.k is None or self.k < 2:
                raise BoundsError("even cycle C_2k needs k >= 2")
        elif self.kind == "generic":
            if self.t is None or self.t <= 1 or self.c is None or self.c <= 0:
                raise BoundsError("generic spec needs t > 1 and c > 0")
        else:
            raise BoundsError(f"unknown H-free kind {self.kind!r}")

    @classmethod
    def r_half_bounded(cls, r: int, c: float | None = None) -> HFreeSpec:
        return cls("r_half_bounded", r=r, c=c)

    @classmethod
    def even_cycle(cls, k: int) -> HFreeSpec:
        return cls("even_cycle", k=k)

    @classmethod
    def generic(cls, t: float | Fraction, c: float) -> HFreeSpec:
        return cls("generic", t=_as_fraction(t), c=c)


def hfree_exponents(h: HFreeSpec) -> tuple[Fraction, Fraction]:
    """(t, t/(t-1)): the extremal exponent and the run-length exponent it yields."""
    if h.kind == "r_half_bounded":
        t = Fraction(h.r)
    elif h.kind == "even_cycle":
        t = 1 + Fraction(1, h.k - 1)
    else:
        t = h.t
    return t, t / (t - 1)


def ex_bound(n: int, h: HFreeSpec, constant: float | None = None) -> float:
    """Upper bound on the number of edges of an n-vertex H-free graph.

    C_2k: 8k n^(1+1/k). Generic: c n^(2-1/t). r-half-bounded: c n^(2-1/r),
    where no explicit constant is known, so it must be supplied.
    """
    if n < 1:
        raise BoundsError("n must be positive")
    if h.kind == "even_cycle":
        return 8 * h.k * n ** (1 + 1 / h.k)
    if h.kind == "generic":
        return h.c * n ** float(2 - 1 / h.t)
    c = constant if constant is not None else h.c
    if c is None:
        raise BoundsError("the r-half-bounded bound has no explicit constant; pass one")
    return c * n ** (2 - 1 / h.r)


# -- gaps and the subsequence bound ---------------------------------------------


def _scan_gap(sigma: SequenceSpec, x: int, budget: int) -> int:
    best = 0
    prev = None
    for count, v in enumerate(sigma.members()):
        if v > x:
            break
        if count > budget:
            raise BoundsError(f"{sigma.name}: gap scan below {x} stopped after {budget} members (partial max {best})")
        if prev is not None:
            best = max(best, v - prev)
        prev = v
    if prev is None or best == 0:
        raise BoundsError(f"{sigma.name} has fewer than two members up to {x}")
    return best


def delta(sigma: SequenceSpec, pi: SubsequenceChoice, i: int, budget: int = SCAN_BUDGET) -> int:
    """Delta(1) = pi(1); for i >= 2 the largest gap of sigma among members up to pi(i)."""
    if not 1 <= i <= pi.depth:
        raise BoundsError(f"i must lie in 1..{pi.depth}")
    if i == 1:
        return pi[1]
    if sigma.max_gap is not None:
        try:
            return sigma.max_gap(pi[i])
        except SequenceError as exc:
            raise BoundsError(str(exc)) from None
    return _scan_gap(sigma, pi[i], budget)


def _ln(x, ctx) -> mpmath.mpf:
    return ctx.log(ctx.mpf(x))


@dataclass(frozen=True)
class BoundTerms:
    """An exponent and the additive terms it is made of."""

    exponent: float
    terms: dict[str, float] = field(default_factory=dict)
    precise: str = ""


def theorem3_bound(
    sigma: SequenceSpec,
    pi: SubsequenceChoice,
    r: int,
    n: int | None = None,
    ln_n: float | None = None,
    budget: int = SCAN_BUDGET,
) -> BoundTerms:
    """6r + sum_i 2 ln Delta(i) / pi(i-1) + 2 ln n / pi(r), with pi(0) = 1.

    This is the natural log of the average-degree threshold above which a
    graph on n vertices has a cycle whose length lies in sigma.
    """
    if not 1 <= r <= pi.depth:
        raise BoundsError(f"r must lie in 1..{pi.depth}")
    if (n is None) == (ln_n is None):
        raise BoundsError("give exactly one of n and ln_n")
    if n is not None and n < 2:
        raise BoundsError("n must be at least 2")
    pi.check_within(sigma)
    ctx = _mp()
    terms = {"6r": ctx.mpf(6 * r)}
    for i in range(1, r + 1):
        terms[f"delta_{i}"] = 2 * _ln(delta(sigma, pi, i, budget), ctx) / ctx.mpf(pi[i - 1])
    log_n = _ln(n, ctx) if n is not None else ctx.mpf(ln_n)
    terms["last"] = 2 * log_n / ctx.mpf(pi[r])
    total = ctx.fsum(terms.values())
    return BoundTerms(float(total), {k: float(v) for k, v in terms.items()}, ctx.nstr(total, 30))


def log_star(n: int | None = None, pi: SubsequenceChoice | None = None, log2_n: float | None = None) -> int:
    """The i with pi(i-1) < n <= pi(i); pi defaults to the tower 2, 4, 16, 65536, ...

    For the tower, n <= 2^k iff ceil(log2 n) <= k, so the index is found by
    repeated bit lengths and works for n given only through log2 n.
    """
    if (n is None) == (log2_n is None):
        raise BoundsError("give exactly one of n and log2_n")
    if pi is not None:
        if n is None:
            raise BoundsError("an explicit subsequence needs n itself")
        for i in range(1, pi.depth + 1):
            if pi[i - 1] < n <= pi[i]:
                return i
        raise BoundsError(f"n = {n} exceeds pi({pi.depth})")
    if n is not None:
        if n < 2:
            raise BoundsError("n must be at least 2")
        count = 1
        while n > 2:
            n = (n - 1).bit_length()
            count += 1
        return count
    if log2_n <= 0:
        raise BoundsError("n must be at least 2")
    if log2_n <= 1:
        return 1
    return 1 + log_star(max(2, math.ceil(log2_n - 1e-12)))


def claim1_sequence(pi: SubsequenceChoice, deltas: list[int], r: int) -> list[mpmath.mpf]:
    """ln a_1, ..., ln a_r for a_1 = 4 pi(1) and a_i = 288 a_(i-1) Delta(i)^(2/pi(i-1))."""
    if not 1 <= r <= pi.depth or len(deltas) < r:
        raise BoundsError("need r <= depth and r gap values")
    ctx = _mp()
    out = [_ln(4 * pi[1], ctx)]
    for i in range(2, r + 1):
        out.append(out[-1] + ctx.log(288) + 2 * _ln(deltas[i - 1], ctx) / pi[i - 1])
    return out


def claim1_residuals(pi: SubsequenceChoice, deltas: list[int], log_a: list) -> list[float]:
    """Relative residual of pi(i-1) ln(a_i / (288 a_(i-1))) = 2 ln Delta(i) for each i >= 2."""
    ctx = _mp()
    out = []
    for i in range(2, len(log_a) + 1):
        lhs = pi[i - 1] * (ctx.mpf(log_a[i - 1]) - ctx.mpf(log_a[i - 2]) - ctx.log(288))
        rhs = 2 * _ln(deltas[i - 1], ctx)
        out.append(float(abs(lhs - rhs) / abs(rhs)) if rhs else float(abs(lhs)))
    return out


def claim1_final_check(pi: SubsequenceChoice, deltas: list[int], r: int) -> tuple[float, float]:
    """(ln a_r, ln(exp(6r + sum 2 ln Delta(i)/pi(i-1)) / 2)); the first must be smaller."""
    ctx = _mp()
    log_a = claim1_sequence(pi, deltas, r)[-1]
    rhs = 6 * r + ctx.fsum(2 * _ln(deltas[i - 1], ctx) / pi[i - 1] for i in range(1, r + 1)) - ctx.log(2)
    return float(log_a), float(rhs)


# -- searching over subsequences -----------------------------------------------


@dataclass(frozen=True)
class OptimizedBound:
    choice: SubsequenceChoice
    r: int
    bound: BoundTerms
    candidates: int


def optimize_theorem3(
    sigma: SequenceSpec,
    n: int | None = None,
    ln_n: float | None = None,
    budget: int = 400,
) -> OptimizedBound:
    """Smallest exponent over subsequences drawn from a finite candidate pool.

    The pool holds the first ``budget`` members of sigma, the greedy tower
    choice, and the members bracketing n. Minimizing over chains in the pool
    is a shortest-path problem on a DAG, solved exactly; the result is an
    upper bound on the infimum over all subsequences, not the infimum.
    """
    if (n is None) == (ln_n is None):
        raise BoundsError("give exactly one of n and ln_n")
    log_n = math.log(n) if n is not None else ln_n
    pool = set()
    for k, v in enumerate(sigma.members()):
        if k >= budget:
            break
        pool.add(v)
    try:
        tower_pick = greedy_tower_choice(sigma, 4)
        pool.update(v for v in tower_pick.values if v.bit_length() < 4096)
    except (SequenceError, BoundsError):
        pass
    if n is not None:
        try:
            pool.add(sigma.first_at_least(n))
        except SequenceError:
            pass
    members = sorted(pool)

    def gap(v: int) -> int | None:
        if sigma.max_gap is not None:
            try:
                return sigma.max_gap(v)
            except SequenceError:
                return None
        try:
            return _scan_gap(sigma, v, SCAN_BUDGET)
        except BoundsError:
            return None

    gaps = [gap(v) for v in members]
    logs = [math.log(v) for v in members]
    # cost[j]: best cost of a chain ending at members[j], excluding the final term.
    cost = [6 + 2 * logs[j] for j in range(len(members))]
    prev: list[int | None] = [None] * len(members)
    depth = [1] * len(members)
    for j in range(len(members)):
        if gaps[j] is None:
            continue
        step = 2 * math.log(gaps[j])
        for i in range(j):
            c = cost[i] + 6 + step / members[i]
            if c < cost[j]:
                cost[j], prev[j], depth[j] = c, i, depth[i] + 1
    best = min(range(len(members)), key=lambda j: (cost[j] + 2 * log_n / members[j], depth[j]))
    chain = []
    j: int | None = best
    while j is not None:
        chain.append(members[j])
        j = prev[j]
    choice = SubsequenceChoice(tuple(reversed(chain)))
    bound = theorem3_bound(sigma, choice, choice.depth, n=n, ln_n=None if n is not None else ln_n)
    return OptimizedBound(choice, choice.depth, bound, len(members))


# -- exponential sequences ------------------------------------------------------


@dataclass(frozen=True)
class Corollary4Bound:
    exponent: float
    log_star: int
    constant: float
    greedy_values: tuple[int, ...]
    greedy_checked: int


def corollary4_bound(sigma: SequenceSpec, n: int | None = None, log2_n: float | None = None, check_depth: int = 4) -> Corollary4Bound:
    """(6 + 2 ln(2C)) log*(n) + 2 for sequences with sigma(i) <= C sigma(i-1).

    Also builds the greedy subsequence (smallest member >= 2^pi(i-1)) for
    ``check_depth`` steps and confirms pi(i) <= (2C)^pi(i-1) at each.
    """
    c = sigma.exponential_constant
    if c is None:
        raise BoundsError(f"{sigma.name} has no exponential constant")
    if c <= 1:
        raise BoundsError("the exponential constant must exceed 1")
    r = log_star(n=n, log2_n=log2_n)
    vals = []
    prev = 1
    for _ in range(check_depth):
        if prev > 1 << 16:
            break
        lo = 1 << prev
        try:
            v = sigma.first_at_least(lo)
        except SequenceError:
            break
        # v <= (2C)^prev, compared in log space
        if math.log(v) > prev * math.log(2 * c) + 1e-12:
            raise BoundsError(f"greedy member of {v.bit_length()} bits exceeds (2C)^{prev}")
        vals.append(v)
        prev = v
    shown = tuple(v for v in vals if v.bit_length() <= 64)
    return Corollary4Bound((6 + 2 * math.log(2 * c)) * r + 2, r, c, shown, len(vals))


def section4_sigma(i: int, ln_alpha: Callable[[int], object] | None = None, sigma0: int = 2) -> mpmath.mpf:
    """ln sigma(i) for sigma(0) = sigma0 and ln sigma(i) = sigma(i-1) ln alpha(i).

    ``ln_alpha`` defaults to 2^(2^i), which meets the requirement
    alpha(i) >= 2^(2^(2^i)). Raises ``OverflowError`` once sigma(i-1) itself
    no longer fits the big-float representation.
    """
    if i < 1:
        raise BoundsError("i must be at least 1")
    ctx = _mp()
    ln_alpha = ln_alpha or (lambda j: 2 ** (2 ** j))
    log_sigma = ctx.log(sigma0)
    for j in range(1, i + 1):
        la = ctx.mpf(ln_alpha(j))
        if la < (2 ** (2 ** j)) * ctx.log(2):
            raise BoundsError(f"alpha({j}) is below 2^(2^(2^{j}))")
        if log_sigma > 10**8:
            raise OverflowError(f"sigma({j - 1}) = exp({ctx.nstr(log_sigma, 5)}) is too large to represent")
        log_sigma = ctx.exp(log_sigma) * la if j > 1 else sigma0 * la
    return log_sigma


def section4_comparison(i: int) -> tuple[float, float]:
    """(the subsequence-bound exponent with pi = sigma(1..i) at n = sigma(i), 2 ln alpha(i)).

    Delta(j) is taken as sigma(j) for j >= 2, dropping the factor
    1 - sigma(j-1)/sigma(j), which is 1 to within exp(-sigma(j-1)).
    """
    if i < 1:
        raise BoundsError("i must be at least 1")
    ctx = _mp()
    logs = [section4_sigma(j) for j in range(1, i + 1)]
    total = ctx.mpf(6 * i) + 2 * logs[0]
    for j in range(2, i + 1):
        total += 2 * logs[j - 1] / ctx.exp(logs[j - 2])
    total += 2 * logs[-1] / ctx.exp(logs[-1])
    return float(total), float(2 * ctx.mpf(2 ** (2 ** i)))


# -- sigma-cycles in a concrete graph --------------------------------------------


@dataclass(frozen=True)
class SigmaCheck:
    free: bool | None
    witness: object = None
    exhaustive_up_to: int = 0


def sigma_cycle_free_check(g: Graph, sigma: SequenceSpec, budget: int | None = None) -> SigmaCheck:
    """Whether ``g`` has no cycle with length in sigma (``free=None`` when unsettled)."""
    s = cycle_spectrum(g, witnesses=True, budget=budget or DEFAULT_BUDGET)
    hits = [ell for ell in s.lengths if sigma.is_member(ell)]
    if hits:
        return SigmaCheck(False, s.witnesses[hits[0]], s.exhaustive_up_to)
    if not s.exhaustive:
        return SigmaCheck(None, None, s.exhaustive_up_to)
    return SigmaCheck(True, None, s.exhaustive_up_to)

