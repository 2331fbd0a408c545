"""Increasing sequences of even cycle lengths and subsequences chosen from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

SCAN_BUDGET = 10_000_000


class SequenceError(ValueError):
    pass


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact below about 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise SequenceError(f"primality of a {n.bit_length()}-bit number is beyond the deterministic range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SequenceSpec:
    """sigma(1) < sigma(2) < ... , all even.

    ``first_at_least(x)`` returns the smallest member >= x; ``max_gap(x)`` the
    largest gap sigma(j) - sigma(j-1) with sigma(j) <= x, when a closed form
    is known (otherwise gaps are found by scanning).
    """

    name: str
    term: Callable[[int], int]
    is_member: Callable[[int], bool]
    first_at_least: Callable[[int], int]
    exponential_constant: float | None = None
    max_gap: Callable[[int], int] | None = None
    member_iter: Callable[[], Iterator[int]] | None = None

    def members(self) -> Iterator[int]:
        if self.member_iter is not None:
            yield from self.member_iter()
            return
        i = 1
        while True:
            yield self.term(i)
            i += 1

    def members_up_to(self, x: int, budget: int = SCAN_BUDGET) -> list[int]:
        out = []
        for v in self.members():
            if v > x:
                return out
            out.append(v)
            if len(out) > budget:
                raise SequenceError(f"{self.name}: more than {budget} members below {x}")
        return out


def _pow2_ceil(x: int) -> int:
    return 2 if x <= 2 else 1 << (x - 1).bit_length()


def _pow2_gap(x: int) -> int:
    if x < 4:
        raise SequenceError("no gap below the second member")
    top = 1 << (x.bit_length() - 1)
    return top // 2


POWERS_OF_TWO = SequenceSpec(
    "powers_of_two",
    lambda i: 1 << i,
    lambda x: x >= 2 and x & (x - 1) == 0,
    _pow2_ceil,
    2.0,
    _pow2_gap,
)


def tower(i: int) -> int:
    """pi(0) = 1, pi(i) = 2^pi(i-1): 1, 2, 4, 16, 65536, ..."""
    v = 1
    for _ in range(i):
        v = 1 << v
    return v


def _tower_ceil(x: int) -> int:
    i = 1
    while tower(i) < x:
        i += 1
    return tower(i)


def _tower_member(x: int) -> bool:
    return x >= 2 and _tower_ceil(x) == x


def _tower_gap(x: int) -> int:
    if x < 4:
        raise SequenceError("no gap below the second member")
    i = 1
    while tower(i + 1) <= x:
        i += 1
    return tower(i) - tower(i - 1)


TOWER = SequenceSpec("tower", tower, _tower_member, _tower_ceil, None, _tower_gap)


def _twice_prime_term(i: int) -> int:
    count, p = 0, 1
    while count < i:
        p += 1
        if is_prime(p):
            count += 1
    return 2 * p


def _twice_prime_ceil(x: int) -> int:
    p = max(2, -(-x // 2))
    while not is_prime(p):
        p += 1
    return 2 * p


def _twice_primes_members() -> Iterator[int]:
    p = 1
    while True:
        p += 1
        if is_prime(p):
            yield 2 * p


TWICE_PRIMES = SequenceSpec(
    "twice_primes",
    _twice_prime_term,
    lambda x: x % 2 == 0 and is_prime(x // 2),
    _twice_prime_ceil,
    2.0,
    member_iter=_twice_primes_members,
)


def _even_square_ceil(x: int) -> int:
    j = max(1, math.isqrt(max(x - 1, 0)) // 2)
    while (2 * j) ** 2 < x:
        j += 1
    return (2 * j) ** 2


def _even_square_gap(x: int) -> int:
    j = math.isqrt(x) // 2
    if j < 2:
        raise SequenceError("no gap below the second member")
    return 8 * j - 4


# (2j)^2 rather than all squares, so every member is even.
EVEN_SQUARES = SequenceSpec(
    "even_squares",
    lambda i: (2 * i) ** 2,
    lambda x: x > 0 and x % 4 == 0 and math.isqrt(x) ** 2 == x,
    _even_square_ceil,
    4.0,
    _even_square_gap,
)


def constant_gap(k: int, start: int | None = None) -> SequenceSpec:
    """start, start + k, start + 2k, ... (even k and start)."""
    start = k if start is None else start
    if k <= 0 or k % 2 or start <= 0 or start % 2:
        raise SequenceError("constant-gap sequences need a positive even gap and start")

    def ceil(x: int) -> int:
        return start if x <= start else start + k * (-(-(x - start) // k))

    def gap(x: int) -> int:
        if x < start + k:
            raise SequenceError("no gap below the second member")
        return k

    return SequenceSpec(
        f"constant_gap:{k}",
        lambda i: start + k * (i - 1),
        lambda x: x >= start and (x - start) % k == 0,
        ceil,
        (start + k) / start,
        gap,
    )


def custom(name: str, values: Sequence[int]) -> SequenceSpec:
    """A finite sequence given by its members (useful for tests and the CLI)."""
    vals = tuple(values)
    if not vals or any(v <= 0 or v % 2 for v in vals) or any(a >= b for a, b in zip(vals, vals[1:])):
        raise SequenceError("custom sequences must be strictly increasing positive even integers")
    members = set(vals)

    def term(i: int) -> int:
        if not 1 <= i <= len(vals):
            raise SequenceError(f"{name} has only {len(vals)} members")
        return vals[i - 1]

    def ceil(x: int) -> int:
        for v in vals:
            if v >= x:
                return v
        raise SequenceError(f"{name} has no member >= {x}")

    def finite_members() -> Iterator[int]:
        return iter(vals)

    ratio = max((b / a for a, b in zip(vals, vals[1:])), default=None)
    return SequenceSpec(name, term, members.__contains__, ceil, ratio, member_iter=finite_members)


NAMED = {
    "powers_of_two": POWERS_OF_TWO,
    "tower": TOWER,
    "twice_primes": TWICE_PRIMES,
    "even_squares": EVEN_SQUARES,
}


def sequence_by_name(name: str) -> SequenceSpec:
    """Look up a named sequence; ``constant_gap:K`` builds the gap-K sequence."""
    if name in NAMED:
        return NAMED[name]
    if name.startswith("constant_gap:"):
        try:
            return constant_gap(int(name.split(":", 1)[1]))
        except ValueError:
            raise SequenceError(f"bad gap in {name!r}") from None
    raise SequenceError(f"unknown sequence {name!r}; known: {', '.join(sorted(NAMED))}, constant_gap:K")


@dataclass(frozen=True)
class SubsequenceChoice:
    """pi(1) < ... < pi(r), each a member of the parent sequence; pi(0) = 1."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise SequenceError("a subsequence needs at least one member")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise SequenceError("subsequence values must be strictly increasing")

    @property
    def depth(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        if i == 0:
            return 1
        if not 1 <= i <= len(self.values):
            raise SequenceError(f"index {i} outside 0..{len(self.values)}")
        return self.values[i - 1]

    def check_within(self, sigma: SequenceSpec) -> None:
        bad = [v for v in self.values if not sigma.is_member(v)]
        if bad:
            raise SequenceError(f"{bad[:3]} are not members of {sigma.name}")


def greedy_tower_choice(sigma: SequenceSpec, depth: int) -> SubsequenceChoice:
    """pi(i) = smallest member of sigma that is at least 2^pi(i-1)."""
    vals = []
    prev = 1
    for _ in range(depth):
        if prev > 1 << 20:
            raise SequenceError(f"2^{prev} is too large to search for the next member")
        v = sigma.first_at_least(1 << prev)
        vals.append(v)
        prev = v
    return SubsequenceChoice(tuple(vals))
