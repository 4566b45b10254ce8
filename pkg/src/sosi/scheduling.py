"""Single-machine scheduling primitives with exact rational arithmetic.

Players are 0-based integers internally. An order is a tuple listing the
players from the front of the queue to the back. A coalition is an integer
bitmask: player ``j`` is a member when bit ``j`` is set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Order = tuple[int, ...]
Coalition = int


class InstanceError(ValueError):
    """An instance violates a structural invariant.

    ``field`` names the offending attribute so callers can report it.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def coalition(players: Iterable[int]) -> Coalition:
    mask = 0
    for j in players:
        mask |= 1 << j
    return mask


def members(s: Coalition) -> list[int]:
    """Players in ``s`` in increasing index order."""
    out = []
    j = 0
    while s:
        if s & 1:
            out.append(j)
        s >>= 1
        j += 1
    return out


def grand_coalition(n: int) -> Coalition:
    return (1 << n) - 1


def positions(order: Sequence[int]) -> list[int]:
    """Inverse of ``order``: ``positions(order)[j]`` is the 0-based slot of j."""
    pos = [0] * len(order)
    for q, j in enumerate(order):
        pos[j] = q
    return pos


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or a rational string")
    return Fraction(x)


@dataclass(frozen=True)
class Instance:
    """Players with processing times ``p``, weights ``w`` and initial queue ``sigma0``."""

    p: tuple[Fraction, ...]
    w: tuple[Fraction, ...]
    sigma0: Order
    name: str | None = field(default=None, compare=False)
    seed: int | None = field(default=None, compare=False)

    def __post_init__(self):
        p = tuple(_as_fraction(x) for x in self.p)
        w = tuple(_as_fraction(x) for x in self.w)
        sigma0 = tuple(int(j) for j in self.sigma0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "sigma0", sigma0)
        n = len(p)
        if n == 0:
            raise InstanceError("n", "an instance needs at least one player")
        if len(w) != n:
            raise InstanceError("w", f"expected {n} weights, got {len(w)}")
        if len(sigma0) != n:
            raise InstanceError("sigma0", f"expected {n} entries, got {len(sigma0)}")
        if sorted(sigma0) != list(range(n)):
            raise InstanceError("sigma0", "not a permutation of the players")
        for j, pj in enumerate(p):
            if pj <= 0:
                raise InstanceError("p", f"processing time of player {j} must be positive, got {pj}")
        for j, wj in enumerate(w):
            if wj < 0:
                raise InstanceError("w", f"weight of player {j} must be non-negative, got {wj}")

    @property
    def n(self) -> int:
        return len(self.p)

    @cached_property
    def sigma0_positions(self) -> list[int]:
        return positions(self.sigma0)

    @cached_property
    def integer_data(self) -> tuple[list[int], list[int], int]:
        """Processing times and weights rescaled to integers.

        Returns ``(p, w, scale)``: every cost or delta computed from the
        integer data equals the rational quantity times ``scale``.
        """
        dp = math.lcm(*(x.denominator for x in self.p))
        dw = math.lcm(*(x.denominator for x in self.w))
        p = [int(x * dp) for x in self.p]
        w = [int(x * dw) for x in self.w]
        return p, w, dp * dw


def check_order(inst: Instance, order: Sequence[int]) -> Order:
    order = tuple(order)
    if sorted(order) != list(range(inst.n)):
        raise InstanceError("order", f"{order} is not a permutation of the {inst.n} players")
    return order


def completion_times(inst: Instance, order: Sequence[int]) -> list[Fraction]:
    order = check_order(inst, order)
    c = [Fraction(0)] * inst.n
    t = Fraction(0)
    for j in order:
        t += inst.p[j]
        c[j] = t
    return c


def coalition_cost(inst: Instance, order: Sequence[int], s: Coalition) -> Fraction:
    """Total weighted completion time of the members of ``s`` under ``order``."""
    c = completion_times(inst, order)
    return sum((inst.w[j] * c[j] for j in members(s)), Fraction(0))


def urgency_cmp(inst: Instance, j: int, k: int) -> int:
    """-1, 0 or 1 as the urgency w_j/p_j is less than, equal to, or greater than w_k/p_k."""
    a = inst.w[j] * inst.p[k]
    b = inst.w[k] * inst.p[j]
    return (a > b) - (a < b)


def smith_order(inst: Instance) -> Order:
    """Players by decreasing urgency; equal urgencies keep their sigma0 order."""
    order = list(inst.sigma0)
    # insertion sort keeps the comparison exact and stable without keys
    for q in range(1, len(order)):
        j = order[q]
        r = q
        while r > 0 and urgency_cmp(inst, order[r - 1], j) < 0:
            order[r] = order[r - 1]
            r -= 1
        order[r] = j
    return tuple(order)


def delta_pair(inst: Instance, s: Coalition, j: int, k: int) -> Fraction:
    """Cost decrease for ``s`` from swapping j and k when j directly precedes k."""
    if j == k:
        raise ValueError("delta_pair needs two distinct players")
    in_k = (s >> k) & 1
    in_j = (s >> j) & 1
    return in_k * inst.p[j] * inst.w[k] - in_j * inst.p[k] * inst.w[j]


def delta_block(inst: Instance, s: Coalition, j: int, block: Iterable[int]) -> Fraction:
    """Cost decrease for ``s`` from moving j from just before ``block`` to just after it."""
    block = list(block)
    if j in block:
        raise ValueError(f"player {j} is part of the block")
    return sum((delta_pair(inst, s, j, k) for k in block), Fraction(0))


def components(inst: Instance, s: Coalition, order: Sequence[int]) -> list[tuple[int, ...]]:
    """Maximal runs of members of ``s`` that are contiguous under ``order``."""
    order = check_order(inst, order)
    out = []
    run: list[int] = []
    for j in order:
        if (s >> j) & 1:
            run.append(j)
        elif run:
            out.append(tuple(run))
            run = []
    if run:
        out.append(tuple(run))
    return out


def subgame(inst: Instance, t: Coalition) -> tuple[Instance, tuple[int, ...]]:
    """Restrict the instance to the players of ``t``.

    Returns the restricted instance and ``mapping`` with ``mapping[new] = old``.
    New indices follow increasing original index; the initial queue keeps the
    relative order of ``inst.sigma0``.
    """
    t &= grand_coalition(inst.n)
    if not t:
        raise ValueError("subgame needs a nonempty player set")
    mapping = tuple(members(t))
    new_index = {old: new for new, old in enumerate(mapping)}
    sub = Instance(
        p=tuple(inst.p[j] for j in mapping),
        w=tuple(inst.w[j] for j in mapping),
        sigma0=tuple(new_index[j] for j in inst.sigma0 if (t >> j) & 1),
        name=inst.name,
    )
    return sub, mapping


def orders_equivalent(inst: Instance, s: Coalition, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether ``b`` is reachable from ``a`` by swapping adjacent equal-urgency members of ``s``.

    Two players commute exactly when both are members with equal urgency, so
    the orders are equivalent iff every non-commuting pair keeps its relative
    order.
    """
    a = check_order(inst, a)
    b = check_order(inst, b)
    pa, pb = positions(a), positions(b)
    n = inst.n
    for j in range(n):
        for k in range(j + 1, n):
            if (pa[j] < pa[k]) == (pb[j] < pb[k]):
                continue
            if (s >> j) & 1 and (s >> k) & 1 and urgency_cmp(inst, j, k) == 0:
                continue
            return False
    return True
