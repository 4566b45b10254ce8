"""Step out-Step in sequencing games.

A coalition may reorder itself subject to one rule: no player may end up
ahead of a non-member who was originally ahead of it. The value of a
coalition is the cost it saves by its best admissible reordering.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal, Mapping, Sequence

from .scheduling import (
    Coalition,
    Instance,
    Order,
    check_order,
    coalition_cost,
    components,
    grand_coalition,
    members,
    positions,
    urgency_cmp,
)

DEFAULT_ORACLE_BOUND = 9
GREEDY_TABLE_BOUND = 20

# per-instance permutation profiles are cached up to this size (8! rows)
_PROFILE_CACHE_LIMIT = 8


class SizeBoundError(ValueError):
    """The instance is too large for an exhaustive computation."""

    def __init__(self, what: str, n: int, bound: int):
        super().__init__(f"{what} supports at most {bound} players, instance has {n}")
        self.n = n
        self.bound = bound


def is_admissible(inst: Instance, s: Coalition, order: Sequence[int]) -> bool:
    order = check_order(inst, order)
    pos = positions(order)
    sigma0 = inst.sigma0
    for qi, i in enumerate(sigma0):
        if (s >> i) & 1:
            continue
        for j in sigma0[qi + 1:]:
            if pos[i] > pos[j]:
                return False
    return True


def _overtaken(sigma0_pos: Sequence[int], order: Order) -> int:
    """Bitmask of players that some originally-later player now precedes.

    An order is admissible for ``s`` iff all of these players are members.
    """
    mask = 0
    seen_max = -1  # largest sigma0 position among players already in the queue
    for j in order:
        q = sigma0_pos[j]
        if q < seen_max:
            mask |= 1 << j
        elif q > seen_max:
            seen_max = q
    return mask


def enumerate_admissible(
    inst: Instance, s: Coalition, bound: int = DEFAULT_ORACLE_BOUND
) -> Iterator[Order]:
    """Admissible orders for ``s``, each once, in lexicographic order of the queue sequence."""
    if inst.n > bound:
        raise SizeBoundError("admissible-order enumeration", inst.n, bound)
    return (
        order
        for order in itertools.permutations(range(inst.n))
        if is_admissible(inst, s, order)
    )


@dataclass(frozen=True)
class GreedyStep:
    """One player's move during the greedy pass.

    Positions are 0-based slots in the queue. ``candidates`` holds the
    savings for inserting the player at each later slot, scaled by
    ``scale``; use ``candidate_savings`` for the exact values.
    """

    player: int
    original_position: int
    chosen_position: int
    savings: Fraction
    order_before: Order
    order_after: Order
    candidates: tuple[int, ...]
    scale: int

    @property
    def candidate_savings(self) -> list[tuple[int, Fraction]]:
        start = self.original_position + 1
        return [(start + r, Fraction(c, self.scale)) for r, c in enumerate(self.candidates)]


@dataclass(frozen=True)
class GreedyTrace:
    coalition: Coalition
    steps: tuple[GreedyStep, ...]


@dataclass(frozen=True)
class GreedyResult:
    value: Fraction
    order: Order
    trace: GreedyTrace


def greedy_value(inst: Instance, s: Coalition) -> GreedyResult:
    """Coalition value by the greedy step-out/step-in pass.

    Members are considered from the back of the initial queue to the front.
    Each is moved to the later slot with the largest strictly positive
    savings, the earliest such slot on ties, or left in place.
    """
    s &= grand_coalition(inst.n)
    p, w, scale = inst.integer_data
    n = inst.n
    order = list(inst.sigma0)
    in_s = [(s >> j) & 1 for j in range(n)]
    steps = []
    for i in reversed(inst.sigma0):
        if not in_s[i]:
            continue
        before = tuple(order)
        pos = order.index(i)
        pi, wi = p[i], w[i]
        acc = 0
        best = 0
        best_pos = pos
        cands = []
        for q in range(pos + 1, n):
            j = order[q]
            if in_s[j]:
                acc += pi * w[j] - p[j] * wi
            else:
                acc -= p[j] * wi
            cands.append(acc)
            if acc > best:
                best = acc
                best_pos = q
        if best_pos != pos:
            del order[pos]
            order.insert(best_pos, i)
        steps.append(
            GreedyStep(
                player=i,
                original_position=pos,
                chosen_position=best_pos,
                savings=Fraction(best, scale),
                order_before=before,
                order_after=tuple(order),
                candidates=tuple(cands),
                scale=scale,
            )
        )
    final = tuple(order)
    value = coalition_cost(inst, inst.sigma0, s) - coalition_cost(inst, final, s)
    return GreedyResult(value, final, GreedyTrace(s, tuple(steps)))


def per_player_savings(trace: GreedyTrace) -> dict[int, Fraction]:
    return {step.player: step.savings for step in trace.steps}


def _profile_rows(inst: Instance) -> Iterator[tuple[Order, int, tuple[int, ...]]]:
    """(order, overtaken mask, per-player scaled cost) for every permutation, lexicographically."""
    sigma0_pos = inst.sigma0_positions
    for order in itertools.permutations(range(inst.n)):
        yield order, _overtaken(sigma0_pos, order), _scaled_costs(inst, order)


@lru_cache(maxsize=4)
def _cached_profile(inst: Instance) -> tuple[tuple[Order, int, tuple[int, ...]], ...]:
    return tuple(_profile_rows(inst))


def _profile(inst: Instance):
    if inst.n <= _PROFILE_CACHE_LIMIT:
        return _cached_profile(inst)
    return _profile_rows(inst)


def brute_force_value(
    inst: Instance, s: Coalition, bound: int = DEFAULT_ORACLE_BOUND
) -> tuple[Fraction, Order]:
    """Coalition value by minimising over every admissible permutation.

    Returns the value and the lexicographically least optimal order.
    """
    if inst.n > bound:
        raise SizeBoundError("brute-force oracle", inst.n, bound)
    s &= grand_coalition(inst.n)
    outsiders = grand_coalition(inst.n) & ~s
    mem = members(s)
    best = None
    best_order = inst.sigma0
    for order, overtaken, cost in _profile(inst):
        if overtaken & outsiders:
            continue
        c = sum(cost[j] for j in mem)
        if best is None or c < best:
            best, best_order = c, order
    start = _scaled_costs(inst, inst.sigma0)
    c0 = sum(start[j] for j in mem)
    return Fraction(c0 - best, inst.integer_data[2]), best_order


def _scaled_costs(inst: Instance, order: Order) -> tuple[int, ...]:
    p, w, _ = inst.integer_data
    cost = [0] * inst.n
    t = 0
    for j in order:
        t += p[j]
        cost[j] = w[j] * t
    return tuple(cost)


class ValueTable:
    """Characteristic function over coalition bitmasks of ``n`` players."""

    def __init__(self, n: int, values: Mapping[int, Fraction] | Sequence[Fraction]):
        self.n = n
        if isinstance(values, Mapping):
            self.values = {int(k): Fraction(v) for k, v in values.items()}
        else:
            self.values = {k: Fraction(v) for k, v in enumerate(values)}

    @property
    def is_complete(self) -> bool:
        return all(s in self.values for s in range(1 << self.n))

    def __getitem__(self, s: Coalition) -> Fraction:
        return self.values[s]

    def __eq__(self, other):
        if not isinstance(other, ValueTable):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __repr__(self):
        return f"ValueTable(n={self.n}, entries={len(self.values)})"

    def rows(self) -> list[tuple[Coalition, Fraction]]:
        return sorted(self.values.items())


def value_table(
    inst: Instance,
    method: Literal["greedy", "brute"] = "greedy",
    bound: int | None = None,
) -> ValueTable:
    n = inst.n
    if method == "greedy":
        limit = GREEDY_TABLE_BOUND if bound is None else bound
        if n > limit:
            raise SizeBoundError("greedy value table", n, limit)
        return ValueTable(n, [greedy_value(inst, s).value for s in range(1 << n)])
    if method == "brute":
        limit = DEFAULT_ORACLE_BOUND if bound is None else bound
        if n > limit:
            raise SizeBoundError("brute-force value table", n, limit)
        return _brute_table(inst)
    raise ValueError(f"unknown method {method!r}; expected 'greedy' or 'brute'")


def _brute_table(inst: Instance) -> ValueTable:
    n = inst.n
    full = grand_coalition(n)
    size = 1 << n
    best = [None] * size
    for _, overtaken, cost in _profile(inst):
        sub = [0] * size
        for s in range(1, size):
            low = s & -s
            sub[s] = sub[s ^ low] + cost[low.bit_length() - 1]
        # admissible exactly for the supersets of the overtaken set
        free = full & ~overtaken
        t = free
        while True:
            s = overtaken | t
            if best[s] is None or sub[s] < best[s]:
                best[s] = sub[s]
            if t == 0:
                break
            t = (t - 1) & free
    scale = inst.integer_data[2]
    start = _scaled_costs(inst, inst.sigma0)
    values = []
    for s in range(size):
        c0 = sum(start[j] for j in members(s))
        values.append(Fraction(c0 - best[s], scale))
    return ValueTable(n, values)


def smith_violation(inst: Instance, s: Coalition, order: Sequence[int]) -> tuple[int, int] | None:
    """A pair from one initial component of ``s`` that ``order`` puts against urgency.

    Returns ``(j, k)`` with j ahead of k in ``order`` although k is strictly
    more urgent, or ``None``.
    """
    pos = positions(check_order(inst, order))
    for comp in components(inst, s, inst.sigma0):
        for a, j in enumerate(comp):
            for k in comp[a + 1:]:
                first, second = (j, k) if pos[j] < pos[k] else (k, j)
                if urgency_cmp(inst, first, second) < 0:
                    return first, second
    return None


def shuffle_within_components(inst: Instance, s: Coalition, rng: random.Random) -> Instance:
    """Same instance with each initial component of ``s`` randomly reordered."""
    comps = {comp[0]: comp for comp in components(inst, s, inst.sigma0)}
    sigma0 = []
    skip = set()
    for j in inst.sigma0:
        if j in skip:
            continue
        if j in comps:
            comp = list(comps[j])
            rng.shuffle(comp)
            sigma0.extend(comp)
            skip.update(comp)
        else:
            sigma0.append(j)
    return Instance(inst.p, inst.w, tuple(sigma0), name=inst.name, seed=inst.seed)
