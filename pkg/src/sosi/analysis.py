"""Cooperative-game checks over complete value tables.

Checks return ``None`` when the property holds and a :class:`Violation`
otherwise. When several coalitions fail, the one with the smallest bit
pattern is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .game import SizeBoundError, ValueTable
from .scheduling import Coalition, grand_coalition, members

SHAPLEY_BOUND = 20


class IncompleteTableError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """A failed inequality ``lhs >= rhs`` (or ``lhs == rhs`` for equalities).

    ``coalitions`` are the bitmasks that witness the failure; ``players``
    are the players added in the marginal forms.
    """

    kind: str
    coalitions: tuple[Coalition, ...]
    lhs: Fraction
    rhs: Fraction
    players: tuple[int, ...] = ()
    relation: str = ">="

    def holds(self) -> bool:
        if self.relation == "==":
            return self.lhs == self.rhs
        return self.lhs >= self.rhs

    def describe(self, label=None) -> str:
        label = label or _label
        co = ", ".join(label(s) for s in self.coalitions)
        extra = f" players {[j + 1 for j in self.players]}" if self.players else ""
        return f"{self.kind} violated at {co}{extra}: {self.lhs} {self.relation} {self.rhs} fails"


def _label(s: Coalition) -> str:
    return "{" + ",".join(str(j + 1) for j in members(s)) + "}"


def _require_complete(f: ValueTable) -> list[Fraction]:
    missing = [s for s in range(1 << f.n) if s not in f.values]
    if missing:
        raise IncompleteTableError(
            f"value table for {f.n} players lacks {len(missing)} coalitions, first {_label(missing[0])}"
        )
    return [f.values[s] for s in range(1 << f.n)]


def is_supermodular(f: ValueTable) -> Violation | None:
    """Check v(S+i+j) - v(S+j) >= v(S+i) - v(S) for all S and distinct i, j outside S."""
    v = _require_complete(f)
    n = f.n
    for s in range(1 << n):
        outside = [i for i in range(n) if not (s >> i) & 1]
        for a, i in enumerate(outside):
            bi = 1 << i
            for j in outside[a + 1:]:
                bj = 1 << j
                lhs = v[s | bi | bj] - v[s | bj]
                rhs = v[s | bi] - v[s]
                if lhs < rhs:
                    return Violation("supermodularity", (s,), lhs, rhs, (i, j))
    return None


def is_supermodular_pairwise(f: ValueTable) -> Violation | None:
    """Check v(S|T) + v(S&T) >= v(S) + v(T) over all pairs of coalitions."""
    v = _require_complete(f)
    size = 1 << f.n
    for s in range(size):
        for t in range(s + 1, size):
            lhs = v[s | t] + v[s & t]
            rhs = v[s] + v[t]
            if lhs < rhs:
                return Violation("supermodularity", (s, t), lhs, rhs)
    return None


def is_monotone(f: ValueTable) -> Violation | None:
    v = _require_complete(f)
    n = f.n
    for s in range(1 << n):
        for i in range(n):
            if (s >> i) & 1:
                continue
            if v[s | 1 << i] < v[s]:
                return Violation("monotonicity", (s,), v[s | 1 << i], v[s], (i,))
    return None


def is_modular(f: ValueTable) -> Violation | None:
    v = _require_complete(f)
    n = f.n
    for s in range(1 << n):
        outside = [i for i in range(n) if not (s >> i) & 1]
        for a, i in enumerate(outside):
            for j in outside[a + 1:]:
                lhs = v[s | 1 << i | 1 << j] + v[s]
                rhs = v[s | 1 << i] + v[s | 1 << j]
                if lhs != rhs:
                    return Violation("modularity", (s,), lhs, rhs, (i, j), "==")
    return None


def marginal_vector(f: ValueTable, perm: Sequence[int]) -> list[Fraction]:
    """Marginal contribution of each player when they arrive in the order ``perm``."""
    v = _require_complete(f)
    if sorted(perm) != list(range(f.n)):
        raise ValueError(f"{tuple(perm)} is not a permutation of the {f.n} players")
    x = [Fraction(0)] * f.n
    s = 0
    for i in perm:
        x[i] = v[s | 1 << i] - v[s]
        s |= 1 << i
    return x


def shapley(f: ValueTable) -> list[Fraction]:
    n = f.n
    if n > SHAPLEY_BOUND:
        raise SizeBoundError("Shapley value", n, SHAPLEY_BOUND)
    v = _require_complete(f)
    weight = [Fraction(factorial(k) * factorial(n - k - 1), factorial(n)) for k in range(n)]
    x = [Fraction(0)] * n
    for s in range(1 << n):
        k = s.bit_count()
        if k == n:
            continue
        wk = weight[k]
        for i in range(n):
            if not (s >> i) & 1:
                x[i] += wk * (v[s | 1 << i] - v[s])
    return x


def in_core(f: ValueTable, x: Sequence[Fraction]) -> Violation | None:
    """Check efficiency and x(S) >= v(S) for every coalition.

    An inefficient allocation is reported with kind ``"efficiency"``;
    a blocking coalition with kind ``"core"``.
    """
    v = _require_complete(f)
    n = f.n
    if len(x) != n:
        raise ValueError(f"allocation has {len(x)} entries for {n} players")
    x = [Fraction(xi) for xi in x]
    full = grand_coalition(n)
    total = sum(x, Fraction(0))
    if total != v[full]:
        return Violation("efficiency", (full,), total, v[full], relation="==")
    for s in range(1 << n):
        xs = sum((x[j] for j in members(s)), Fraction(0))
        if xs < v[s]:
            return Violation("core", (s,), xs, v[s])
    return None
