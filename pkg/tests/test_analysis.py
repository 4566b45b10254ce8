import itertools
import random
from fractions import Fraction

import pytest

import oracles
from conftest import random_instances
from sosi.analysis import (
    IncompleteTableError,
    in_core,
    is_modular,
    is_monotone,
    is_supermodular,
    is_supermodular_pairwise,
    marginal_vector,
    shapley,
)
from sosi.game import ValueTable, greedy_value, per_player_savings, value_table

EX1 = ValueTable(3, {0: 0, 1: 0, 2: 0, 3: 2, 4: 0, 5: 7, 6: 2, 7: 12})
F = Fraction


def additive(a):
    n = len(a)
    return ValueTable(n, [sum(a[j] for j in range(n) if s >> j & 1) for s in range(1 << n)])


def test_supermodular_examples():
    assert is_supermodular(EX1) is None
    assert is_supermodular(additive([3, 1, 4])) is None
    v = is_supermodular(ValueTable(2, [0, 1, 1, 1]))
    assert v is not None and v.kind == "supermodularity"
    assert (v.lhs, v.rhs) == (0, 1)
    assert not v.holds()


def test_pairwise_form_agrees_with_marginal_form():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 4)
        table = ValueTable(n, [F(0)] + [F(rng.randint(-3, 6)) for _ in range((1 << n) - 1)])
        assert (is_supermodular(table) is None) == (is_supermodular_pairwise(table) is None)
        v = is_supermodular_pairwise(table)
        if v:
            s, t = v.coalitions
            assert v.lhs == table[s | t] + table[s & t] and v.rhs == table[s] + table[t]
            assert not v.holds()


def test_monotone_examples():
    assert is_monotone(EX1) is None
    assert is_monotone(ValueTable(2, [0] * 4)) is None
    v = is_monotone(ValueTable(2, [0, 1, 0, 0]))
    assert v is not None and v.coalitions == (1,) and v.players == (1,)
    assert not v.holds()


def test_modular_examples():
    assert is_modular(additive([2, F(1, 2), 0])) is None
    v = is_modular(EX1)
    assert v is not None and not v.holds()
    assert is_modular(ValueTable(1, [0, 5])) is None


def test_modular_witness_on_ex1():
    v = is_modular(EX1)
    # smallest bit pattern first: S = {} with players 1 and 2
    assert v.coalitions == (0,) and v.players == (0, 1)
    assert (v.lhs, v.rhs) == (2, 0)
    assert EX1[0b101] + EX1[0] == 7 != EX1[0b001] + EX1[0b100]


def test_marginal_vector_examples():
    assert marginal_vector(EX1, (0, 1, 2)) == [0, 2, 10]
    assert marginal_vector(EX1, (2, 0, 1)) == [7, 5, 0]
    assert marginal_vector(ValueTable(3, [0] * 8), (1, 2, 0)) == [0, 0, 0]
    with pytest.raises(ValueError):
        marginal_vector(EX1, (0, 0, 1))


def test_shapley_examples():
    assert shapley(EX1) == [F(29, 6), F(7, 3), F(29, 6)]
    assert shapley(additive([3, F(1, 2), 4])) == [3, F(1, 2), 4]
    assert shapley(ValueTable(2, [0, 0, 0, 9])) == [F(9, 2), F(9, 2)]


@pytest.mark.parametrize("inst", random_instances(20, [2, 3, 4, 5, 6], seed=21))
def test_shapley_is_average_of_marginal_vectors(inst):
    table = value_table(inst)
    n = inst.n
    by_sets = {frozenset(j for j in range(n) if s >> j & 1): v for s, v in table.rows()}
    assert shapley(table) == oracles.shapley_by_permutations(by_sets, n)
    assert sum(shapley(table)) == table[(1 << n) - 1]


def test_in_core_examples():
    assert in_core(EX1, [F(29, 6), F(7, 3), F(29, 6)]) is None
    v = in_core(EX1, [12, 0, 0])
    assert v.kind == "core" and v.coalitions == (6,) and (v.lhs, v.rhs) == (0, 2)
    assert not v.holds()
    assert in_core(ValueTable(2, [0] * 4), [0, 0]) is None
    v = in_core(EX1, [1, 1, 1])
    assert v.kind == "efficiency" and not v.holds()


@pytest.mark.parametrize("inst", random_instances(15, [2, 3, 4, 5], seed=22))
def test_marginal_vectors_and_shapley_in_core(inst):
    table = value_table(inst)
    assert is_supermodular(table) is None
    for perm in itertools.permutations(range(inst.n)):
        assert in_core(table, marginal_vector(table, perm)) is None
    assert in_core(table, shapley(table)) is None


def test_incomplete_table_is_rejected():
    partial = ValueTable(2, {0: 0, 1: 1, 3: 2})
    assert not partial.is_complete
    for check in (is_supermodular, is_supermodular_pairwise, is_monotone, is_modular, shapley):
        with pytest.raises(IncompleteTableError):
            check(partial)
    with pytest.raises(IncompleteTableError):
        marginal_vector(partial, (0, 1))
    with pytest.raises(IncompleteTableError):
        in_core(partial, [1, 1])


def test_generators_are_monotone_supermodular():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(1, 5)
        table = ValueTable(n, oracles.monotone_supermodular(n, rng, shift=rng.randint(-5, 5)))
        assert is_supermodular(table) is None
        assert is_monotone(table) is None


def test_violation_describe_uses_one_based_labels():
    v = is_supermodular(ValueTable(2, [0, 1, 1, 1]))
    assert "players [1, 2]" in v.describe()


@pytest.mark.parametrize("inst", random_instances(30, [2, 3, 4, 5, 6], seed=24))
def test_per_step_savings_are_supermodular(inst):
    n = inst.n
    per_coalition = [per_player_savings(greedy_value(inst, s).trace) for s in range(1 << n)]
    for i in range(n):
        f = ValueTable(n, [saved.get(i, 0) for saved in per_coalition])
        assert is_supermodular(f) is None
