import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DATA
from sosi.instances import (
    GenSpec,
    format_rational,
    generate_instance,
    instance_digest,
    parse_instance,
    write_instance,
)
from sosi.scheduling import Instance, InstanceError

EX1_DOC = '{"n": 3, "p": ["3", "1", "1"], "w": ["1", "1", "3"], "sigma0": [1, 2, 3]}'


def doc(**overrides):
    base = {"n": 2, "p": ["1", "2"], "w": ["1", "1"], "sigma0": [1, 2]}
    base.update(overrides)
    return json.dumps(base)


def test_parse_ex1(ex1):
    inst = parse_instance(EX1_DOC)
    assert inst == ex1
    assert inst.p == (3, 1, 1) and inst.sigma0 == (0, 1, 2)


def test_parse_rationals_and_queue():
    inst = parse_instance(doc(p=["6/4", "2"], w=["0", "7/3"], sigma0=[2, 1]))
    assert inst.p == (Fraction(3, 2), 2)
    assert inst.w == (0, Fraction(7, 3))
    assert inst.sigma0 == (1, 0)


@pytest.mark.parametrize(
    "text, field",
    [
        ("{not json", "document"),
        ("[1, 2]", "document"),
        (doc(sigma0=[1, 1]), "sigma0"),
        (doc(sigma0=[0, 1]), "sigma0"),
        (doc(p=["0", "1"]), "p"),
        (doc(p=["-1", "1"]), "p"),
        (doc(w=["1", "-2"]), "w"),
        (doc(p=["1"]), "p"),
        (doc(w=["1", "1", "1"]), "w"),
        (doc(p=["1.5", "1"]), "p[0]"),
        (doc(p=["1/0", "1"]), "p[0]"),
        (doc(p=[1, 2]), "p[0]"),
        (doc(n=0), "n"),
        (doc(extra=1), "extra"),
        (json.dumps({"n": 1, "p": ["1"], "w": ["1"]}), "sigma0"),
    ],
)
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(InstanceError) as info:
        parse_instance(text)
    assert info.value.field == field


def test_write_is_canonical():
    inst = Instance((Fraction(6, 4), 2), (0, 5), (1, 0), name="x")
    text = write_instance(inst)
    data = json.loads(text)
    assert data["p"] == ["3/2", "2"]
    assert data["w"] == ["0", "5"]
    assert data["sigma0"] == [2, 1]
    assert list(data) == sorted(data)
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(4, 1)) == "4"


def test_round_trip_ex1(ex1):
    back = parse_instance(write_instance(ex1))
    assert back == ex1 and back.name == "EX1"


@given(
    st.integers(1, 6).flatmap(
        lambda n: st.tuples(
            st.lists(st.fractions(min_value=Fraction(1, 50), max_value=50), min_size=n, max_size=n),
            st.lists(st.fractions(min_value=0, max_value=50), min_size=n, max_size=n),
            st.permutations(range(n)),
        )
    )
)
def test_round_trip_property(data):
    p, w, sigma0 = data
    inst = Instance(tuple(p), tuple(w), tuple(sigma0))
    text = write_instance(inst)
    assert parse_instance(text) == inst
    assert write_instance(parse_instance(text)) == text


def test_generator_is_deterministic():
    spec = GenSpec(6, 99)
    assert write_instance(generate_instance(spec)) == write_instance(generate_instance(spec))
    one = generate_instance(GenSpec(1, 5))
    assert one.n == 1 and one.sigma0 == (0,)


def test_generator_golden_file():
    expected = (DATA / "gen_n5_seed42.json").read_text()
    assert write_instance(generate_instance(GenSpec(5, 42, (1, 10), (0, 10)))) == expected


def test_generator_respects_ranges():
    inst = generate_instance(GenSpec(200, 7, (3, 4), (0, 1)))
    assert set(inst.p) <= {3, 4} and set(inst.w) <= {0, 1}
    assert inst.sigma0 == tuple(range(200))


def test_distinct_seeds_give_distinct_instances():
    digests = {instance_digest(generate_instance(GenSpec(8, seed))) for seed in range(1000)}
    assert len(digests) >= 990


@pytest.mark.parametrize(
    "kwargs",
    [dict(n=0, seed=1), dict(n=3, seed=-1), dict(n=3, seed=2**64), dict(n=3, seed=1, p_range=(0, 3)),
     dict(n=3, seed=1, p_range=(5, 3)), dict(n=3, seed=1, w_range=(-1, 3))],
)
def test_genspec_validation(kwargs):
    with pytest.raises(ValueError):
        GenSpec(**kwargs)


def test_digest_ignores_metadata(ex1):
    renamed = Instance(ex1.p, ex1.w, ex1.sigma0, name="other", seed=3)
    assert instance_digest(renamed) == instance_digest(ex1)
