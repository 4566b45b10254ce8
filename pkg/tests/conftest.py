import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sosi import GenSpec, Instance, generate_instance  # noqa: E402

DATA = Path(__file__).parent / "data"

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, text = marker.args
    ok, _ = _criteria.get(number, (True, text))
    _criteria[number] = (ok and rep.passed, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, text = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {text}")


@pytest.fixture
def ex1():
    return Instance((3, 1, 1), (1, 1, 3), (0, 1, 2), name="EX1")


def random_instances(count, n_values, seed=0, shuffle=True):
    """Generated instances with integer p in [1, 10], w in [0, 10], optionally shuffled queue."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = n_values[k % len(n_values)]
        inst = generate_instance(GenSpec(n, rng.getrandbits(64)))
        if shuffle:
            sigma0 = list(inst.sigma0)
            rng.shuffle(sigma0)
            inst = Instance(inst.p, inst.w, tuple(sigma0))
        out.append(inst)
    return out


def edge_instances():
    """Hand-built cases: equal urgencies, zero weights, singleton components."""
    return [
        Instance((1, 1, 1), (1, 1, 1), (0, 1, 2)),
        Instance((2, 4, 1, 3), (1, 2, 0, 0), (0, 1, 2, 3)),
        Instance((1, 2, 3, 4, 5), (0, 0, 0, 0, 0), (4, 3, 2, 1, 0)),
        Instance((1, 1, 1, 1, 1), (5, 4, 3, 2, 1), (4, 3, 2, 1, 0)),
        Instance((3, 1, 2, 6, 1), (3, 1, 2, 6, 1), (0, 1, 2, 3, 4)),
        Instance((2, 3, 1, 2, 1, 4), (4, 6, 2, 0, 2, 8), (1, 0, 3, 2, 5, 4)),
        Instance(("1/2", "3/4", 2, "5/3"), ("7/2", 0, "1/3", 5), (3, 1, 0, 2)),
        Instance((1,), (3,), (0,)),
    ]
