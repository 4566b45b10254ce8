"""Instance files and seeded random instances.

An instance file is a JSON object::

    {"n": 3, "p": ["3", "1", "1"], "w": ["1", "1", "3"], "sigma0": [1, 2, 3]}

Rationals are strings matching ``-?[0-9]+("/"[1-9][0-9]*)?`` and ``sigma0``
lists 1-based players from the front of the queue. ``name`` and ``seed``
are optional.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .scheduling import Instance, InstanceError

_RATIONAL = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")
_KEYS = {"n", "p", "w", "sigma0", "name", "seed"}


def parse_rational(text: str, field: str = "value") -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise InstanceError(field, f"{text!r} is not a rational string like '3' or '7/2'")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("document", f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceError("document", "expected a JSON object")
    unknown = set(doc) - _KEYS
    if unknown:
        raise InstanceError(sorted(unknown)[0], "unknown key")
    for key in ("n", "p", "w", "sigma0"):
        if key not in doc:
            raise InstanceError(key, "missing")

    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceError("n", f"expected a positive integer, got {n!r}")
    for key in ("p", "w", "sigma0"):
        if not isinstance(doc[key], list):
            raise InstanceError(key, "expected a list")
        if len(doc[key]) != n:
            raise InstanceError(key, f"expected {n} entries, got {len(doc[key])}")

    p = [parse_rational(x, f"p[{k}]") for k, x in enumerate(doc["p"])]
    w = [parse_rational(x, f"w[{k}]") for k, x in enumerate(doc["w"])]
    sigma0 = doc["sigma0"]
    if not all(isinstance(j, int) and not isinstance(j, bool) for j in sigma0):
        raise InstanceError("sigma0", "entries must be integers")
    if sorted(sigma0) != list(range(1, n + 1)):
        raise InstanceError("sigma0", f"{sigma0} is not a permutation of 1..{n}")

    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InstanceError("name", "expected a string")
    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool) or seed < 0):
        raise InstanceError("seed", "expected a non-negative integer")
    return Instance(tuple(p), tuple(w), tuple(j - 1 for j in sigma0), name=name, seed=seed)


def instance_document(inst: Instance) -> dict:
    doc = {
        "n": inst.n,
        "p": [format_rational(x) for x in inst.p],
        "w": [format_rational(x) for x in inst.w],
        "sigma0": [j + 1 for j in inst.sigma0],
    }
    if inst.name is not None:
        doc["name"] = inst.name
    if inst.seed is not None:
        doc["seed"] = inst.seed
    return doc


def write_instance(inst: Instance) -> str:
    return json.dumps(instance_document(inst), sort_keys=True, indent=2) + "\n"


def instance_digest(inst: Instance) -> str:
    """SHA-256 of the canonical document without the optional metadata."""
    doc = instance_document(inst)
    doc.pop("name", None)
    doc.pop("seed", None)
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class GenSpec:
    n: int
    seed: int
    p_range: tuple[int, int] = (1, 10)
    w_range: tuple[int, int] = (0, 10)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        lo, hi = self.p_range
        if lo < 1 or hi < lo:
            raise ValueError(f"invalid processing-time range [{lo}, {hi}]")
        lo, hi = self.w_range
        if lo < 0 or hi < lo:
            raise ValueError(f"invalid weight range [{lo}, {hi}]")


def generate_instance(spec: GenSpec) -> Instance:
    """Uniform integer p and w drawn from ``random.Random(spec.seed)``, identity initial queue.

    All n processing times are drawn first, then all n weights, each by
    ``randint`` over the inclusive range.
    """
    rng = random.Random(spec.seed)
    p = tuple(rng.randint(*spec.p_range) for _ in range(spec.n))
    w = tuple(rng.randint(*spec.w_range) for _ in range(spec.n))
    return Instance(p, w, tuple(range(spec.n)), name=f"gen-n{spec.n}-s{spec.seed}", seed=spec.seed)
