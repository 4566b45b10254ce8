"""Command-line front end.

Exit codes: 0 success, 1 verification violation, 2 usage or parse error,
3 size-bound error.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis
from .game import (
    DEFAULT_ORACLE_BOUND,
    SizeBoundError,
    ValueTable,
    brute_force_value,
    greedy_value,
    shuffle_within_components,
    smith_violation,
    value_table,
)
from .instances import (
    GenSpec,
    format_rational,
    generate_instance,
    instance_digest,
    parse_instance,
    parse_rational,
    write_instance,
)
from .scheduling import (
    Coalition,
    InstanceError,
    coalition_cost,
    grand_coalition,
    members,
    orders_equivalent,
    smith_order,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_SIZE = 3

# verify checks every coalition up to this size, a seeded sample beyond it
_FULL_SPOT_CHECK = 10
_SPOT_SAMPLES = 256


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    digest: str | None = None
    results: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    timing_ms: str = "0.000"

    @property
    def ok(self) -> bool:
        return all(v["ok"] for v in self.verdicts)

    def verdict(self, check: str, witness: str | None = None):
        self.verdicts.append({"check": check, "ok": witness is None, "witness": witness})

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "instance_digest": self.digest,
            "results": self.results,
            "verdicts": self.verdicts,
            "warnings": self.warnings,
            "timing_ms": self.timing_ms,
        }
        return json.dumps(doc, sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.digest:
            lines.append(f"instance: sha256:{self.digest[:16]}")
        for key, value in self.results.items():
            _render(lines, key, value, 0)
        for v in self.verdicts:
            status = "PASS" if v["ok"] else "FAIL"
            lines.append(f"[{status}] {v['check']}" + ("" if v["ok"] else f": {v['witness']}"))
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append(f"time: {self.timing_ms} ms")
        return "\n".join(lines)


def _render(lines: list, key: str, value, depth: int):
    pad = "  " * depth
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _render(lines, k, v, depth + 1)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        lines.append(f"{pad}{key}:")
        for item in value:
            lines.append(f"{pad}  - " + ", ".join(f"{k}={_flat(v)}" for k, v in item.items()))
    else:
        lines.append(f"{pad}{key}: {_flat(value)}")


def _flat(value) -> str:
    if isinstance(value, list):
        return "(" + ", ".join(_flat(v) for v in value) + ")"
    return str(value)


def _ms(ns: int) -> str:
    return f"{ns / 1e6:.3f}"


def label(s: Coalition) -> str:
    return "{" + ",".join(str(j + 1) for j in members(s)) + "}"


def queue(order) -> list[int]:
    return [j + 1 for j in order]


def parse_coalition(text: str, n: int) -> Coalition:
    text = text.strip()
    if text == "all":
        return grand_coalition(n)
    if not text:
        return 0
    s = 0
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit() or not 1 <= int(part) <= n:
            raise UsageError(f"coalition entry {part!r} is not a player in 1..{n}")
        s |= 1 << (int(part) - 1)
    return s


def parse_allocation(text: str, n: int) -> list:
    parts = [x.strip() for x in text.split(",")] if text.strip() else []
    if len(parts) != n:
        raise UsageError(f"allocation needs {n} entries, got {len(parts)}")
    try:
        return [parse_rational(x, f"allocation[{k}]") for k, x in enumerate(parts)]
    except InstanceError as exc:
        raise UsageError(str(exc)) from None


def load_instance(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def _table_rows(table: ValueTable) -> list[dict]:
    return [{"coalition": label(s), "value": format_rational(v)} for s, v in table.rows()]


def cmd_value(args) -> tuple[RunReport, int]:
    inst = load_instance(args.instance)
    s = parse_coalition(args.coalition, inst.n)
    report = RunReport("value", instance_digest(inst))
    report.results["coalition"] = label(s)
    report.results["method"] = args.method
    if args.method == "brute":
        value, order = brute_force_value(inst, s, bound=args.oracle_bound)
        report.results["value"] = format_rational(value)
        report.results["order"] = queue(order)
    else:
        res = greedy_value(inst, s)
        report.results["value"] = format_rational(res.value)
        report.results["order"] = queue(res.order)
        if args.trace:
            report.results["trace"] = [
                {
                    "player": step.player + 1,
                    "from": step.original_position + 1,
                    "to": step.chosen_position + 1,
                    "savings": format_rational(step.savings),
                    "candidates": [format_rational(c) for _, c in step.candidate_savings],
                }
                for step in res.trace.steps
            ]
    return report, EXIT_OK


def cmd_table(args) -> tuple[RunReport, int]:
    inst = load_instance(args.instance)
    table = value_table(inst, args.method, bound=args.oracle_bound if args.method == "brute" else None)
    report = RunReport("table", instance_digest(inst))
    report.results["method"] = args.method
    report.results["table"] = _table_rows(table)
    return report, EXIT_OK


def _spot_coalitions(n: int, rng: random.Random) -> list[Coalition]:
    if n <= _FULL_SPOT_CHECK:
        return list(range(1 << n))
    return [rng.getrandbits(n) for _ in range(_SPOT_SAMPLES)] + [grand_coalition(n)]


def cmd_verify(args) -> tuple[RunReport, int]:
    inst = load_instance(args.instance)
    n = inst.n
    rng = random.Random(args.seed)
    report = RunReport("verify", instance_digest(inst))
    table = value_table(inst, "greedy")
    if args.inject_corruption:
        # v({1}) above v(N) forces a monotonicity failure, and an oracle mismatch
        vals = dict(table.values)
        vals[1] = vals[grand_coalition(n)] + 1
        table = ValueTable(n, vals)

    witness = None
    if table[0] != 0:
        witness = f"v({{}}) = {format_rational(table[0])}"
    else:
        neg = next((s for s, v in table.rows() if v < 0), None)
        if neg is not None:
            witness = f"v({label(neg)}) = {format_rational(table[neg])} < 0"
    report.verdict("table: v(empty) = 0 and v >= 0", witness)

    if n <= args.oracle_bound:
        oracle = value_table(inst, "brute", bound=args.oracle_bound)
        bad = next((s for s in range(1 << n) if table[s] != oracle[s]), None)
        witness = None
        if bad is not None:
            witness = (
                f"coalition {label(bad)}: greedy {format_rational(table[bad])}"
                f" != oracle {format_rational(oracle[bad])}"
            )
        report.verdict("greedy equals brute-force oracle on all coalitions", witness)
    else:
        report.warnings.append(
            f"oracle phase skipped: {n} players exceeds oracle bound {args.oracle_bound}"
        )

    v = analysis.is_supermodular(table)
    report.verdict("supermodular (marginal form)", v and v.describe(label))
    if n <= 5:
        v = analysis.is_supermodular_pairwise(table)
        report.verdict("supermodular (pairwise form)", v and v.describe(label))
    v = analysis.is_monotone(table)
    report.verdict("monotone", v and v.describe(label))

    full = grand_coalition(n)
    expected = coalition_cost(inst, inst.sigma0, full) - coalition_cost(inst, smith_order(inst), full)
    witness = None
    if table[full] != expected:
        witness = f"v(N) = {format_rational(table[full])}, Smith savings {format_rational(expected)}"
    report.verdict("grand coalition equals Smith-order savings", witness)

    smith_witness = None
    equiv_witness = None
    for s in _spot_coalitions(n, rng):
        res = greedy_value(inst, s)
        pair = smith_violation(inst, s, res.order)
        if pair and smith_witness is None:
            smith_witness = f"coalition {label(s)}: player {pair[0] + 1} ahead of more urgent {pair[1] + 1}"
        shuffled = shuffle_within_components(inst, s, rng)
        alt = greedy_value(shuffled, s)
        same_cost = coalition_cost(inst, res.order, s) == coalition_cost(inst, alt.order, s)
        if equiv_witness is None and not (same_cost and orders_equivalent(inst, s, res.order, alt.order)):
            equiv_witness = (
                f"coalition {label(s)}: start {queue(shuffled.sigma0)} gives {queue(alt.order)},"
                f" not equivalent to {queue(res.order)}"
            )
    report.verdict("Smith's rule within initial components", smith_witness)
    report.verdict("greedy output invariant under in-component reordering", equiv_witness)
    report.results["players"] = n
    report.results["v(N)"] = format_rational(table[full])
    return report, EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_shapley(args) -> tuple[RunReport, int]:
    inst = load_instance(args.instance)
    table = value_table(inst, "greedy")
    x = analysis.shapley(table)
    report = RunReport("shapley", instance_digest(inst))
    report.results["shapley"] = [format_rational(xi) for xi in x]
    v = analysis.in_core(table, x)
    report.verdict("Shapley value in core", v and v.describe(label))
    return report, EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_core(args) -> tuple[RunReport, int]:
    inst = load_instance(args.instance)
    x = parse_allocation(args.allocation, inst.n)
    table = value_table(inst, "greedy")
    report = RunReport("core", instance_digest(inst))
    report.results["allocation"] = [format_rational(xi) for xi in x]
    v = analysis.in_core(table, x)
    if v is None:
        report.verdict("efficiency")
        report.verdict("coalitional rationality")
    elif v.kind == "efficiency":
        report.verdict("efficiency", f"allocation sums to {v.lhs}, v(N) = {v.rhs}")
    else:
        report.verdict("efficiency")
        report.verdict("coalitional rationality", f"coalition {label(v.coalitions[0])} gets {v.lhs} < v = {v.rhs}")
    return report, EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_gen(args) -> tuple[RunReport, int]:
    try:
        spec = GenSpec(args.n, args.seed, (args.p_min, args.p_max), (args.w_min, args.w_max))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inst = generate_instance(spec)
    text = write_instance(inst)
    report = RunReport("gen", instance_digest(inst))
    if args.output == "-":
        sys.stdout.write(text)
        return None, EXIT_OK
    try:
        Path(args.output).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    report.results["output"] = args.output
    report.results["players"] = inst.n
    return report, EXIT_OK


def cmd_bench(args) -> tuple[RunReport, int]:
    inst = generate_instance(GenSpec(args.n, args.seed))
    rng = random.Random(args.seed)
    full = grand_coalition(inst.n)
    coalitions = [("N", full)] + [
        (f"random-{k + 1}", rng.getrandbits(inst.n)) for k in range(args.coalitions)
    ]
    report = RunReport("bench", instance_digest(inst))
    report.results["players"] = inst.n
    report.results["repeat"] = args.repeat
    rows = []
    for name, s in coalitions:
        times = []
        value = None
        for _ in range(args.repeat):
            t0 = time.perf_counter_ns()
            value = greedy_value(inst, s).value
            times.append(time.perf_counter_ns() - t0)
        rows.append({
            "coalition": name,
            "members": s.bit_count(),
            "value": format_rational(value),
            "median_ms": _ms(int(statistics.median(times))),
            "max_ms": _ms(max(times)),
        })
    report.results["runs"] = rows
    return report, EXIT_OK


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--oracle-bound", type=_positive_int, default=DEFAULT_ORACLE_BOUND)

    with_instance = argparse.ArgumentParser(add_help=False, parents=[common])
    with_instance.add_argument("--instance", required=True, help="path to an instance JSON file")

    parser = argparse.ArgumentParser(prog="sosi", description="Step out-Step in sequencing games")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", parents=[with_instance], help="value of one coalition")
    p.add_argument("--coalition", default="all", help='1-based players, e.g. "1,3"; "all"; "" for none')
    p.add_argument("--method", choices=("greedy", "brute"), default="greedy")
    p.add_argument("--trace", action="store_true", help="print the greedy steps")
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("table", parents=[with_instance], help="values of all coalitions")
    p.add_argument("--method", choices=("greedy", "brute"), default="greedy")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[with_instance], help="check greedy, convexity and structure")
    p.add_argument("--inject-corruption", action="store_true",
                   help="self-test: corrupt one table entry so the checks must fail")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shapley", parents=[with_instance], help="Shapley value")
    p.set_defaults(func=cmd_shapley)

    p = sub.add_parser("core", parents=[with_instance], help="core membership of an allocation")
    p.add_argument("--allocation", required=True, help='comma-separated rationals, e.g. "29/6,7/3,29/6"')
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("gen", parents=[common], help="write a random instance")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--p-min", type=int, default=1)
    p.add_argument("--p-max", type=int, default=10)
    p.add_argument("--w-min", type=int, default=0)
    p.add_argument("--w-max", type=int, default=10)
    p.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="time the greedy algorithm")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--repeat", type=_positive_int, default=3)
    p.add_argument("--coalitions", type=int, default=4, help="random coalitions besides N")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter_ns()
    try:
        report, code = args.func(args)
    except SizeBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, InstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        report.timing_ms = _ms(time.perf_counter_ns() - t0)
        print(report.to_json() if args.json else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
