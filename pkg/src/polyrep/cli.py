"""Command-line front-end: parse function tables, run the decision and
synthesis pipeline, dump generators, query the brute-force oracle, and
benchmark the decision procedure against the exponential baseline.

Reports are JSON on stdout with a stable key order; diagnostics go to
stderr.  Exit status is 0 for any successful run regardless of verdict,
2 for parse or validation problems, 3 for refused budgets/capacities.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import decide as decide_mod
from . import oracle as oracle_mod
from .funcspace import ArityMismatch, CapacityExceeded, FuncTable
from .gens import build_generators
from .linsolve import DimensionMismatch
from .synth import synthesize
from .zring import RingCtx


class ParseError(ValueError):
    """Malformed header or values in an input stream."""


class RangeError(ValueError):
    """A table value outside [0, q)."""


class CountError(ValueError):
    """Wrong number of table values."""


@dataclass(frozen=True)
class InputSpec:
    p: int
    n: int
    m: int
    values: tuple[int, ...]
    format: str = "text"

    def ring(self) -> RingCtx:
        return RingCtx(self.p, self.n)

    def table(self) -> FuncTable:
        return FuncTable(self.ring(), self.m, self.values)


def parse_input(source, format: str = "text") -> InputSpec:
    """Validate a byte or text stream into an InputSpec.

    Text format: one header line ``p=<int> n=<int> m=<int>`` followed by
    whitespace-separated values in lexicographic argument order (first
    argument most significant).  JSON format mirrors the field names.
    """
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if format == "json":
        return _parse_json(data)
    if format == "text":
        return _parse_text(data)
    raise ParseError(f"unknown input format {format!r}")


def _parse_text(data: str) -> InputSpec:
    lines = data.splitlines()
    header_idx = None
    for idx, line in enumerate(lines):
        if line.strip():
            header_idx = idx
            break
    if header_idx is None:
        raise ParseError("empty input: expected header 'p=<int> n=<int> m=<int>'")
    fields = {}
    tokens = lines[header_idx].split()
    for pos, token in enumerate(tokens):
        name, eq, value = token.partition("=")
        if eq != "=" or name not in ("p", "n", "m") or name in fields:
            raise ParseError(f"bad header token {token!r} at position {pos + 1}")
        try:
            fields[name] = int(value)
        except ValueError:
            raise ParseError(f"header token {token!r} has a non-integer value") from None
    if sorted(fields) != ["m", "n", "p"]:
        missing = ", ".join(sorted({"p", "n", "m"} - set(fields)))
        raise ParseError(f"header is missing {missing}")
    values = []
    rest = " ".join(lines[header_idx + 1 :])
    for pos, token in enumerate(rest.split()):
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(f"bad value token {token!r} at position {pos + 1}") from None
    return _validated(fields["p"], fields["n"], fields["m"], values, "text")


def _parse_json(data: str) -> InputSpec:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON input: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("JSON input must be an object with p, n, m, values")
    for key in ("p", "n", "m", "values"):
        if key not in obj:
            raise ParseError(f"JSON input is missing {key!r}")
    p, n, m, values = obj["p"], obj["n"], obj["m"], obj["values"]
    if not all(isinstance(x, int) for x in (p, n, m)):
        raise ParseError("p, n, m must be integers")
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ParseError("values must be a list of integers")
    return _validated(p, n, m, values, "json")


def _validated(p: int, n: int, m: int, values: list[int], format: str) -> InputSpec:
    ctx = RingCtx(p, n)
    if m < 1:
        raise ParseError(f"arity m={m} must be >= 1")
    expected = ctx.q**m
    if len(values) != expected:
        raise CountError(f"expected q^m = {expected} values, got {len(values)}")
    for pos, v in enumerate(values):
        if not 0 <= v < ctx.q:
            raise RangeError(f"value {v} at position {pos + 1} out of range [0, {ctx.q})")
    return InputSpec(p, n, m, tuple(values), format)


def serialize_input(spec: InputSpec, format: str | None = None) -> str:
    fmt = format or spec.format
    if fmt == "text":
        header = f"p={spec.p} n={spec.n} m={spec.m}"
        return header + "\n" + " ".join(str(v) for v in spec.values) + "\n"
    if fmt == "json":
        return json.dumps(
            {"p": spec.p, "n": spec.n, "m": spec.m, "values": list(spec.values)}
        )
    raise ParseError(f"unknown input format {fmt!r}")


def _witness_json(witness) -> dict:
    out = {}
    for (k, j), alpha in sorted(witness.items()):
        key = "(" + ",".join(str(t) for t in (*k, *j)) + ")"
        out[key] = alpha
    return out


def _polynomial_json(poly) -> dict:
    coeffs = {}
    for exps in sorted(poly.coeffs, key=lambda e: (sum(e), e)):
        key = "(" + ",".join(str(e) for e in exps) + ")"
        coeffs[key] = poly.coeffs[exps]
    return {
        "coefficients": coeffs,
        "pretty": str(poly),
        "total_degree": poly.total_degree(),
    }


def _decide_table(table: FuncTable, two_stage: bool):
    timings: dict = {}
    start = time.perf_counter()
    if table.m == 1:
        decision = decide_mod.decide_univariate(table, timings)
    else:
        decision = decide_mod.decide_multivariate(table, timings)
    timings["total"] = time.perf_counter() - start
    report_extra = {}
    if two_stage:
        if table.m != 1:
            raise ArityMismatch("--two-stage applies to univariate inputs only")
        alt = decide_mod.decide_univariate_two_stage(table)
        report_extra["two_stage"] = {
            "verdict": "polynomial" if alt.is_polynomial else "not_polynomial",
            "stage": alt.stage.value,
            "agrees": alt.is_polynomial == decision.is_polynomial,
        }
    return decision, timings, report_extra


def _decision_report(spec: InputSpec, decision, timings) -> dict:
    return {
        "command": "decide",
        "p": spec.p,
        "n": spec.n,
        "m": spec.m,
        "verdict": "polynomial" if decision.is_polynomial else "not_polynomial",
        "stage": decision.stage.value,
        "witness": _witness_json(decision.witness) if decision.witness else None,
        "counterexample": decision.counterexample,
        "timings": timings,
    }


def _cmd_decide(args, stdin, stderr) -> dict:
    spec = _read_spec(args, stdin)
    table = spec.table()
    decision, timings, extra = _decide_table(table, args.two_stage)
    report = _decision_report(spec, decision, timings)
    report.update(extra)
    if "two_stage" in report and not report["two_stage"]["agrees"]:
        print(
            "warning: two-stage variant disagrees with the full-system verdict",
            file=stderr,
        )
    return report


def _cmd_synth(args, stdin, stderr) -> dict:
    spec = _read_spec(args, stdin)
    table = spec.table()
    decision, timings, extra = _decide_table(table, False)
    report = _decision_report(spec, decision, timings)
    report["command"] = "synth"
    report["polynomial"] = None
    if decision.is_polynomial:
        basis = build_generators(spec.ring(), spec.m)
        synthesized = synthesize(decision.witness, basis)
        poly_json = _polynomial_json(synthesized.polynomial)
        poly_json["verified"] = synthesized.verified
        report["polynomial"] = poly_json
    report.update(extra)
    return report


def _cmd_gens(args, stdin, stderr) -> dict:
    ctx = RingCtx(args.p, args.n)
    basis = build_generators(ctx, args.vars)
    generators = []
    for entry in basis:
        generators.append(
            {
                "degrees": list(entry.degrees),
                "shift": list(entry.shift),
                "table": list(entry.table.values),
                "polynomial": _polynomial_json(entry.polynomial),
            }
        )
    return {
        "command": "gens",
        "p": args.p,
        "n": args.n,
        "m": args.vars,
        "count": len(generators),
        "generators": generators,
    }


def _cmd_oracle(args, stdin, stderr) -> dict:
    if args.input is not None:
        spec = _read_spec(args, stdin)
        ctx, m = spec.ring(), spec.m
    else:
        if args.p is None or args.n is None:
            raise ParseError("oracle needs --input or both --p and --n")
        ctx, m, spec = RingCtx(args.p, args.n), args.vars, None
    members = oracle_mod.enumerate_polynomial_functions(ctx, m, args.budget)
    report = {
        "command": "oracle",
        "p": ctx.p,
        "n": ctx.n,
        "m": m,
        "kempner_bound": oracle_mod.kempner_bound(ctx),
        "set_size": len(members),
        "member": None,
        "decide_agrees": None,
    }
    if spec is not None:
        table = spec.table()
        member = members.contains(table)
        if m == 1:
            decision = decide_mod.decide_univariate(table)
        else:
            decision = decide_mod.decide_multivariate(table)
        report["member"] = member
        report["decide_agrees"] = decision.is_polynomial == member
    return report


def _cmd_count(args, stdin, stderr) -> dict:
    ctx = RingCtx(args.p, args.n)
    formula = oracle_mod.count_polynomial_functions(ctx)
    enumerated = None
    match = None
    try:
        enumerated = len(oracle_mod.enumerate_polynomial_functions(ctx, 1, args.budget))
        match = enumerated == formula
    except oracle_mod.BudgetExceeded:
        print(
            f"note: enumeration over budget for q={ctx.q}; reporting formula only",
            file=stderr,
        )
    return {
        "command": "count",
        "p": args.p,
        "n": args.n,
        "formula": formula,
        "enumerated": enumerated,
        "match": match,
        "log10_formula": round(oracle_mod.log10_polynomial_count(ctx), 3),
    }


def random_polynomial_table(ctx: RingCtx, rng: random.Random, degree_bound: int | None = None) -> FuncTable:
    """Evaluation table of a random polynomial, for benchmarking inputs."""
    bound = oracle_mod.kempner_bound(ctx) if degree_bound is None else degree_bound
    coeffs = [rng.randrange(ctx.q) for _ in range(bound)]
    args = np.arange(ctx.q, dtype=np.int64)
    vals = np.zeros(ctx.q, dtype=np.int64)
    power = np.ones(ctx.q, dtype=np.int64)
    for c in coeffs:
        vals = (vals + c * power) % ctx.q
        power = power * args % ctx.q
    return FuncTable(ctx, 1, tuple(int(v) for v in vals))


def random_table(ctx: RingCtx, m: int, rng: random.Random) -> FuncTable:
    return FuncTable(ctx, m, tuple(rng.randrange(ctx.q) for _ in range(ctx.q**m)))


def _time_decide(table: FuncTable, repeats: int):
    best = None
    best_stages = None
    for _ in range(repeats):
        stages: dict = {}
        start = time.perf_counter()
        decide_mod.decide_univariate(table, stages)
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
            best_stages = stages
    return best, best_stages


def _cmd_bench(args, stdin, stderr) -> dict:
    rng = random.Random(args.seed)
    sizes = []
    for n in range(args.n_min, args.n_max + 1):
        ctx = RingCtx(args.p, n)
        table = random_polynomial_table(ctx, rng)
        seconds, stages = _time_decide(table, args.repeats)
        sizes.append(
            {"n": n, "q": ctx.q, "seconds": seconds, "stages": stages}
        )
    doubling = []
    for prev, cur in zip(sizes, sizes[1:]):
        doubling.append(
            {
                "from_n": prev["n"],
                "to_n": cur["n"],
                "q_factor": cur["q"] / prev["q"],
                "time_ratio": cur["seconds"] / prev["seconds"],
            }
        )
    oracle_ctx = RingCtx(args.p, args.oracle_n)
    probe = random_table(oracle_ctx, 1, rng)
    reps = 50
    start = time.perf_counter()
    for _ in range(reps):
        decide_mod.decide_univariate(probe)
    decide_seconds = (time.perf_counter() - start) / reps
    start = time.perf_counter()
    member = oracle_mod.brute_force_member(probe)
    oracle_seconds = time.perf_counter() - start
    return {
        "command": "bench",
        "p": args.p,
        "sizes": sizes,
        "doubling": doubling,
        "oracle_comparison": {
            "n": args.oracle_n,
            "q": oracle_ctx.q,
            "decide_seconds": decide_seconds,
            "oracle_seconds": oracle_seconds,
            "speedup": oracle_seconds / decide_seconds,
            "member": member,
        },
    }


def _read_spec(args, stdin) -> InputSpec:
    if args.input in (None, "-"):
        if stdin is None:
            stdin = sys.stdin
        return parse_input(stdin, args.format)
    with open(args.input, "rb") as fh:
        return parse_input(fh, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyrep",
        description="Decide polynomial representability of functions over Z_{p^n}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(sp, input_required=True):
        sp.add_argument(
            "--input",
            default="-" if input_required else None,
            help="input path, or - for stdin",
        )
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("decide", help="decide representability of a table")
    add_io(sp)
    sp.add_argument(
        "--two-stage",
        action="store_true",
        help="also run the square-system-then-residual variant and compare",
    )

    sp = sub.add_parser("synth", help="decide, then synthesize a witness polynomial")
    add_io(sp)

    sp = sub.add_parser("gens", help="dump the generator basis as JSON")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--vars", type=int, default=1)

    sp = sub.add_parser("oracle", help="enumeration summary / membership query")
    add_io(sp, input_required=False)
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--vars", type=int, default=1)
    sp.add_argument("--budget", type=int, default=oracle_mod.DEFAULT_BUDGET)

    sp = sub.add_parser("count", help="count polynomial functions")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=oracle_mod.DEFAULT_BUDGET)

    sp = sub.add_parser("bench", help="time decide across sizes vs the brute force")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--n-min", type=int, default=10)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--repeats", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--oracle-n", type=int, default=3)

    return parser


_COMMANDS = {
    "decide": _cmd_decide,
    "synth": _cmd_synth,
    "gens": _cmd_gens,
    "oracle": _cmd_oracle,
    "count": _cmd_count,
    "bench": _cmd_bench,
}


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _COMMANDS[args.command](args, stdin, stderr)
    except (CapacityExceeded, oracle_mod.BudgetExceeded) as exc:
        print(f"error: {exc}", file=stderr)
        return 3
    except (ParseError, RangeError, CountError, DimensionMismatch, ArityMismatch, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    json.dump(report, stdout, indent=2)
    stdout.write("\n")
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
