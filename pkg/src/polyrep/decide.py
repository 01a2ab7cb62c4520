"""Decision procedure for polynomial representability over Z_{p^n}.

A function is a polynomial function exactly when each of its residue
classes mod p, after subtracting the class base value, is (a) pointwise
divisible by p and (b) expressible as a combination of the restricted
generator columns ``(s*p)^k``.  Stage (b) is decided by exact elimination
over the full per-class system (all q/p - 1 rows at once): the square
(n-1) x (n-1) stage of the classical two-step procedure can have several
solutions, and checking the leftover rows against just one of them risks
false rejections, so the full solve is authoritative here.  The two-step
variant is kept for comparison behind :func:`decide_univariate_two_stage`.

Witness convention: the class of arguments congruent to i mod p is
supported by the generator shift (p - i) mod p, because shifting by j
moves the generator's support to the class of -j.  Class values are
therefore reindexed (one cyclic step within the class) before solving so
that the computed coefficients multiply the stored generator tables
exactly; the assembled witness always satisfies f = sum of coefficient *
shifted generator, verified exhaustively by the test suite.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .funcspace import ArityMismatch, FuncTable, table_size
from .linsolve import solve_shared
from .zring import RingCtx

# Maps (degree tuple, generator shift tuple) to a coefficient in Z_q.
Witness = dict[tuple[tuple[int, ...], tuple[int, ...]], int]


class Stage(enum.Enum):
    DIVISIBILITY_CHECK = "divisibility_check"
    SYSTEM_INCONSISTENT = "system_inconsistent"
    RESIDUAL_MISMATCH = "residual_mismatch"
    ACCEPTED = "accepted"


@dataclass(frozen=True)
class Decision:
    is_polynomial: bool
    stage: Stage
    witness: Witness | None = None
    counterexample: int | None = None

    def __post_init__(self):
        accepted = self.stage is Stage.ACCEPTED
        if accepted != self.is_polynomial or accepted != (self.witness is not None):
            raise ValueError("accepted <=> polynomial <=> witness present")
        if not accepted and self.counterexample is None:
            raise ValueError("rejections must carry a failing index")


class _StageClock:
    """Accumulates per-stage wall-clock seconds into an optional dict."""

    def __init__(self, sink: dict | None):
        self.sink = sink
        if sink is not None:
            for key in ("split", "divisibility", "solve", "residual"):
                sink.setdefault(key, 0.0)
        self.t = time.perf_counter()

    def lap(self, key: str):
        now = time.perf_counter()
        if self.sink is not None:
            self.sink[key] += now - self.t
        self.t = now


def _class_arg_univariate(ctx: RingCtx, i: int, s: int) -> int:
    """Original argument index of reindexed class entry s in class i."""
    if i == 0:
        return (s * ctx.p) % ctx.q
    return (s * ctx.p - (ctx.p - i)) % ctx.q


def _power_matrix(ctx: RingCtx, rows: int, cols: int) -> np.ndarray:
    """Matrix with entry (s, k) = (s*p)^(k+1) mod q for s = 1..rows."""
    a = np.zeros((rows, cols), dtype=np.int64)
    if rows == 0 or cols == 0:
        return a
    base = (ctx.p * np.arange(1, rows + 1, dtype=np.int64)) % ctx.q
    cur = base.copy()
    a[:, 0] = cur
    for k in range(1, cols):
        cur = cur * base % ctx.q
        a[:, k] = cur
    return a


def _prepare_classes(f: FuncTable):
    """Split, reindex toward the supporting generator shift, subtract the
    base value, and run the p-divisibility scan in class-major order.

    Returns (bases, diffs, counterexample) where diffs[i] is the class-i
    difference vector (numpy) and counterexample is the first failing
    argument index, or None when every entry is divisible by p.
    """
    ctx = f.ctx
    p, q = ctx.p, ctx.q
    arr = np.asarray(f.values, dtype=np.int64)
    bases = []
    diffs = []
    failure = None
    for i in range(p):
        view = arr[i::p]
        if i > 0:
            view = np.roll(view, 1)
        base = int(view[0])
        b = (view - base) % q
        bases.append(base)
        diffs.append(b)
        if failure is None:
            bad = np.nonzero(b % p)[0]
            if bad.size:
                failure = _class_arg_univariate(ctx, i, int(bad[0]))
    return bases, diffs, failure


def _assemble_witness(ctx: RingCtx, m: int, bases, solutions, degree_keys) -> Witness:
    """Attach class-i coefficients to the generator shift (p-i) mod p."""
    p = ctx.p
    witness: Witness = {}
    class_indices = list(itertools.product(range(p), repeat=m))
    for j, base, sol in zip(class_indices, bases, solutions):
        shift = tuple((p - ji) % p for ji in j)
        if base:
            witness[((0,) * m, shift)] = base
        for k, alpha in zip(degree_keys, sol):
            if alpha:
                witness[(k, shift)] = int(alpha)
    return witness


def decide_univariate(f: FuncTable, timings: dict | None = None) -> Decision:
    """Decide whether a one-variable table is a polynomial function.

    Work is one pass over the table plus one shared elimination of the
    (q/p - 1) x (n - 1) class system, reused across all p classes.
    """
    if f.m != 1:
        raise ArityMismatch(f"decide_univariate needs arity 1, got {f.m}")
    ctx = f.ctx
    clock = _StageClock(timings)
    bases, diffs, failure = _prepare_classes(f)
    clock.lap("split")
    clock.lap("divisibility")
    if failure is not None:
        return Decision(False, Stage.DIVISIBILITY_CHECK, counterexample=failure)

    rows = ctx.q // ctx.p - 1
    cols = ctx.n - 1
    matrix = _power_matrix(ctx, rows, cols)
    outcomes = solve_shared(ctx, matrix, [b[1:] for b in diffs])
    clock.lap("solve")
    for i, outcome in enumerate(outcomes):
        if not outcome.solvable:
            s = outcome.failure_row + 1
            return Decision(
                False,
                Stage.SYSTEM_INCONSISTENT,
                counterexample=_class_arg_univariate(ctx, i, s),
            )
    degree_keys = [(k,) for k in range(1, ctx.n)]
    witness = _assemble_witness(
        ctx, 1, bases, [o.solution for o in outcomes], degree_keys
    )
    clock.lap("residual")
    return Decision(True, Stage.ACCEPTED, witness=witness)


def decide_univariate_two_stage(f: FuncTable, timings: dict | None = None) -> Decision:
    """The square-system-then-residual variant of the decision procedure.

    Solves only the first n-1 rows of each class system, then compares the
    remaining rows against that one solution.  Kept for comparison with
    the authoritative full-system path; a disagreement between the two
    would mean the chosen square-system solution was not extendable even
    though another one was.
    """
    if f.m != 1:
        raise ArityMismatch(f"decide_univariate_two_stage needs arity 1, got {f.m}")
    ctx = f.ctx
    clock = _StageClock(timings)
    bases, diffs, failure = _prepare_classes(f)
    clock.lap("split")
    clock.lap("divisibility")
    if failure is not None:
        return Decision(False, Stage.DIVISIBILITY_CHECK, counterexample=failure)

    rows = ctx.q // ctx.p - 1
    cols = ctx.n - 1
    square_rows = min(cols, rows)
    matrix = _power_matrix(ctx, rows, cols)
    square = matrix[:square_rows]
    outcomes = solve_shared(ctx, square, [b[1 : square_rows + 1] for b in diffs])
    clock.lap("solve")
    for i, outcome in enumerate(outcomes):
        if not outcome.solvable:
            s = outcome.failure_row + 1
            return Decision(
                False,
                Stage.SYSTEM_INCONSISTENT,
                counterexample=_class_arg_univariate(ctx, i, s),
            )
    solutions = []
    for i, outcome in enumerate(outcomes):
        if cols:
            x = np.array(outcome.solution, dtype=np.int64)
            predicted = (matrix * x[None, :] % ctx.q).sum(axis=1) % ctx.q
        else:
            predicted = np.zeros(rows, dtype=np.int64)
        mismatch = np.nonzero(predicted != diffs[i][1:])[0]
        if mismatch.size:
            s = int(mismatch[0]) + 1
            clock.lap("residual")
            return Decision(
                False,
                Stage.RESIDUAL_MISMATCH,
                counterexample=_class_arg_univariate(ctx, i, s),
            )
        solutions.append(outcome.solution)
    clock.lap("residual")
    degree_keys = [(k,) for k in range(1, ctx.n)]
    witness = _assemble_witness(ctx, 1, bases, solutions, degree_keys)
    return Decision(True, Stage.ACCEPTED, witness=witness)


def decide_multivariate(f: FuncTable, timings: dict | None = None) -> Decision:
    """Decide representability for any arity, one residue class at a time.

    Mirrors the univariate procedure: per class, subtract the base value,
    check divisibility by p, then solve one shared linear system in the
    non-constant generator coefficients (columns in graded-lex degree
    order) against the full class view.
    """
    if f.m < 1:
        raise ArityMismatch(f"arity must be >= 1, got {f.m}")
    ctx = f.ctx
    m = f.m
    table_size(ctx, m)
    p, q, n = ctx.p, ctx.q, ctx.n
    clock = _StageClock(timings)

    width = q // p
    offsets = list(itertools.product(range(width), repeat=m))
    class_indices = list(itertools.product(range(p), repeat=m))
    qpow = [q ** (m - 1 - t) for t in range(m)]

    def flat_arg(j, r):
        shift = tuple((p - ji) % p for ji in j)
        return sum(
            ((ri * p - si) % q) * w for ri, si, w in zip(r, shift, qpow)
        )

    bases = []
    diffs = []
    failure = None
    for j in class_indices:
        vals = [f.values[flat_arg(j, r)] for r in offsets]
        base = vals[0]
        b = [(v - base) % q for v in vals]
        bases.append(base)
        diffs.append(b)
        if failure is None:
            for pos, bv in enumerate(b):
                if bv % p:
                    failure = flat_arg(j, offsets[pos])
                    break
    clock.lap("split")
    clock.lap("divisibility")
    if failure is not None:
        return Decision(False, Stage.DIVISIBILITY_CHECK, counterexample=failure)

    degree_keys = [k for k in _graded_degree_tuples(ctx, m) if any(k)]
    matrix = np.zeros((len(offsets) - 1, len(degree_keys)), dtype=np.int64)
    for row, r in enumerate(offsets[1:]):
        for col, k in enumerate(degree_keys):
            v = 1
            for ri, ki in zip(r, k):
                v = v * pow((ri * p) % q, ki, q) % q
            matrix[row, col] = v
    outcomes = solve_shared(ctx, matrix, [b[1:] for b in diffs])
    clock.lap("solve")
    for j, outcome in zip(class_indices, outcomes):
        if not outcome.solvable:
            r = offsets[outcome.failure_row + 1]
            return Decision(
                False,
                Stage.SYSTEM_INCONSISTENT,
                counterexample=flat_arg(j, r),
            )
    witness = _assemble_witness(
        ctx, m, bases, [o.solution for o in outcomes], degree_keys
    )
    clock.lap("residual")
    return Decision(True, Stage.ACCEPTED, witness=witness)


def _graded_degree_tuples(ctx: RingCtx, m: int) -> list[tuple[int, ...]]:
    tuples = [
        k for k in itertools.product(range(ctx.n), repeat=m) if sum(k) < ctx.n
    ]
    tuples.sort(key=lambda k: (sum(k), k))
    return tuples


def carlitz_verify(f: FuncTable, phis: Sequence[FuncTable]) -> bool:
    """Exhaustively check f(x+sp) = sum_i (sp)^i * phi_i(x) over all x, s.

    This is certificate verification (q^2 work), not a decision procedure.
    """
    if f.m != 1:
        raise ArityMismatch("carlitz_verify expects a univariate table")
    ctx = f.ctx
    if len(phis) != ctx.n:
        raise ValueError(f"expected {ctx.n} certificate functions, got {len(phis)}")
    for phi in phis:
        if phi.m != 1 or phi.ctx != ctx:
            raise ArityMismatch("certificate functions must share the table's ring")
    q, p = ctx.q, ctx.p
    for x in range(q):
        phi_at_x = [phi.values[x] for phi in phis]
        for s in range(q):
            sp = s * p % q
            total = 0
            power = 1
            for value in phi_at_x:
                total = (total + power * value) % q
                power = power * sp % q
            if f.values[(x + sp) % q] != total:
                return False
    return True


def reconstruct_carlitz(f: FuncTable, decision: Decision) -> list[FuncTable]:
    """Build certificate functions from an accepted decision's witness.

    On the class of arguments congruent to i mod p, the witness expands
    f(i + sp) as a polynomial in ((s + d)p) with d = 0 for class 0 and
    d = 1 otherwise (the reindexing step); differentiating that expansion
    binomially gives the certificate values.
    """
    if f.m != 1:
        raise ArityMismatch("reconstruct_carlitz expects a univariate table")
    if decision.witness is None:
        raise ValueError("decision carries no witness")
    ctx = f.ctx
    p, q, n = ctx.p, ctx.q, ctx.n
    tables = []
    for d in range(n):
        vals = [0] * q
        for x in range(q):
            i = x % p
            t = x // p
            shift = ((p - i) % p,)
            delta = 0 if i == 0 else 1
            base_point = ((t + delta) * p) % q
            total = 0
            for k in range(d, n):
                alpha = decision.witness.get(((k,), shift), 0)
                if alpha:
                    total = (
                        total + comb(k, d) * pow(base_point, k - d, q) * alpha
                    ) % q
            vals[x] = total
        tables.append(FuncTable(ctx, 1, tuple(vals)))
    return tables
