"""Exact linear solving over Z_{p^n} with valuation-based pivoting.

Z_{p^n} is a local ring, not a field: only elements coprime to p are
invertible.  Elimination therefore picks as pivot an entry of minimal
p-adic valuation in the active submatrix; that pivot divides every other
entry of its column exactly, so the column can be cleared with integer
multiples and no division by p ever occurs.  A row reduced to
``0*x = nonzero``, or a pivot equation whose right-hand side has smaller
valuation than the pivot, proves the system unsolvable.

Solvability is decided exactly: if any solution exists, back-substitution
with all free variables set to zero produces one (every non-pivot entry
of a frozen pivot row keeps valuation >= the pivot's, so the reduced
right-hand side is divisible by the pivot exactly when the system is
consistent).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .zring import RingCtx


class DimensionMismatch(ValueError):
    """Raised for systems whose matrix and right-hand side disagree."""


class SolveStatus(enum.Enum):
    SOLVABLE = "solvable"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class PivotStep:
    """One elimination event: a chosen pivot or a detected inconsistency.

    ``kind`` is "pivot", "zero_row" (a row reduced to 0*x = nonzero) or
    "valuation" (pivot p^v cannot divide the reduced right-hand side).
    Rows and columns are indices into the original system.
    """

    kind: str
    row: int
    col: int | None
    valuation: int


@dataclass(frozen=True)
class LocalSystem:
    """A linear system A*x = b over Z_{p^n}."""

    ctx: RingCtx
    matrix: Sequence[Sequence[int]]
    rhs: Sequence[int]

    def __post_init__(self):
        rows = len(self.matrix)
        if rows != len(self.rhs):
            raise DimensionMismatch(
                f"matrix has {rows} rows but rhs has {len(self.rhs)} entries"
            )
        if rows:
            width = len(self.matrix[0])
            for r in self.matrix:
                if len(r) != width:
                    raise DimensionMismatch("ragged matrix rows")


@dataclass(frozen=True)
class SolveOutcome:
    status: SolveStatus
    solution: tuple[int, ...] | None
    pivot_trace: tuple[PivotStep, ...] = field(default=())

    @property
    def solvable(self) -> bool:
        return self.status is SolveStatus.SOLVABLE

    @property
    def failure_row(self) -> int | None:
        """Original row index of the inconsistency, if any."""
        for step in self.pivot_trace:
            if step.kind != "pivot":
                return step.row
        return None


def _as_matrix(ctx: RingCtx, matrix, rows: int, cols: int) -> np.ndarray:
    a = np.array(matrix, dtype=np.int64).reshape(rows, cols)
    return a % ctx.q


def _val_block(block: np.ndarray, p: int, n: int) -> np.ndarray:
    """Elementwise p-adic valuation, with val(0) = n."""
    vals = np.full(block.shape, n, dtype=np.int64)
    rem = block.copy()
    active = rem != 0
    v = 0
    while active.any() and v < n:
        divisible = active & (rem % p == 0)
        vals[active & ~divisible] = v
        rem[divisible] //= p
        active = divisible
        v += 1
    return vals


def _eliminate(ctx: RingCtx, a: np.ndarray, b: np.ndarray):
    """Forward echelon on [a | b]; returns the pivot list.

    ``a`` (R x C) and ``b`` (R x K, one column per right-hand side) are
    modified in place.  Pivot rows are frozen once chosen; afterwards all
    non-pivot rows are zero in every coefficient column.
    """
    p, n, q = ctx.p, ctx.n, ctx.q
    rows, cols = a.shape
    pivots: list[tuple[int, int, int]] = []
    if rows == 0 or cols == 0:
        return pivots
    vals = _val_block(a, p, n)
    sentinel = n + 1
    nonpivot = np.ones(rows, dtype=bool)
    while True:
        flat = int(np.argmin(vals))
        r, c = divmod(flat, cols)
        v = int(vals[r, c])
        if v >= n:
            break
        # Normalize so the pivot is exactly p^v; valuations are unchanged.
        unit = int(a[r, c]) // p**v
        inv = ctx.inv_unit(unit)
        a[r] = a[r] * inv % q
        b[r] = b[r] * inv % q
        nonpivot[r] = False
        upd = nonpivot.copy()
        # Minimality of v makes every quotient below exact.
        factors = a[upd, c] // p**v
        if factors.size:
            a[upd] = (a[upd] - factors[:, None] * a[r][None, :]) % q
            b[upd] = (b[upd] - factors[:, None] * b[r][None, :]) % q
            vals[upd] = _val_block(a[upd], p, n)
        vals[r, :] = sentinel
        pivots.append((r, c, v))
    return pivots


def _back_substitute(ctx, a, b_col, pivots, nonpivot_rows):
    """Solve one reduced system; returns (solution | None, failure step)."""
    p, q = ctx.p, ctx.q
    cols = a.shape[1]
    bad = np.nonzero(nonpivot_rows & (b_col != 0))[0]
    if bad.size:
        r = int(bad[0])
        return None, PivotStep("zero_row", r, None, ctx.val(int(b_col[r])))
    x = np.zeros(cols, dtype=np.int64)
    for r, c, v in reversed(pivots):
        acc = int((a[r] * x % q).sum() % q)
        diff = (int(b_col[r]) - acc) % q
        if ctx.val(diff) < v:
            return None, PivotStep("valuation", r, c, ctx.val(diff))
        x[c] = diff // p**v
    return x, None


def solve_shared(
    ctx: RingCtx,
    matrix,
    rhs_columns: Sequence[Sequence[int]],
) -> list[SolveOutcome]:
    """Solve A*x = b for several right-hand sides with one elimination.

    Pivot selection depends only on the matrix, so the row operations are
    shared; consistency and back-substitution run per right-hand side.
    """
    a_in = np.asarray(matrix, dtype=np.int64)
    if a_in.ndim != 2:
        raise DimensionMismatch(f"matrix must be 2-dimensional, got shape {a_in.shape}")
    rows, cols = a_in.shape
    k = len(rhs_columns)
    b_in = np.zeros((rows, k), dtype=np.int64)
    for i, rhs in enumerate(rhs_columns):
        col = np.asarray(rhs, dtype=np.int64)
        if col.shape != (rows,):
            raise DimensionMismatch(
                f"rhs {i} has {col.shape[0] if col.ndim == 1 else '?'} entries, expected {rows}"
            )
        b_in[:, i] = col % ctx.q
    a_in = a_in % ctx.q

    a = a_in.copy()
    b = b_in.copy()
    pivots = _eliminate(ctx, a, b)
    trace = tuple(PivotStep("pivot", r, c, v) for r, c, v in pivots)
    nonpivot_rows = np.ones(rows, dtype=bool)
    for r, _, _ in pivots:
        nonpivot_rows[r] = False

    outcomes = []
    for i in range(k):
        x, failure = _back_substitute(ctx, a, b[:, i], pivots, nonpivot_rows)
        if x is None:
            outcomes.append(
                SolveOutcome(SolveStatus.INCONSISTENT, None, trace + (failure,))
            )
            continue
        if rows:
            check = (a_in * x[None, :] % ctx.q).sum(axis=1) % ctx.q
            if not np.array_equal(check, b_in[:, i]):
                raise AssertionError("solver produced a non-verifying solution")
        outcomes.append(
            SolveOutcome(SolveStatus.SOLVABLE, tuple(int(t) for t in x), trace)
        )
    return outcomes


def solve_system(system: LocalSystem) -> SolveOutcome:
    """Decide solvability of one system and produce a verifying solution.

    The returned solution, when present, reproduces the right-hand side
    exactly (checked by substitution before returning).
    """
    rows = len(system.matrix)
    cols = len(system.matrix[0]) if rows else 0
    a = _as_matrix(system.ctx, system.matrix, rows, cols)
    return solve_shared(system.ctx, a, [system.rhs])[0]
