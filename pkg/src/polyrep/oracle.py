"""Independent ground truth at desk scale: enumerate every polynomial
function by exhaustive evaluation, count them, and answer membership.

The enumeration is the brute-force viewpoint made executable — evaluate
all polynomials below the Kempner degree bound and deduplicate their
value tables — and deliberately shares nothing with the generator-based
decision procedure, so the two can be cross-checked against each other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .funcspace import FuncTable, table_size
from .gens import GeneratorBasis
from .zring import RingCtx

DEFAULT_BUDGET = 1 << 24


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would be too large."""


@dataclass(frozen=True)
class PolyFunctionSet:
    """The deduplicated set of value tables of all polynomial functions."""

    ctx: RingCtx
    m: int
    members: frozenset[tuple[int, ...]]
    source_degree_bound: int

    def contains(self, f) -> bool:
        if isinstance(f, FuncTable):
            return f.values in self.members
        return tuple(f) in self.members

    def __len__(self) -> int:
        return len(self.members)


def kempner_bound(ctx: RingCtx) -> int:
    """Smallest mu with p^n dividing mu!, by direct factorial-valuation
    search.  Every polynomial function has a representative of degree
    below mu (validated against enumeration in the test suite)."""
    v = 0
    m = 0
    while v < ctx.n:
        m += 1
        t = m
        while t % ctx.p == 0:
            v += 1
            t //= ctx.p
    return m


def _factorial_valuation(k: int, p: int) -> int:
    """Legendre's formula: the p-adic valuation of k!."""
    v = 0
    pe = p
    while pe <= k:
        v += k // pe
        pe *= p
    return v


def count_polynomial_functions(ctx: RingCtx) -> int:
    """The classical product formula prod_{k<q} q / gcd(q, k!).

    A cross-check only: the enumeration oracle is authoritative, and the
    two are asserted equal whenever enumeration is within budget.
    """
    total = 1
    for k in range(ctx.q):
        v = min(ctx.n, _factorial_valuation(k, ctx.p))
        if v >= ctx.n:
            break
        total *= ctx.p ** (ctx.n - v)
    return total


def _dedupe(tables: np.ndarray) -> np.ndarray:
    return np.unique(tables, axis=0)


def _accumulate_combinations(q: int, size: int, columns) -> np.ndarray:
    """All sums base + sum_i c_i * column_i with c_i ranging per column.

    Deduplicates after every column, so memory stays proportional to the
    number of distinct partial tables rather than the full product space.
    Disjoint coefficient ranges could be processed independently and
    merged; the sequential order here is already canonical.
    """
    tables = np.zeros((1, size), dtype=np.int64)
    for column, reach in columns:
        coeffs = np.arange(reach, dtype=np.int64)
        tables = (
            tables[:, None, :] + coeffs[None, :, None] * column[None, None, :]
        ) % q
        tables = _dedupe(tables.reshape(-1, size))
    return tables


def enumerate_polynomial_functions(
    ctx: RingCtx, m: int = 1, budget: int = DEFAULT_BUDGET, degree_bound: int | None = None
) -> PolyFunctionSet:
    """Evaluate all polynomials with per-variable degree below the Kempner
    bound and coefficients in Z_q; return the distinct value tables."""
    mu = kempner_bound(ctx) if degree_bound is None else degree_bound
    size = table_size(ctx, m, DEFAULT_BUDGET)
    candidates = ctx.q ** (mu**m)
    if candidates > budget:
        raise BudgetExceeded(
            f"enumeration needs {candidates} candidate polynomials, budget is {budget}"
        )
    args = np.array(
        list(itertools.product(range(ctx.q), repeat=m)), dtype=np.int64
    )  # (size, m)
    columns = []
    for exps in itertools.product(range(mu), repeat=m):
        col = np.ones(size, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                col = col * _power_column(args[:, i], e, ctx.q) % ctx.q
        columns.append((col, ctx.q))
    tables = _accumulate_combinations(ctx.q, size, columns)
    members = frozenset(map(tuple, tables.tolist()))
    return PolyFunctionSet(ctx, m, members, mu)


def _power_column(base: np.ndarray, e: int, q: int) -> np.ndarray:
    out = np.ones_like(base)
    cur = base % q
    while e:
        if e & 1:
            out = out * cur % q
        cur = cur * cur % q
        e >>= 1
    return out


def additive_order(ctx: RingCtx, values) -> int:
    """Order of a table under pointwise addition: q / p^(min valuation)."""
    v = min(ctx.val(x) for x in values)
    return ctx.q // ctx.p**v


def span_enumerate(basis: GeneratorBasis, budget: int = DEFAULT_BUDGET) -> PolyFunctionSet:
    """Materialize all coefficient combinations of the generator tables.

    Coefficients only matter modulo each generator's additive order, so
    the combination space is the product of those orders (refused when it
    exceeds the budget).
    """
    ctx, m = basis.ctx, basis.m
    size = table_size(ctx, m)
    entries = list(basis)
    orders = [additive_order(ctx, e.table.values) for e in entries]
    combos = math.prod(orders)
    if combos > budget:
        raise BudgetExceeded(f"span has {combos} combinations, budget is {budget}")
    columns = [
        (np.array(e.table.values, dtype=np.int64), order)
        for e, order in zip(entries, orders)
    ]
    tables = _accumulate_combinations(ctx.q, size, columns)
    members = frozenset(map(tuple, tables.tolist()))
    return PolyFunctionSet(ctx, m, members, max(ctx.n - 1, 0))


def brute_force_member(f: FuncTable, budget: int = DEFAULT_BUDGET) -> bool:
    """One-shot membership the hard way: enumerate, then compare.

    This is the exponential baseline the decision procedure is benchmarked
    against; enumeration cost is paid on every call by design.
    """
    return enumerate_polynomial_functions(f.ctx, f.m, budget).contains(f)


def log10_table_count(ctx: RingCtx, m: int = 1) -> float:
    """log10 of the number of all functions (Z_q)^m -> Z_q, symbolically."""
    return ctx.q**m * math.log10(ctx.q)


def log10_polynomial_count(ctx: RingCtx) -> float:
    """log10 of the count formula value, without materializing anything."""
    exponent = 0
    for k in range(ctx.q):
        v = min(ctx.n, _factorial_valuation(k, ctx.p))
        if v >= ctx.n:
            break
        exponent += ctx.n - v
    return exponent * math.log10(ctx.p)
