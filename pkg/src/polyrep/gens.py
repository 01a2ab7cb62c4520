"""Generating set for the module of polynomial functions over Z_{p^n}.

The degree-k generator is the function that equals ``x^k`` on arguments
divisible by p and vanishes elsewhere (componentwise in the multivariate
case: ``x_1^{k_1}...x_m^{k_m}`` when p divides every coordinate, else 0).
Together with their first p cyclic shifts per variable, the generators
with total degree below n span exactly the polynomial functions.

Each basis entry carries both its value table and an explicit polynomial:
``prod_i (x_i + j_i)^{k_i} * (1 - (x_i + j_i)^phi)`` with ``phi`` the
totient of q, fully expanded and reduced mod q.  Tables and polynomials
are cross-checked against each other at construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .funcspace import CapacityExceeded, FuncTable, table_size
from .zring import RingCtx

# Polynomial expansion of shifted totient powers is dense (about q terms
# per entry), so basis construction is kept to desk-scale rings.
DEFAULT_BASIS_LIMIT = 1 << 16

# Exhaustive table-vs-polynomial verification above this size would
# dominate construction; larger bases are spot-checked instead.
_EXHAUSTIVE_CHECK_LIMIT = 1 << 16


class Polynomial:
    """A polynomial over Z_q in m variables, stored as a sparse
    exponent-tuple -> coefficient map with no explicit zeros."""

    __slots__ = ("ctx", "m", "coeffs", "_nested")

    def __init__(self, ctx: RingCtx, m: int, coeffs: dict[tuple[int, ...], int]):
        self.ctx = ctx
        self.m = m
        q = ctx.q
        clean = {}
        for exps, c in coeffs.items():
            if len(exps) != m:
                raise ValueError(f"exponent tuple {exps} has wrong arity (m={m})")
            c %= q
            if c:
                clean[tuple(exps)] = c
        self.coeffs = clean
        self._nested = None

    @classmethod
    def zero(cls, ctx: RingCtx, m: int) -> "Polynomial":
        return cls(ctx, m, {})

    @classmethod
    def constant(cls, ctx: RingCtx, m: int, c: int) -> "Polynomial":
        return cls(ctx, m, {(0,) * m: c})

    @classmethod
    def monomial(cls, ctx: RingCtx, m: int, exps: Sequence[int], c: int = 1) -> "Polynomial":
        return cls(ctx, m, {tuple(exps): c})

    @classmethod
    def variable(cls, ctx: RingCtx, m: int, i: int) -> "Polynomial":
        exps = [0] * m
        exps[i] = 1
        return cls.monomial(ctx, m, exps)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.m, frozenset(self.coeffs.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.coeffs)
        for exps, c in other.coeffs.items():
            out[exps] = out.get(exps, 0) + c
        return Polynomial(self.ctx, self.m, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ctx, self.m, {e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[tuple[int, ...], int] = {}
        q = self.ctx.q
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = (out.get(key, 0) + c1 * c2) % q
        return Polynomial(self.ctx, self.m, out)

    def power(self, e: int) -> "Polynomial":
        """Repeated squaring; exponents are plain ints (phi can be large)."""
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.ctx, self.m, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def _nest(self):
        # Group by leading-variable exponent, recursively, for Horner.
        if self._nested is None:
            self._nested = _nest_coeffs(self.coeffs, self.m)
        return self._nested

    def evaluate(self, args: Sequence[int]) -> int:
        """Value at an argument tuple, by per-variable Horner accumulation."""
        if len(args) != self.m:
            raise ValueError(f"expected {self.m} arguments, got {len(args)}")
        return _eval_nested(self._nest(), tuple(a % self.ctx.q for a in args), self.ctx.q)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        names = ["x"] if self.m == 1 else [f"x{i + 1}" for i in range(self.m)]
        terms = []
        for exps in sorted(self.coeffs, key=lambda e: (sum(e), e)):
            c = self.coeffs[exps]
            parts = []
            for name, e in zip(names, exps):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            if not parts:
                terms.append(str(c))
            elif c == 1:
                terms.append("*".join(parts))
            else:
                terms.append(f"{c}*" + "*".join(parts))
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.ctx!r}, m={self.m}, {self})"


def _nest_coeffs(coeffs: dict, m: int):
    if m == 0:
        return sum(coeffs.values())
    groups: dict[int, dict] = {}
    for exps, c in coeffs.items():
        groups.setdefault(exps[0], {})[exps[1:]] = c
    return sorted(
        ((e, _nest_coeffs(sub, m - 1)) for e, sub in groups.items()),
        key=lambda t: -t[0],
    )


def _eval_nested(nested, args: tuple[int, ...], q: int) -> int:
    if not args:
        return nested % q
    x = args[0]
    acc = 0
    prev = None
    for e, sub in nested:
        if prev is not None:
            acc = acc * pow(x, prev - e, q) % q
        acc = (acc + _eval_nested(sub, args[1:], q)) % q
        prev = e
    if prev:
        acc = acc * pow(x, prev, q) % q
    return acc


def degree_tuples(ctx: RingCtx, m: int) -> list[tuple[int, ...]]:
    """All degree tuples with total degree < n, in graded-lex order."""
    tuples = [
        k
        for k in itertools.product(range(ctx.n), repeat=m)
        if sum(k) < ctx.n
    ]
    tuples.sort(key=lambda k: (sum(k), k))
    return tuples


def generator_table(ctx: RingCtx, k: Sequence[int], j: Sequence[int]) -> FuncTable:
    """Value table of the degree-k generator shifted by j, straight from
    the defining case split."""
    q, p = ctx.q, ctx.p
    m = len(k)
    size = table_size(ctx, m)
    vals = [0] * size
    for idx, args in enumerate(itertools.product(range(q), repeat=m)):
        y = [(x + ji) % q for x, ji in zip(args, j)]
        if all(yi % p == 0 for yi in y):
            v = 1
            for yi, ki in zip(y, k):
                v = v * pow(yi, ki, q) % q
            vals[idx] = v
    return FuncTable(ctx, m, tuple(vals))


def generator_polynomial(ctx: RingCtx, k: Sequence[int], j: Sequence[int]) -> Polynomial:
    """Expanded form of prod_i (x_i+j_i)^{k_i} * (1 - (x_i+j_i)^phi) mod q."""
    m = len(k)
    if len(j) != m:
        raise ValueError("degree and shift tuples must have equal length")
    if sum(k) >= ctx.n:
        raise ValueError(f"total degree {sum(k)} must be < n={ctx.n}")
    result = Polynomial.constant(ctx, m, 1)
    one = Polynomial.constant(ctx, m, 1)
    for i in range(m):
        shifted = Polynomial.variable(ctx, m, i)
        if j[i] % ctx.q:
            shifted = shifted + Polynomial.constant(ctx, m, j[i])
        factor = shifted.power(k[i]) * (one - shifted.power(ctx.phi))
        result = result * factor
    return result


@dataclass(frozen=True)
class GeneratorEntry:
    degrees: tuple[int, ...]
    shift: tuple[int, ...]
    table: FuncTable
    polynomial: Polynomial


class GeneratorBasis:
    """All (degree tuple, shift tuple) generators for one ring and arity.

    Keys are pairs (k, j) with total degree of k below n and each shift
    component in [0, p); iteration order is graded-lex in k, then lex in j.
    """

    def __init__(self, ctx: RingCtx, m: int, entries: dict):
        self.ctx = ctx
        self.m = m
        self._entries = entries
        self._keys = list(entries)

    def keys(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return list(self._keys)

    def entry(self, k: Sequence[int], j: Sequence[int]) -> GeneratorEntry:
        return self._entries[(tuple(k), tuple(j))]

    def table(self, k: Sequence[int], j: Sequence[int]) -> FuncTable:
        return self.entry(k, j).table

    def polynomial(self, k: Sequence[int], j: Sequence[int]) -> Polynomial:
        return self.entry(k, j).polynomial

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[GeneratorEntry]:
        return iter(self._entries.values())


def build_generators(ctx: RingCtx, m: int, limit: int = DEFAULT_BASIS_LIMIT) -> GeneratorBasis:
    """Materialize every generator table with its polynomial.

    Raises CapacityExceeded when q^m exceeds ``limit``.  Each entry's
    polynomial is evaluated back against its table (exhaustively at desk
    scale, on a strided argument sample for larger rings).
    """
    size = table_size(ctx, m, limit)
    entries = {}
    shifts = list(itertools.product(range(ctx.p), repeat=m))
    for k in degree_tuples(ctx, m):
        for j in shifts:
            table = generator_table(ctx, k, j)
            poly = generator_polynomial(ctx, k, j)
            _check_entry(ctx, m, table, poly, size)
            entries[(k, j)] = GeneratorEntry(k, j, table, poly)
    expected = len(degree_tuples(ctx, m)) * ctx.p**m
    assert len(entries) == expected
    return GeneratorBasis(ctx, m, entries)


def _check_entry(ctx, m, table: FuncTable, poly: Polynomial, size: int):
    if size <= _EXHAUSTIVE_CHECK_LIMIT:
        positions = range(size)
    else:
        positions = range(0, size, max(1, size // 256))
    args_of = list(itertools.product(range(ctx.q), repeat=m)) if m > 1 else None
    for idx in positions:
        args = (idx,) if m == 1 else args_of[idx]
        if poly.evaluate(args) != table.values[idx]:
            raise AssertionError(
                f"generator polynomial disagrees with its table at argument {args}"
            )


def binomial_carlitz_tables(ctx: RingCtx, k: int) -> list[FuncTable]:
    """The n certificate functions for the univariate degree-k generator:
    C(k, i) * x^(k-i) on multiples of p, zero elsewhere, zero for i > k."""
    q, p, n = ctx.q, ctx.p, ctx.n
    tables = []
    for i in range(n):
        if i > k:
            tables.append(FuncTable.constant(ctx, 1, 0))
            continue
        c = comb(k, i) % q
        vals = tuple(
            c * pow(x, k - i, q) % q if x % p == 0 else 0 for x in range(q)
        )
        tables.append(FuncTable(ctx, 1, vals))
    return tables
