"""Functions (Z_q)^m -> Z_q as value tables, with cyclic shifts and the
residue-class split that feeds the decision procedure.

Tables store all q^m values in lexicographic argument order with the
first argument most significant, i.e. the flat index of ``(x_1, .., x_m)``
is ``x_1*q^(m-1) + ... + x_m``.  Tables are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .zring import RingCtx

# Tables are materialized in full, so q^m is capped.
DEFAULT_TABLE_LIMIT = 1 << 24


class CapacityExceeded(RuntimeError):
    """Raised when a requested table would exceed the entry limit."""


class ArityMismatch(ValueError):
    """Raised when an operation receives a table of the wrong arity."""


def table_size(ctx: RingCtx, m: int, limit: int = DEFAULT_TABLE_LIMIT) -> int:
    """q^m after checking it against the capacity limit."""
    if m < 1:
        raise ArityMismatch(f"arity m={m} must be >= 1")
    size = ctx.q**m
    if size > limit:
        raise CapacityExceeded(f"table with q^m = {size} entries exceeds limit {limit}")
    return size


@dataclass(frozen=True)
class FuncTable:
    """A total function (Z_q)^m -> Z_q stored as a length-q^m value tuple."""

    ctx: RingCtx
    m: int
    values: tuple[int, ...]

    def __post_init__(self):
        size = table_size(self.ctx, self.m)
        if len(self.values) != size:
            raise ValueError(f"expected q^m = {size} values, got {len(self.values)}")
        q = self.ctx.q
        for v in self.values:
            if not 0 <= v < q:
                raise ValueError(f"value {v} out of range [0, {q})")

    @classmethod
    def from_values(cls, ctx: RingCtx, m: int, values: Sequence[int]) -> "FuncTable":
        return cls(ctx, m, tuple(int(v) % ctx.q for v in values))

    @classmethod
    def from_function(cls, ctx: RingCtx, m: int, fn: Callable[..., int]) -> "FuncTable":
        size = table_size(ctx, m)
        q = ctx.q
        if m == 1:
            vals = tuple(fn(x) % q for x in range(q))
        else:
            vals = tuple(fn(*args) % q for args in itertools.product(range(q), repeat=m))
        assert len(vals) == size
        return cls(ctx, m, vals)

    @classmethod
    def constant(cls, ctx: RingCtx, m: int, c: int) -> "FuncTable":
        return cls(ctx, m, (c % ctx.q,) * table_size(ctx, m))

    def index(self, args: Sequence[int]) -> int:
        """Flat index of an argument tuple (first argument most significant)."""
        if len(args) != self.m:
            raise ArityMismatch(f"expected {self.m} arguments, got {len(args)}")
        q = self.ctx.q
        idx = 0
        for x in args:
            idx = idx * q + (x % q)
        return idx

    def at(self, args: Sequence[int]) -> int:
        return self.values[self.index(args)]

    def arguments(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.ctx.q), repeat=self.m)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ResidueClassView:
    """The values of a table at arguments congruent to ``class_index`` mod p.

    ``values[s]`` is f(j_1 + p*s_1, ..., j_m + p*s_m) with the offset
    tuples s enumerated in lexicographic order.  Views are value copies;
    semantically they are read-only slices of the parent table.
    """

    class_index: tuple[int, ...]
    values: tuple[int, ...]


def cyclic_shift(f: FuncTable, j: Sequence[int]) -> FuncTable:
    """The shift g with g(x) = f(x + j mod q) componentwise."""
    if len(j) != f.m:
        raise ArityMismatch(f"shift tuple has {len(j)} entries, table arity is {f.m}")
    q = f.ctx.q
    if f.m == 1:
        r = j[0] % q
        vals = f.values[r:] + f.values[:r]
        return FuncTable(f.ctx, 1, vals)
    shift = [ji % q for ji in j]
    vals = [0] * len(f.values)
    for idx, args in enumerate(f.arguments()):
        src = f.index([x + s for x, s in zip(args, shift)])
        vals[idx] = f.values[src]
    return FuncTable(f.ctx, f.m, tuple(vals))


def split_classes(f: FuncTable) -> list[ResidueClassView]:
    """Split f into its p^m residue classes, in lexicographic class order."""
    p = f.ctx.p
    if f.m == 1:
        return [ResidueClassView((j,), f.values[j::p]) for j in range(p)]
    q = f.ctx.q
    width = q // p
    views = []
    for j in itertools.product(range(p), repeat=f.m):
        vals = tuple(
            f.values[f.index([ji + p * si for ji, si in zip(j, s)])]
            for s in itertools.product(range(width), repeat=f.m)
        )
        views.append(ResidueClassView(j, vals))
    return views


def merge_classes(ctx: RingCtx, m: int, views: Sequence[ResidueClassView]) -> FuncTable:
    """Reassemble a table from a full set of residue-class views."""
    p = ctx.p
    size = table_size(ctx, m)
    if len(views) != p**m:
        raise ValueError(f"expected {p ** m} views, got {len(views)}")
    vals = [0] * size
    width = ctx.q // p
    probe = FuncTable.constant(ctx, m, 0)
    for view in views:
        j = view.class_index
        for pos, s in enumerate(itertools.product(range(width), repeat=m)):
            idx = probe.index([ji + p * si for ji, si in zip(j, s)])
            vals[idx] = view.values[pos]
    return FuncTable(ctx, m, tuple(vals))
