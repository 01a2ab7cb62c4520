"""Turn accepted witnesses into explicit polynomials, and polynomials
back into value tables.

The synthesized polynomial is the raw coefficient combination of the
generator polynomials, with like terms collected mod q; no reduction
modulo null polynomials is attempted, since correctness is certified by
re-evaluation instead of by a canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .decide import Witness
from .funcspace import FuncTable, table_size
from .gens import GeneratorBasis, Polynomial


class UnknownGenerator(KeyError):
    """Raised when a witness references a generator outside the basis."""


@dataclass(frozen=True)
class SynthesizedPolynomial:
    polynomial: Polynomial
    source_witness: tuple
    verified: bool


def eval_polynomial(poly: Polynomial) -> FuncTable:
    """Tabulate a polynomial over all q^m arguments."""
    ctx, m = poly.ctx, poly.m
    size = table_size(ctx, m)
    if m == 1:
        vals = tuple(poly.evaluate((x,)) for x in range(ctx.q))
    else:
        vals = tuple(
            poly.evaluate(args) for args in itertools.product(range(ctx.q), repeat=m)
        )
    assert len(vals) == size
    return FuncTable(ctx, m, vals)


def synthesize(witness: Witness, basis: GeneratorBasis) -> SynthesizedPolynomial:
    """Combine generator polynomials according to the witness coefficients.

    ``verified`` is set by exhaustively evaluating the combined polynomial
    against the identical combination of the generator tables.
    """
    ctx, m = basis.ctx, basis.m
    poly = Polynomial.zero(ctx, m)
    target = [0] * table_size(ctx, m)
    items = sorted(witness.items())
    for (k, j), alpha in items:
        if (k, j) not in basis:
            raise UnknownGenerator(f"witness index (degrees={k}, shift={j}) not in basis")
        entry = basis.entry(k, j)
        poly = poly + entry.polynomial.scale(alpha)
        for idx, v in enumerate(entry.table.values):
            target[idx] = (target[idx] + alpha * v) % ctx.q
    verified = eval_polynomial(poly).values == tuple(target)
    return SynthesizedPolynomial(poly, tuple(items), verified)
