import math
import random

import pytest

from polyrep import (
    BudgetExceeded,
    FuncTable,
    RingCtx,
    brute_force_member,
    build_generators,
    count_polynomial_functions,
    enumerate_polynomial_functions,
    kempner_bound,
    span_enumerate,
)
from polyrep.oracle import additive_order, log10_polynomial_count, log10_table_count


@pytest.mark.parametrize(
    "p, n, mu",
    [(2, 2, 4), (2, 3, 4), (3, 1, 3), (3, 2, 6), (5, 1, 5)],
)
def test_kempner_bound(p, n, mu):
    ctx = RingCtx(p, n)
    assert kempner_bound(ctx) == mu
    # Direct check of the defining property.
    assert math.factorial(mu) % ctx.q == 0
    assert math.factorial(mu - 1) % ctx.q != 0


def test_enumeration_sizes(z4_oracle, z8_oracle):
    assert len(z4_oracle) == 64
    assert len(z8_oracle) == 1024
    z3 = RingCtx(3, 1)
    assert len(enumerate_polynomial_functions(z3)) == 27


def test_higher_degree_cap_adds_nothing(z4, z8, z4_oracle, z8_oracle):
    for ctx, base in ((z4, z4_oracle), (z8, z8_oracle)):
        mu = kempner_bound(ctx)
        widened = enumerate_polynomial_functions(ctx, degree_bound=mu + 2)
        assert widened.members == base.members


@pytest.mark.parametrize(
    "p, n, expected",
    [(2, 2, 64), (2, 3, 1024), (5, 1, 3125)],
)
def test_count_formula_values(p, n, expected):
    assert count_polynomial_functions(RingCtx(p, n)) == expected


def test_count_formula_matches_enumeration(z4_oracle, z8_oracle, z9_oracle):
    for oset in (z4_oracle, z8_oracle, z9_oracle):
        assert count_polynomial_functions(oset.ctx) == len(oset)


def test_membership_closure(z8_oracle):
    rng = random.Random(12)
    members = sorted(z8_oracle.members)
    for _ in range(200):
        a = rng.choice(members)
        b = rng.choice(members)
        s = rng.randrange(8)
        assert z8_oracle.contains(tuple((x + y) % 8 for x, y in zip(a, b)))
        assert z8_oracle.contains(tuple(s * x % 8 for x in a))


def test_enumeration_budget_refusal(z4):
    with pytest.raises(BudgetExceeded):
        enumerate_polynomial_functions(z4, m=2)
    with pytest.raises(BudgetExceeded):
        enumerate_polynomial_functions(RingCtx(2, 5))


def test_span_budget_refusal(z8, z8_basis):
    with pytest.raises(BudgetExceeded):
        span_enumerate(z8_basis, budget=16)


def test_span_equals_enumeration_z4(z4, z4_basis, z4_oracle):
    span = span_enumerate(z4_basis)
    assert span.members == z4_oracle.members


def test_additive_orders(z8, z8_basis):
    assert additive_order(z8, z8_basis.table((0,), (0,)).values) == 8
    assert additive_order(z8, z8_basis.table((1,), (0,)).values) == 4
    assert additive_order(z8, z8_basis.table((2,), (0,)).values) == 2


def test_brute_force_member_agrees_with_set(z4, z4_oracle):
    rng = random.Random(13)
    for _ in range(12):
        vals = tuple(rng.randrange(4) for _ in range(4))
        f = FuncTable(z4, 1, vals)
        assert brute_force_member(f) == z4_oracle.contains(f)


def test_multivariate_span_within_budget(z4):
    basis = build_generators(z4, 2)
    span = span_enumerate(basis)
    assert len(span) <= 65536
    # Spot members: the zero function and each generator itself.
    assert span.contains(tuple([0] * 16))
    for entry in basis:
        assert span.contains(entry.table)


def test_symbolic_magnitudes():
    ctx = RingCtx(3, 11)
    # All functions over Z_{3^11}: about 10^(1e6); never materialized.
    assert 9.0e5 < log10_table_count(ctx) < 1.1e6
    # Polynomial functions: the formula gives 3^162 (Legendre valuations
    # summed by hand), around 10^77.
    assert count_polynomial_functions(ctx) == 3**162
    assert 76 < log10_polynomial_count(ctx) < 79
