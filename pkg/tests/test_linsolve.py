import itertools
import random

import pytest

from polyrep import (
    DimensionMismatch,
    LocalSystem,
    RingCtx,
    SolveStatus,
    solve_shared,
    solve_system,
)

Z4 = RingCtx(2, 2)
Z8 = RingCtx(2, 3)
Z9 = RingCtx(3, 2)


def matvec(ctx, matrix, x):
    return tuple(sum(a * b for a, b in zip(row, x)) % ctx.q for row in matrix)


def brute_force_status(ctx, matrix, rhs):
    cols = len(matrix[0]) if matrix else 0
    target = tuple(v % ctx.q for v in rhs)
    for cand in itertools.product(range(ctx.q), repeat=cols):
        if matvec(ctx, matrix, cand) == target:
            return SolveStatus.SOLVABLE
    return SolveStatus.INCONSISTENT


def test_worked_square_system():
    out = solve_system(LocalSystem(Z8, [[2, 4], [4, 0]], [4, 0]))
    assert out.solvable
    assert matvec(Z8, [[2, 4], [4, 0]], out.solution) == (4, 0)
    assert out.solution == (2, 0)


def test_identity_system():
    matrix = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    out = solve_system(LocalSystem(Z8, matrix, [5, 3, 7]))
    assert out.solvable and out.solution == (5, 3, 7)


def test_zero_divisor_inconsistency():
    out = solve_system(LocalSystem(Z4, [[2]], [1]))
    assert out.status is SolveStatus.INCONSISTENT
    assert out.failure_row == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        LocalSystem(Z4, [[1, 2]], [1, 2])
    with pytest.raises(DimensionMismatch):
        LocalSystem(Z4, [[1, 2], [1]], [1, 2])


def test_empty_edges():
    assert solve_system(LocalSystem(Z4, [], [])).solvable
    # No unknowns: rows demand 0 = b.
    assert solve_system(LocalSystem(Z4, [[], []], [0, 0])).solvable
    out = solve_system(LocalSystem(Z4, [[], []], [0, 3]))
    assert out.status is SolveStatus.INCONSISTENT
    assert out.failure_row == 1


@pytest.mark.parametrize("ctx", [Z8, Z9])
@pytest.mark.parametrize("shape", [(3, 2), (3, 3)])
def test_agrees_with_exhaustive_search(ctx, shape):
    rows, cols = shape
    rng = random.Random(rows * 100 + cols + ctx.q)
    for _ in range(40):
        matrix = [[rng.randrange(ctx.q) for _ in range(cols)] for _ in range(rows)]
        rhs = [rng.randrange(ctx.q) for _ in range(rows)]
        out = solve_system(LocalSystem(ctx, matrix, rhs))
        assert out.status is brute_force_status(ctx, matrix, rhs)
        if out.solvable:
            assert matvec(ctx, matrix, out.solution) == tuple(rhs)


def det3(m):
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


# For p=2 every square all-unit matrix of size >= 2 has even determinant
# (det of the all-ones matrix is 0 mod 2), so only 1x1 qualifies there.
@pytest.mark.parametrize("ctx, size", [(Z8, 1), (Z9, 2), (Z9, 3)])
def test_unit_matrix_systems_have_unique_solution(ctx, size):
    rng = random.Random(ctx.q + size)
    units = [x for x in range(ctx.q) if ctx.is_unit(x)]
    found = 0
    attempts = 0
    while found < 10:
        attempts += 1
        assert attempts < 10_000
        matrix = [[rng.choice(units) for _ in range(size)] for _ in range(size)]
        if size == 1:
            det = matrix[0][0]
        elif size == 2:
            det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
        else:
            det = det3(matrix)
        if not ctx.is_unit(det % ctx.q):
            continue
        found += 1
        rhs = [rng.randrange(ctx.q) for _ in range(size)]
        out = solve_system(LocalSystem(ctx, matrix, rhs))
        assert out.solvable
        solutions = [
            cand
            for cand in itertools.product(range(ctx.q), repeat=size)
            if matvec(ctx, matrix, cand) == tuple(rhs)
        ]
        assert solutions == [out.solution]


def test_shared_elimination_matches_individual_solves():
    rng = random.Random(5)
    matrix = [[rng.randrange(9) for _ in range(2)] for _ in range(4)]
    rhs_list = [[rng.randrange(9) for _ in range(4)] for _ in range(5)]
    shared = solve_shared(Z9, matrix, rhs_list)
    for rhs, outcome in zip(rhs_list, shared):
        single = solve_system(LocalSystem(Z9, matrix, rhs))
        assert outcome.status is single.status
        assert outcome.solution == single.solution


def test_pivot_trace_records_minimal_valuation_pivots():
    out = solve_system(LocalSystem(Z8, [[4, 2], [2, 4]], [2, 4]))
    assert out.solvable
    pivots = [step for step in out.pivot_trace if step.kind == "pivot"]
    # First pivot is the valuation-1 entry with least (row, col).
    assert pivots[0].row == 0 and pivots[0].col == 1 and pivots[0].valuation == 1


def test_inconsistent_trace_identifies_row():
    # Rows force 2x = 2 and 2x = 1 simultaneously.
    out = solve_system(LocalSystem(Z4, [[2], [2]], [2, 1]))
    assert out.status is SolveStatus.INCONSISTENT
    assert out.failure_row in (0, 1)
    bad = [s for s in out.pivot_trace if s.kind != "pivot"]
    assert len(bad) == 1
