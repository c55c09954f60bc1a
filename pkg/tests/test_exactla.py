import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qfrob.exactla import (
    Inconsistent,
    Matrix,
    SparseEchelon,
    embed_factor,
    inverse,
    kron,
    nullspace,
    partial_trace,
    rank,
    row_reduce,
    solve,
)
from qfrob.qscalar import ONE, Q, ZERO, parse_scalar


def rand_matrix(rng, n, m=None, density=0.7):
    m = n if m is None else m
    pool = [ZERO, ONE, Q, -Q, Q * Q + ONE, Q.inverse(), parse_scalar("2*q - 3")]
    return Matrix([[rng.choice(pool) if rng.random() < density else ZERO for _ in range(m)]
                   for _ in range(n)])


def test_kron_examples():
    assert kron(Matrix.identity(2), Matrix.identity(2)) == Matrix.identity(4)
    e = kron(Matrix.unit(2, 0, 0), Matrix.unit(2, 1, 1))
    # row-major: (0,1) -> 0*2 + 1 = 1
    assert e.first_nonzero() == (1, 1, ONE)
    assert e.nonzero_count() == 1
    k = kron(Matrix.identity(2, (2,)), Matrix.identity(3, (3,)))
    assert (k.nrows, k.shape) == (6, (2, 3))


def test_embed_factor(r2):
    R = r2.R
    assert embed_factor(R, 1, 2, 2) == R
    big = embed_factor(R, 2, 3, 2)
    assert big == kron(Matrix.identity(2), R)
    assert big.nrows == 8
    with pytest.raises((IndexError, ValueError)):
        embed_factor(R, 3, 3, 2)


def test_partial_trace_examples():
    rng = random.Random(1)
    a, b = rand_matrix(rng, 2).with_shape((2,)), rand_matrix(rng, 3).with_shape((3,))
    ab = kron(a, b)
    assert partial_trace(ab, [2]) == a.scale(b.trace())
    assert partial_trace(ab, [1]) == b.scale(a.trace())
    full = partial_trace(ab, [1, 2])
    assert full.nrows == 1 and full.rows[0][0] == ab.trace()
    assert partial_trace(Matrix.identity(4, (2, 2)), [1]) == Matrix.identity(2).scale(2)
    with pytest.raises(ValueError):
        partial_trace(Matrix.identity(4), [1])
    with pytest.raises(IndexError):
        partial_trace(Matrix.identity(4, (2, 2)), [3])


@pytest.mark.parametrize("seed", range(5))
def test_partial_trace_order_independent(seed):
    m = rand_matrix(random.Random(seed), 8).with_shape((2, 2, 2))
    one_by_one = partial_trace(partial_trace(partial_trace(m, [3]), [1]), [1])
    assert one_by_one.rows[0][0] == m.trace()
    assert partial_trace(partial_trace(m, [1]), [2]) == partial_trace(m, [1, 3])


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    row = [Q, ONE, Q * Q]
    assert rank(Matrix([row, row])) == 1
    assert rank(Matrix([[Q, ONE], [Q * Q, Q]])) == 1


@pytest.mark.parametrize("seed", range(6))
def test_row_reduce_matches_sympy_on_rationals(seed):
    rng = random.Random(seed)
    rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(5)] for _ in range(4)]
    rows[3] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
    rref, rk, piv = row_reduce(Matrix(rows))
    srref, spiv = sympy.Matrix(rows).rref()
    assert rk == len(spiv) and tuple(piv) == tuple(spiv)
    for i in range(rk):
        for j in range(5):
            assert rref.rows[i][j].constant_value() == srref[i, j]


@pytest.mark.parametrize("seed", range(4))
def test_rank_invariances(seed):
    rng = random.Random(seed)
    m = rand_matrix(rng, 4, 5)
    m.rows[3] = [a + b for a, b in zip(m.rows[0], m.rows[1])]
    r0 = rank(m)
    perm = list(range(4))
    rng.shuffle(perm)
    assert rank(Matrix([m.rows[i] for i in perm])) == r0
    scaled = Matrix([[x * (Q + ONE) for x in m.rows[0]]] + m.rows[1:])
    assert rank(scaled) == r0


def test_solve_examples():
    b = Matrix([[Q], [ONE]])
    x, unique = solve(Matrix.identity(2), b)
    assert x == b and unique
    a = Matrix([[ONE, Q], [Q, Q * Q]])
    x, unique = solve(a, Matrix([[ONE], [Q]]))
    assert not unique and a @ x == Matrix([[ONE], [Q]])
    with pytest.raises(Inconsistent):
        solve(a, Matrix([[ONE], [ONE]]))


@pytest.mark.parametrize("seed", range(4))
def test_inverse_and_nullspace(seed):
    rng = random.Random(seed)
    m = rand_matrix(rng, 4, density=0.9)
    if rank(m) == 4:
        assert m @ inverse(m) == Matrix.identity(4)
    sing = Matrix(m.rows[:3] + [[a - b for a, b in zip(m.rows[0], m.rows[1])]])
    for v in nullspace(sing):
        col = Matrix([[x] for x in v])
        assert (sing @ col).is_zero()
    assert len(nullspace(sing)) == 4 - rank(sing)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=6))
def test_sparse_echelon_rank_and_membership(rows):
    ech = SparseEchelon()
    for r in rows:
        ech.add({j: ONE * x for j, x in enumerate(r) if x})
    assert ech.rank == sympy.Matrix(rows).rank()
    for r in rows:
        assert ech.contains({j: ONE * x for j, x in enumerate(r) if x})
        assert not ech.reduce({j: ONE * x for j, x in enumerate(r) if x})
