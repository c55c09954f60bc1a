"""Independent reference computations used only by the tests.

Nothing here imports the package except for plain data types.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from itertools import permutations, product
from math import factorial

import sympy

QS = sympy.Symbol("q")


def to_sympy(x) -> sympy.Expr:
    """A RatFunc (via its grammar string) as a sympy expression in q."""
    return sympy.sympify(str(x).replace("^", "**"), locals={"q": QS})


def sympy_equal(a, b) -> bool:
    return sympy.cancel(sympy.together(a - b)) == 0


# -- symmetric group ---------------------------------------------------------


def _compose(a, b):
    # (a ∘ b)(i) = a(b(i))
    return tuple(a[i] for i in b)


def _cycle_type(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def sn_character_table(n: int) -> dict[tuple, dict[tuple, int]]:
    """Irreducible characters of S_n as {character id: {cycle type: value}}.

    Burnside's method: simultaneous eigenvectors of class-sum multiplication
    matrices give central characters, rescaled by dimensions from the column
    orthogonality relation.  Characters are keyed by their value vector.
    """
    group = list(permutations(range(n)))
    classes: dict[tuple, list] = {}
    for g in group:
        classes.setdefault(_cycle_type(g), []).append(g)
    types = sorted(classes, reverse=True)
    reps = {t: classes[t][0] for t in types}
    members = {t: set(classes[t]) for t in types}
    inv = {g: tuple(sorted(range(n), key=lambda i: g[i])) for g in group}
    k = len(types)
    # A_j[i][l] = #{(x, y) in C_j x C_i : x y = g_l}
    mats = []
    for tj in types:
        a = [[0] * k for _ in range(k)]
        for i, ti in enumerate(types):
            for l, tl in enumerate(types):
                g = reps[tl]
                a[i][l] = sum(1 for x in classes[tj] if _compose(inv[x], g) in members[ti])
        mats.append(sympy.Matrix(a))
    rng = random.Random(7)
    combo = sum((rng.randint(1, 50) * m for m in mats), sympy.zeros(k, k))
    ident = types.index(tuple([1] * n))
    chars = {}
    for _, _, vecs in combo.eigenvects():
        assert len(vecs) == 1, "class-sum eigenvalues not separated"
        v = vecs[0]
        omega = [sympy.nsimplify(v[l] / v[ident]) for l in range(k)]
        sizes = [len(classes[t]) for t in types]
        norm = sum(sympy.Rational(1) * abs(omega[l]) ** 2 / sizes[l] for l in range(k))
        dim = sympy.sqrt(sympy.Rational(factorial(n)) / norm)
        values = {t: int(omega[l] * dim / sizes[l]) for l, t in enumerate(types)}
        chars[tuple(values[t] for t in types)] = values
    assert len(chars) == k
    return chars


# -- classical Schur polynomials ---------------------------------------------


def ssyt(shape, nvars):
    """All semistandard tableaux of the shape with entries 0..nvars-1, row by row."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling = {}

    def place(idx):
        if idx == len(cells):
            yield dict(filling)
            return
        r, c = cells[idx]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, nvars):
            filling[(r, c)] = v
            yield from place(idx + 1)
        filling.pop((r, c), None)

    yield from place(0)


def schur_poly(shape, nvars) -> Counter:
    """Classical Schur polynomial as a Counter of exponent vectors."""
    out = Counter()
    for t in ssyt(shape, nvars):
        exp = [0] * nvars
        for v in t.values():
            exp[v] += 1
        out[tuple(exp)] += 1
    return out


def poly_mul(a: Counter, b: Counter) -> Counter:
    out = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return +out


def lr_coefficients(lam, mu, nvars=6) -> dict[tuple, int]:
    """Decompose s_λ s_μ by repeatedly stripping the dominant monomial."""
    rest = poly_mul(schur_poly(lam, nvars), schur_poly(mu, nvars))
    out = {}
    while rest:
        lead = max(e for e, c in rest.items() if c)
        c = rest[lead]
        shape = tuple(x for x in lead if x)
        out[shape] = c
        sub = schur_poly(shape, nvars)
        for e, v in sub.items():
            rest[e] -= c * v
        rest = Counter({e: v for e, v in rest.items() if v})
    return out


def partitions_of(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def hook_count(shape) -> int:
    n = sum(shape)
    conj = [sum(1 for r in shape if r > c) for c in range(shape[0])] if shape else []
    prod_ = 1
    for r, length in enumerate(shape):
        for c in range(length):
            prod_ *= (length - c - 1) + (conj[c] - r - 1) + 1
    return factorial(n) // prod_
