"""The Reflection Equation algebra L(R) and its quantum symmetric functions.

Generators ``l_i^j`` are labelled ``g = i*N + j`` (0-based) and words are
tuples of labels.  Identities "in the algebra" are decided degree by degree:
the degree-d part of the two-sided ideal generated by the entries of
``R L1 R L1 - L1 R L1 R`` is spanned explicitly and row-reduced, and
:func:`normal_form` returns the canonical residue modulo that span.  Words of
one degree are ordered lexicographically by label; the pivot of an ideal
vector is its lexicographically largest word.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exactla import Inconsistent, Matrix, SparseEchelon, embed_factor, inverse, kron, partial_trace, solve
from .hecke import HeckeElement, Partition, StdTableau, antisymmetrizer, jucys_murphy, primitive_idempotent, row_tableau
from .hsym import HeckeSymmetry, SkewInverseData, birank, c_power, rho, skew_inverse
from .qscalar import ONE, Q, ZERO, RatFunc, as_ratfunc, specialize

__all__ = [
    "NCPoly",
    "LMatrix",
    "IdealBasis",
    "generator",
    "re_relations",
    "ideal_component",
    "normal_form",
    "reduces_to_zero",
    "l_product",
    "ch",
    "ch_right",
    "power_sum",
    "power_sum_partition",
    "schur",
    "elementary",
    "is_central",
    "rep_generators",
    "apply_rep",
    "schur_weyl_check",
    "cayley_hamilton_even",
    "cayley_hamilton_expression",
    "lmatrix_L",
    "l_over",
    "tr_r",
    "select_slot_convention",
    "SLOT_CONVENTIONS",
    "BiRankMismatch",
]

QQ = Q - Q.inverse()


class BiRankMismatch(ValueError):
    pass

Word = tuple


class NCPoly:
    """Noncommutative polynomial in the N² generators with Q(q) coefficients."""

    __slots__ = ("n_gens", "terms")

    def __init__(self, n_gens: int, terms: Mapping[Word, object] | None = None):
        self.n_gens = n_gens
        clean: dict[Word, RatFunc] = {}
        for w, c in (terms or {}).items():
            c = as_ratfunc(c)
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, n_gens: int, terms: dict) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.n_gens = n_gens
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, n_gens: int) -> "NCPoly":
        return cls._wrap(n_gens, {(): ONE})

    @classmethod
    def zero(cls, n_gens: int) -> "NCPoly":
        return cls._wrap(n_gens, {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous polynomial; ``-1`` for zero."""
        ds = self.degrees()
        if not ds:
            return -1
        if len(ds) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        _acc(out, other.terms, None)
        return NCPoly._wrap(self.n_gens, out)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        _acc(out, other.terms, -ONE)
        return NCPoly._wrap(self.n_gens, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly._wrap(self.n_gens, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "NCPoly":
        c = as_ratfunc(c)
        if not c:
            return NCPoly.zero(self.n_gens)
        return NCPoly._wrap(self.n_gens, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        out: dict[Word, RatFunc] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                _add(out, u + v, a * b)
        return NCPoly._wrap(self.n_gens, out)

    def __rmul__(self, other):
        return self.scale(other)

    def specialize(self, q0) -> dict[Word, object]:
        return {w: specialize(c, q0) for w, c in self.terms.items()}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        n = int(round(self.n_gens ** 0.5))
        parts = []
        for w in sorted(self.terms):
            name = "*".join(f"l{g // n + 1}{g % n + 1}" for g in w) or "1"
            parts.append(f"({self.terms[w]})*{name}")
        return " + ".join(parts)


def _add(out: dict, w, c) -> None:
    old = out.get(w)
    if old is None:
        out[w] = c
    else:
        new = old + c
        if new:
            out[w] = new
        else:
            del out[w]


def _acc(out: dict, terms: Mapping, factor) -> None:
    for w, c in terms.items():
        _add(out, w, c if factor is None else c * factor)


def generator(n: int, i: int, j: int) -> NCPoly:
    """The generator l_i^j (0-based i, j) of the RE algebra on V = C^n."""
    return NCPoly._wrap(n * n, {(i * n + j,): ONE})


class LMatrix:
    """Square matrix with :class:`NCPoly` entries."""

    __slots__ = ("rows", "n_gens", "shape")

    def __init__(self, rows: list[list[NCPoly]], n_gens: int, shape=None):
        self.rows = rows
        self.n_gens = n_gens
        self.shape = tuple(shape) if shape is not None else None

    @property
    def size(self) -> int:
        return len(self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return self._mul_scalar_right(other)
        size = self.size
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                acc = NCPoly.zero(self.n_gens)
                for k in range(size):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LMatrix(out, self.n_gens, self.shape)

    def __rmatmul__(self, other: Matrix) -> "LMatrix":
        size = self.size
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                acc: dict = {}
                for k, c in enumerate(other.rows[i]):
                    if c and self.rows[k][j]:
                        _acc(acc, self.rows[k][j].terms, c)
                row.append(NCPoly._wrap(self.n_gens, acc))
            out.append(row)
        return LMatrix(out, self.n_gens, self.shape)

    def _mul_scalar_right(self, other: Matrix) -> "LMatrix":
        size = self.size
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                acc: dict = {}
                for k in range(size):
                    c = other.rows[k][j]
                    if c and self.rows[i][k]:
                        _acc(acc, self.rows[i][k].terms, c)
                row.append(NCPoly._wrap(self.n_gens, acc))
            out.append(row)
        return LMatrix(out, self.n_gens, self.shape)

    def __sub__(self, other: "LMatrix") -> "LMatrix":
        return LMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                       self.n_gens, self.shape)

    def __add__(self, other: "LMatrix") -> "LMatrix":
        return LMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                       self.n_gens, self.shape)

    def scale_left(self, p: NCPoly) -> "LMatrix":
        """Entrywise ``p * entry``."""
        return LMatrix([[p * a for a in r] for r in self.rows], self.n_gens, self.shape)

    def entries(self) -> Iterable[NCPoly]:
        for r in self.rows:
            yield from r

    def __eq__(self, other) -> bool:
        return isinstance(other, LMatrix) and self.rows == other.rows


def lmatrix_L(n: int) -> LMatrix:
    """The generating matrix L: entry (i, j) is l_i^j."""
    return LMatrix([[generator(n, i, j) for j in range(n)] for i in range(n)], n * n, (n,))


def _embed_L1(n: int, m: int) -> LMatrix:
    """L ⊗ I^{⊗(m-1)}."""
    rest = n ** (m - 1)
    size = n ** m
    zero = NCPoly.zero(n * n)
    rows = [[zero] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            g = generator(n, i, j)
            for a in range(rest):
                rows[i * rest + a][j * rest + a] = g
    return LMatrix(rows, n * n, (n,) * m)


def tr_r(data: SkewInverseData, m: LMatrix) -> NCPoly:
    """Tr(C · M) for an N×N matrix with algebra entries."""
    n = data.c.nrows
    acc: dict = {}
    for i in range(n):
        for j in range(n):
            c = data.c.rows[i][j]
            if c:
                _acc(acc, m.rows[j][i].terms, c)
    return NCPoly._wrap(m.n_gens, acc)


# -- relations and graded ideal components ---------------------------------


def re_relations(s: HeckeSymmetry) -> list[NCPoly]:
    """Nonzero, deduplicated entries of R L1 R L1 - L1 R L1 R."""

    def build():
        l1 = _embed_L1(s.N, 2)
        lhs = s.R @ l1 @ s.R @ l1
        rhs = l1 @ s.R @ l1 @ s.R
        diff = lhs - rhs
        seen = set()
        out = []
        for p in diff.entries():
            if not p:
                continue
            lead = max(p.terms)
            inv = p.terms[lead].inverse()
            key = tuple(sorted((w, c * inv) for w, c in p.terms.items()))
            if key in seen:
                continue
            seen.add(key)
            out.append(p)
        return out

    return s.cached("re_relations", build)


def _word_index(n_gens: int, d: int):
    """Column index of a word: lexicographically largest word gets column 0."""
    total = n_gens ** d

    def index(w: Word) -> int:
        v = 0
        for g in w:
            v = v * n_gens + g
        return total - 1 - v

    def word(c: int) -> Word:
        v = total - 1 - c
        out = []
        for _ in range(d):
            out.append(v % n_gens)
            v //= n_gens
        return tuple(reversed(out))

    return index, word


@dataclass
class IdealBasis:
    degree: int
    n_gens: int
    echelon: SparseEchelon
    rank: int

    @property
    def quotient_dimension(self) -> int:
        return self.n_gens ** self.degree - self.rank

    def to_vector(self, p: NCPoly) -> dict[int, RatFunc]:
        index, _ = _word_index(self.n_gens, self.degree)
        return {index(w): c for w, c in p.terms.items()}

    def to_poly(self, vec: Mapping[int, RatFunc]) -> NCPoly:
        _, word = _word_index(self.n_gens, self.degree)
        return NCPoly._wrap(self.n_gens, {word(c): x for c, x in vec.items()})


def _relation_basis(s: HeckeSymmetry) -> list[NCPoly]:
    """A linearly independent subset of the relations (degree-2 ideal basis)."""

    def build():
        n_gens = s.N * s.N
        index, _ = _word_index(n_gens, 2)
        ech = SparseEchelon()
        keep = []
        for r in re_relations(s):
            if ech.add({index(w): c for w, c in r.terms.items()}):
                keep.append(r)
        return keep

    return s.cached("relation_basis", build)


def ideal_component(s: HeckeSymmetry, d: int) -> IdealBasis:
    """Row-reduced span of {u·r·v : r a relation, |u| + |v| = d - 2}."""
    if d < 2:
        raise ValueError("ideal components start in degree 2")

    def build():
        n_gens = s.N * s.N
        index, _ = _word_index(n_gens, d)
        rels = _relation_basis(s)
        ech = SparseEchelon()
        if d == 2:
            for r in rels:
                ech.add({index(w): c for w, c in r.terms.items()})
            return IdealBasis(d, n_gens, ech, ech.rank)
        # I_d = I_{d-1}·V + V^{⊗(d-2)}·I_2; the second family is enough together
        # with right multiples of lower components, but spanning by all
        # placements keeps the construction literal.
        for left in range(d - 1):
            right = d - 2 - left
            for u in product(range(n_gens), repeat=left):
                for v in product(range(n_gens), repeat=right):
                    for r in rels:
                        ech.add({index(u + w + v): c for w, c in r.terms.items()})
        return IdealBasis(d, n_gens, ech, ech.rank)

    return s.cached(("ideal", d), build)


def normal_form(p: NCPoly, basis: IdealBasis) -> NCPoly:
    """Canonical residue of a homogeneous ``p`` modulo the ideal component."""
    if not p:
        return p
    deg = p.degree()
    if deg != basis.degree:
        raise ValueError(f"degree mismatch: polynomial has degree {deg}, basis has {basis.degree}")
    return basis.to_poly(basis.echelon.reduce(basis.to_vector(p)))


def reduces_to_zero(s: HeckeSymmetry, p: NCPoly) -> bool:
    """True iff the homogeneous ``p`` lies in the RE ideal."""
    if not p:
        return True
    d = p.degree()
    if d < 2:
        return False
    return not normal_form(p, ideal_component(s, d))


# -- L-products and the characteristic map ---------------------------------


def _l_over_coeffs(s: HeckeSymmetry, n: int) -> list[dict[int, Matrix]]:
    """Coefficient matrices of each generator in L_{\\overline k}, k = 1..n, on V^{⊗n}."""

    def build():
        N = s.N
        rest = Matrix.identity(N ** (n - 1)) if n > 1 else None
        first = {}
        for i in range(N):
            for j in range(N):
                e = Matrix.unit(N, i, j)
                first[i * N + j] = (kron(e, rest) if rest is not None else e).with_shape((N,) * n)
        levels = [first]
        for k in range(1, n):
            rk = s.r_i(k, n)
            rk_inv = s.r_i_inv(k, n)
            levels.append({g: (rk @ m @ rk_inv).with_shape((N,) * n) for g, m in levels[-1].items()})
        return levels

    return s.cached(("l_over", n), build)


def _l_under_coeffs(s: HeckeSymmetry, n: int) -> list[dict[int, Matrix]]:
    """Coefficient matrices of each generator in L_{\\underline k}, k = 1..n, on V^{⊗n}."""

    def build():
        N = s.N
        rest = Matrix.identity(N ** (n - 1)) if n > 1 else None
        first = {}
        for i in range(N):
            for j in range(N):
                e = Matrix.unit(N, i, j)
                first[i * N + j] = (kron(e, rest) if rest is not None else e).with_shape((N,) * n)
        levels = [first]
        for k in range(1, n):
            rk = s.r_i(k, n)
            rk_inv = s.r_i_inv(k, n)
            levels.append({g: (rk_inv @ m @ rk).with_shape((N,) * n) for g, m in levels[-1].items()})
        return levels

    return s.cached(("l_under", n), build)


def _lambda_words(s: HeckeSymmetry, n: int) -> dict[Word, Matrix]:
    """Λ_w with L_{\\overline{1→n}} = Σ_w Λ_w ⊗ w (scalar N^n-square matrices)."""

    def build():
        levels = _l_over_coeffs(s, n)
        current = {(): None}
        for k in range(n):
            nxt = {}
            for w, m in current.items():
                for g, mg in levels[k].items():
                    prod_ = mg if m is None else m @ mg
                    if not prod_.is_zero():
                        nxt[w + (g,)] = prod_
            current = nxt
        return current

    return s.cached(("lambda_words", n), build)


def l_product(s: HeckeSymmetry, n: int) -> LMatrix:
    """L_{\\overline 1} L_{\\overline 2} ... L_{\\overline n} as a matrix of degree-n NCPolys."""
    size = s.N ** n
    n_gens = s.N * s.N
    acc = [[{} for _ in range(size)] for _ in range(size)]
    for w, m in _lambda_words(s, n).items():
        for i, row in enumerate(m.rows):
            for j, c in enumerate(row):
                if c:
                    _add(acc[i][j], w, c)
    return LMatrix([[NCPoly._wrap(n_gens, e) for e in row] for row in acc], n_gens, (s.N,) * n)


def l_over(s: HeckeSymmetry, k: int, n: int) -> LMatrix:
    """L_{\\overline k} on V^{⊗n} as a matrix of generators."""
    size = s.N ** n
    n_gens = s.N * s.N
    acc = [[{} for _ in range(size)] for _ in range(size)]
    for g, m in _l_over_coeffs(s, n)[k - 1].items():
        for i, row in enumerate(m.rows):
            for j, c in enumerate(row):
                if c:
                    _add(acc[i][j], (g,), c)
    return LMatrix([[NCPoly._wrap(n_gens, e) for e in row] for row in acc], n_gens, (s.N,) * n)


def _trace_against(f: Matrix, m: Matrix) -> RatFunc:
    """Tr(F · M)."""
    total = ZERO
    for a, frow in enumerate(f.rows):
        for b, x in enumerate(frow):
            if x:
                y = m.rows[b][a]
                if y:
                    total = total + x * y
    return total


def ch(s: HeckeSymmetry, data: SkewInverseData | None, z: HeckeElement, n: int | None = None) -> NCPoly:
    """Tr_{R(1..n)}(ρ_R(z) L_{\\overline{1→n}})."""
    data = data or skew_inverse(s)
    n = z.n if n is None else n
    f = c_power(data, range(1, n + 1), n) @ rho(s, z, n)
    out: dict = {}
    for w, m in _lambda_words(s, n).items():
        c = _trace_against(f, m)
        if c:
            out[w] = c
    return NCPoly._wrap(s.N * s.N, out)


def ch_right(s: HeckeSymmetry, data: SkewInverseData | None, z: HeckeElement, n: int | None = None) -> NCPoly:
    """Tr_{R(1..n)}(L_{\\overline{1→n}} ρ_R(z)); equal to :func:`ch` by cyclicity."""
    data = data or skew_inverse(s)
    n = z.n if n is None else n
    cn = c_power(data, range(1, n + 1), n)
    r = rho(s, z, n)
    out: dict = {}
    for w, m in _lambda_words(s, n).items():
        c = _trace_against(r, cn @ m)
        if c:
            out[w] = c
    return NCPoly._wrap(s.N * s.N, out)


def _l_power(s: HeckeSymmetry, k: int) -> LMatrix:
    def build():
        L = lmatrix_L(s.N)
        out = L
        for _ in range(k - 1):
            out = out @ L
        return out

    return s.cached(("L_power", k), build)


def power_sum(s: HeckeSymmetry, data: SkewInverseData | None, k: int) -> NCPoly:
    """p_k = Tr_R(L^k) with the ordinary matrix power."""
    if k < 1:
        raise ValueError("power sums start at k = 1")
    data = data or skew_inverse(s)
    return tr_r(data, _l_power(s, k))


def power_sum_partition(s: HeckeSymmetry, data: SkewInverseData | None, nu: Sequence[int]) -> NCPoly:
    """p_ν = p_{ν_1} p_{ν_2} ... with parts multiplied in decreasing order."""
    nu = Partition(nu)
    out = NCPoly.one(s.N * s.N)
    for part in nu:
        out = out * power_sum(s, data, part)
    return out


def schur(s: HeckeSymmetry, data: SkewInverseData | None, lam: Sequence[int],
          tableau: StdTableau | None = None) -> NCPoly:
    """s_λ = Tr_{R(1..k)}(ρ_R(e^λ_TT) L_{\\overline{1→k}})."""
    lam = Partition(lam)
    t = tableau or row_tableau(lam)
    if t.shape != lam:
        raise ValueError(f"tableau shape {t.shape} does not match {lam}")
    return ch(s, data, primitive_idempotent(t), lam.n)


def elementary(s: HeckeSymmetry, data: SkewInverseData | None, k: int) -> NCPoly:
    """e_k(L) = Tr_{R(1..k)}(ρ_R(a_k) L_{\\overline{1→k}}); e_0 = 1."""
    if k == 0:
        return NCPoly.one(s.N * s.N)
    return ch(s, data, antisymmetrizer(k), k)


def is_central(s: HeckeSymmetry, p: NCPoly) -> bool:
    """True iff every commutator l_i^j p - p l_i^j lies in the ideal."""
    if not p:
        return True
    d = p.degree()
    basis = ideal_component(s, d + 1)
    for g in range(s.N * s.N):
        gen = NCPoly._wrap(s.N * s.N, {(g,): ONE})
        if normal_form(gen * p - p * gen, basis):
            return False
    return True


# -- representations on V^{⊗k} ---------------------------------------------

SLOT_CONVENTIONS = ("column", "row")


def _rep_solve(s: HeckeSymmetry, k: int, convention: str) -> dict[int, Matrix]:
    N = s.N
    n_gens = N * N
    dim = N ** k
    if k == 0:
        return {g: Matrix.identity(1).scale(ONE if g // N == g % N else ZERO) for g in range(n_gens)}
    m = k + 1
    under = _l_under_coeffs(s, m)[m - 1]
    j = rho(s, jucys_murphy(m, m), m)
    j_inv = inverse(j)
    # unknown Y[(g, J)], equations indexed (I, i, j); one right-hand side per K
    a = Matrix.zeros(dim * N * N, n_gens * dim)
    rhs = Matrix.zeros(dim * N * N, dim)
    for big_i in range(dim):
        for i in range(N):
            for jj in range(N):
                row = (big_i * N + i) * N + jj
                for g in range(n_gens):
                    ng = under[g]
                    src = ng.rows[big_i * N + i]
                    for big_j in range(dim):
                        x = src[big_j * N + jj]
                        if x:
                            a.rows[row][g * dim + big_j] = x
                for big_k in range(dim):
                    if convention == "column":
                        rhs.rows[row][big_k] = j_inv.rows[big_i * N + i][big_k * N + jj]
                    else:
                        rhs.rows[row][big_k] = j_inv.rows[big_i * N + jj][big_k * N + i]
    y, _ = solve(a, rhs)
    reps = {}
    for g in range(n_gens):
        x = Matrix.zeros(dim, shape=(N,) * k)
        for big_j in range(dim):
            for big_k in range(dim):
                x.rows[big_k][big_j] = y.rows[g * dim + big_j][big_k]
        reps[g] = x
    return reps


def _matches_basic_action(s: HeckeSymmetry, data: SkewInverseData, reps: dict[int, Matrix]) -> bool:
    """Check l_i^j ▷ x_k = δ_i^j x_k - (q - q^{-1}) B_k^j x_i on V."""
    N = s.N
    for i in range(N):
        for j in range(N):
            x = reps[i * N + j]
            for k in range(N):
                expected = [ZERO] * N
                if i == j:
                    expected[k] = expected[k] + ONE
                expected[i] = expected[i] - QQ * data.b.rows[k][j]
                if [x.rows[r][k] for r in range(N)] != expected:
                    return False
    return True


def select_slot_convention(s: HeckeSymmetry, data: SkewInverseData | None = None) -> str:
    """The free-slot contraction that reproduces the basic action on V (k = 1)."""
    data = data or skew_inverse(s)

    def build():
        for conv in SLOT_CONVENTIONS:
            try:
                reps = _rep_solve(s, 1, conv)
            except Inconsistent:
                continue
            if _matches_basic_action(s, data, reps):
                return conv
        raise RuntimeError("no slot convention reproduces the action on V")

    return s.cached("slot_convention", build)


def rep_generators(s: HeckeSymmetry, data: SkewInverseData | None, k: int,
                   convention: str | None = None) -> dict[int, Matrix]:
    """Operators of each generator on V^{⊗k} from L_{\\underline{k+1}} ▷ x = J_{k+1}^{-1} x."""
    data = data or skew_inverse(s)
    convention = convention or select_slot_convention(s, data)
    return s.cached(("reps", k, convention), lambda: _rep_solve(s, k, convention))


def apply_rep(reps: Mapping[int, Matrix], p: NCPoly) -> Matrix:
    """Evaluate p with each generator replaced by its operator."""
    any_rep = next(iter(reps.values()))
    dim = any_rep.nrows
    shape = any_rep.shape
    # group by first letter recursively: p = c·1 + Σ_g g · p_g
    cache: dict[Word, Matrix] = {(): Matrix.identity(dim, shape)}

    def word_image(w: Word) -> Matrix:
        if w in cache:
            return cache[w]
        img = reps[w[0]] @ word_image(w[1:])
        cache[w] = img
        return img

    out = Matrix.zeros(dim, shape=shape)
    for w, c in p.terms.items():
        out = out + word_image(w).scale(c)
    return out.with_shape(shape)


def schur_weyl_check(s: HeckeSymmetry, data: SkewInverseData | None, k: int,
                     reps: Mapping[int, Matrix] | None = None) -> bool:
    """Every generator operator commutes with R_1, ..., R_{k-1} on V^{⊗k}."""
    if reps is None:
        reps = rep_generators(s, data, k)
    for m in range(1, k):
        rm = s.r_i(m, k)
        for x in reps.values():
            if x @ rm != rm @ x:
                return False
    return True


# -- Cayley-Hamilton --------------------------------------------------------


def cayley_hamilton_expression(s: HeckeSymmetry, data: SkewInverseData | None, m: int) -> LMatrix:
    """Σ_{k=0}^{m} (-q)^k e_k(L) L^{m-k}, with L^0 = I."""
    data = data or skew_inverse(s)
    N = s.N
    n_gens = N * N
    zero = NCPoly.zero(n_gens)
    total = LMatrix([[zero] * N for _ in range(N)], n_gens, (N,))
    for k in range(m + 1):
        coeff = (-Q) ** k
        ek = elementary(s, data, k).scale(coeff)
        if k < m:
            term = _l_power(s, m - k).scale_left(ek)
        else:
            term = LMatrix([[ek if i == j else zero for j in range(N)] for i in range(N)], n_gens, (N,))
        total = total + term
    return total


def cayley_hamilton_even(s: HeckeSymmetry, data: SkewInverseData | None, m: int) -> bool:
    """True iff every entry of the even Cayley-Hamilton expression lies in the ideal."""
    br = s.cached(("birank", 6), lambda: birank(s))
    if (br.r, br.s) != (m, 0):
        raise BiRankMismatch(f"Cayley-Hamilton of order {m} needs bi-rank ({m}|0), found {br}")
    expr = cayley_hamilton_expression(s, data, m)
    return all(reduces_to_zero(s, p) for p in expr.entries())
