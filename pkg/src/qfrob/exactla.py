"""Dense exact matrices over Q(q) with tensor-factor bookkeeping.

Composite indices of ``V1 ⊗ V2 ⊗ ... ⊗ Vm`` are row-major: the leftmost factor
is the most significant digit.  This is the same convention ``kron`` uses, and
every module in the package relies on it.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .qscalar import ONE, ZERO, RatFunc, as_ratfunc, specialize

__all__ = [
    "Matrix",
    "Inconsistent",
    "SparseEchelon",
    "kron",
    "embed_factor",
    "partial_trace",
    "row_reduce",
    "rank",
    "nullspace",
    "solve",
    "inverse",
]


class Inconsistent(ArithmeticError):
    """The linear system has no solution."""


def _prod(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


class Matrix:
    """Dense matrix of :class:`RatFunc`; ``shape`` lists tensor factor sizes."""

    __slots__ = ("rows", "ncols", "shape")

    def __init__(self, rows: Sequence[Sequence], shape: Sequence[int] | None = None,
                 ncols: int | None = None):
        self.rows = [[as_ratfunc(x) for x in row] for row in rows]
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
        self.shape = tuple(shape) if shape is not None else None
        if self.shape is not None and _prod(self.shape) != len(self.rows):
            raise ValueError(f"tensor shape {self.shape} does not match {len(self.rows)} rows")

    @classmethod
    def _wrap(cls, rows: list[list[RatFunc]], shape=None, ncols: int | None = None) -> "Matrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.ncols = len(rows[0]) if rows else (ncols or 0)
        m.shape = tuple(shape) if shape is not None else None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None, shape=None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls._wrap([[ZERO] * ncols for _ in range(nrows)], shape, ncols)

    @classmethod
    def identity(cls, n: int, shape=None) -> "Matrix":
        m = cls.zeros(n, n, shape)
        for i in range(n):
            m.rows[i][i] = ONE
        return m

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        m = cls.zeros(n)
        m.rows[i][j] = ONE
        return m

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def with_shape(self, shape) -> "Matrix":
        return Matrix._wrap([list(r) for r in self.rows], shape, self.ncols)

    def copy(self) -> "Matrix":
        return Matrix._wrap([list(r) for r in self.rows], self.shape, self.ncols)

    def set(self, i: int, j: int, value) -> "Matrix":
        """Copy with one entry replaced."""
        m = self.copy()
        m.rows[i][j] = as_ratfunc(value)
        return m

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                            self.shape or other.shape, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                            self.shape or other.shape, self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap([[-a for a in r] for r in self.rows], self.shape, self.ncols)

    def scale(self, c) -> "Matrix":
        c = as_ratfunc(c)
        if not c:
            return Matrix.zeros(self.nrows, self.ncols, self.shape)
        return Matrix._wrap([[a * c if a else ZERO for a in r] for r in self.rows],
                            self.shape, self.ncols)

    def __mul__(self, c) -> "Matrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        sparse_other = [[(j, b) for j, b in enumerate(row) if b] for row in other.rows]
        out = []
        n = other.ncols
        for row in self.rows:
            acc: dict[int, RatFunc] = {}
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in sparse_other[k]:
                    t = a * b
                    if j in acc:
                        acc[j] = acc[j] + t
                    else:
                        acc[j] = t
            new = [ZERO] * n
            for j, v in acc.items():
                new[j] = v
            out.append(new)
        shape = self.shape if self.shape == other.shape else None
        return Matrix._wrap(out, shape, n)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.nrows, self.shape)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> "Matrix":
        return Matrix._wrap([list(col) for col in zip(*self.rows)], self.shape, self.nrows)

    def trace(self) -> RatFunc:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        total = ZERO
        for i in range(self.nrows):
            total = total + self.rows[i][i]
        return total

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def first_nonzero(self):
        """``(i, j, value)`` of the first nonzero entry in row-major order, or ``None``."""
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a:
                    return i, j, a
        return None

    def first_difference(self, other: "Matrix"):
        self._check_same(other)
        for i, (r, s) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return i, j, a, b
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    def specialize(self, q0) -> list[list[Fraction]]:
        return [[specialize(a, q0) for a in r] for r in self.rows]

    def nonzero_count(self) -> int:
        return sum(1 for r in self.rows for a in r if a)

    def _check_same(self, other: "Matrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix([{body}])"


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; the tensor shape is the concatenation of the operands'."""
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y if x and y else ZERO for x in ra for y in rb])
    sa = a.shape or (a.nrows,)
    sb = b.shape or (b.nrows,)
    shape = sa + sb if a.is_square() and b.is_square() else None
    return Matrix._wrap(rows, shape, a.ncols * b.ncols)


def embed_factor(m: Matrix, i: int, total: int, dim: int | None = None) -> Matrix:
    """``I^{⊗(i-1)} ⊗ M ⊗ I^{⊗(total-i-1)}`` for ``M`` acting on ``V ⊗ V``; ``i`` is 1-based."""
    if dim is None:
        dim = _square_root(m.nrows)
    if not 1 <= i <= total - 1:
        raise IndexError(f"factor index {i} out of range for {total} factors")
    left = dim ** (i - 1)
    right = dim ** (total - i - 1)
    n = dim ** total
    block = m.nrows
    out = [[ZERO] * n for _ in range(n)]
    entries = [(r, c, v) for r, row in enumerate(m.rows) for c, v in enumerate(row) if v]
    for a in range(left):
        for b in range(right):
            for r, c, v in entries:
                out[(a * block + r) * right + b][(a * block + c) * right + b] = v
    return Matrix._wrap(out, (dim,) * total, n)


def _square_root(n: int) -> int:
    d = int(round(n ** 0.5))
    if d * d != n:
        raise ValueError(f"{n} is not a perfect square")
    return d


def partial_trace(m: Matrix, factors: Iterable[int]) -> Matrix:
    """Trace over the listed 1-based tensor factors, keeping the rest in order."""
    if m.shape is None:
        raise ValueError("partial_trace needs a tensor shape")
    shape = m.shape
    traced = sorted(set(factors))
    if not traced:
        raise ValueError("no factors to trace")
    for f in traced:
        if not 1 <= f <= len(shape):
            raise IndexError(f"factor {f} out of range for shape {shape}")
    kept = [k for k in range(len(shape)) if k + 1 not in traced]
    kept_shape = tuple(shape[k] for k in kept)
    traced_idx = [f - 1 for f in traced]
    strides = [_prod(shape[k + 1:]) for k in range(len(shape))]
    n_out = _prod(kept_shape)
    out = [[ZERO] * n_out for _ in range(n_out)]
    kept_ranges = [range(shape[k]) for k in kept]
    tr_ranges = [range(shape[k]) for k in traced_idx]
    kept_offsets = [sum(d * strides[k] for d, k in zip(digits, kept)) for digits in product(*kept_ranges)]
    tr_offsets = [sum(d * strides[k] for d, k in zip(digits, traced_idx)) for digits in product(*tr_ranges)]
    for i, oi in enumerate(kept_offsets):
        row_i = out[i]
        for j, oj in enumerate(kept_offsets):
            total = ZERO
            for t in tr_offsets:
                v = m.rows[oi + t][oj + t]
                if v:
                    total = total + v
            row_i[j] = total
    return Matrix._wrap(out, kept_shape if kept_shape else (1,), n_out)


class SparseEchelon:
    """Incremental echelon form of sparse vectors ``{column: RatFunc}``.

    Columns are integers; the pivot of a row is its smallest column.  Reducing a
    vector clears every pivot column, so the residue is a canonical
    representative modulo the span regardless of insertion order.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, RatFunc]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict[int, RatFunc], track: bool = False):
        v = {c: x for c, x in vec.items() if x}
        coords: dict[int, RatFunc] = {}
        heap = [c for c in v if c in self.pivots]
        heapq.heapify(heap)
        seen = set(heap)
        pivots = self.pivots
        while heap:
            c = heapq.heappop(heap)
            seen.discard(c)
            a = v.get(c)
            if not a:
                continue
            row = pivots[c]
            if track:
                coords[c] = a
            for k, b in row.items():
                if k == c:
                    continue
                t = a * b
                old = v.get(k)
                if old is None:
                    v[k] = -t
                    if k in pivots and k not in seen:
                        heapq.heappush(heap, k)
                        seen.add(k)
                else:
                    new = old - t
                    if new:
                        v[k] = new
                    else:
                        del v[k]
            del v[c]
        return (v, coords) if track else v

    def add(self, vec: dict[int, RatFunc]) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        inv = r[c].inverse()
        self.pivots[c] = {k: (x * inv if k != c else ONE) for k, x in r.items()}
        return True

    def contains(self, vec: dict[int, RatFunc]) -> bool:
        return not self.reduce(vec)

    def fully_reduce(self) -> None:
        """Back-substitute so that every pivot column is zero in all other rows."""
        for c in sorted(self.pivots, reverse=True):
            row = self.pivots[c]
            others = {k: x for k, x in row.items() if k != c}
            reduced = self.reduce(others)
            reduced[c] = ONE
            self.pivots[c] = reduced


def row_reduce(a: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns (leftmost-column pivoting)."""
    ech = SparseEchelon()
    for row in a.rows:
        ech.add({j: x for j, x in enumerate(row) if x})
    ech.fully_reduce()
    pivots = sorted(ech.pivots)
    rows = []
    for c in pivots:
        r = [ZERO] * a.ncols
        for k, x in ech.pivots[c].items():
            r[k] = x
        rows.append(r)
    while len(rows) < a.nrows:
        rows.append([ZERO] * a.ncols)
    return Matrix._wrap(rows, None, a.ncols), len(pivots), pivots


def rank(a: Matrix) -> int:
    ech = SparseEchelon()
    for row in a.rows:
        ech.add({j: x for j, x in enumerate(row) if x})
    return ech.rank


def nullspace(a: Matrix) -> list[list[RatFunc]]:
    """Basis of ``{x : a x = 0}``, one vector per free column."""
    rref, _, pivots = row_reduce(a)
    free = [j for j in range(a.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * a.ncols
        x[f] = ONE
        for i, p in enumerate(pivots):
            x[p] = -rref.rows[i][f]
        basis.append(x)
    return basis


def solve(a: Matrix, b: Matrix) -> tuple[Matrix, bool]:
    """One solution of ``a x = b`` and whether it is unique.

    Free variables are set to zero.  Raises :class:`Inconsistent` when the
    system has no solution.
    """
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    n = a.ncols
    ech = SparseEchelon()
    for ra, rb in zip(a.rows, b.rows):
        vec = {j: x for j, x in enumerate(ra) if x}
        vec.update({n + j: x for j, x in enumerate(rb) if x})
        ech.add(vec)
    if any(c >= n for c in ech.pivots):
        raise Inconsistent("linear system has no solution")
    ech.fully_reduce()
    x = [[ZERO] * b.ncols for _ in range(n)]
    for c, row in ech.pivots.items():
        for k, v in row.items():
            if k >= n:
                x[c][k - n] = v
    return Matrix._wrap(x, None, b.ncols), ech.rank == n


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise ValueError("inverse of a non-square matrix")
    x, unique = solve(a, Matrix.identity(a.nrows))
    if not unique:
        raise ZeroDivisionError("singular matrix")
    return x.with_shape(a.shape)
