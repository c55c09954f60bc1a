"""The Hecke algebra H_n(q) of type A in the T_w basis.

Generators satisfy ``(τ_i - q)(τ_i + q^{-1}) = 0`` together with the braid
relations.  Permutations are tuples in one-line notation on ``0..n-1``;
``τ_i`` (1-based ``i``) corresponds to the adjacent transposition swapping
``i-1`` and ``i``.  For a reduced word ``w = s_{i1}...s_{ik}`` we have
``T_w = τ_{i1}...τ_{ik}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .exactla import Matrix, SparseEchelon
from .qscalar import ONE, Q, ZERO, RatFunc, as_ratfunc, q_int, q_pow

__all__ = [
    "Partition",
    "StdTableau",
    "HeckeElement",
    "partitions",
    "standard_tableaux",
    "row_tableau",
    "num_standard_tableaux",
    "generator",
    "identity",
    "multiply",
    "jucys_murphy",
    "antisymmetrizer",
    "symmetrizer",
    "primitive_idempotent",
    "coxeter_with_gaps",
    "cyclic_type",
    "character",
    "character_seminormal",
    "seminormal_matrices",
    "character_table",
    "DimensionMismatch",
]

QQ = Q - Q.inverse()  # q - q^{-1}


class DimensionMismatch(RuntimeError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def __str__(self) -> str:
        if not self:
            return "()"
        out = []
        i = 0
        while i < len(self):
            j = i
            while j < len(self) and self[j] == self[i]:
                j += 1
            out.append(str(self[i]) if j - i == 1 else f"{self[i]}^{j - i}")
            i = j
        return "(" + ",".join(out) + ")"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Accept ``"2,1"``, ``"(2,1)"``, ``"1^3"`` or ``"3"``."""
        text = text.strip().strip("()")
        parts: list[int] = []
        for chunk in filter(None, (c.strip() for c in text.split(","))):
            if "^" in chunk:
                base, exp = chunk.split("^")
                parts.extend([int(base)] * int(exp))
            else:
                parts.append(int(chunk))
        return cls(sorted(parts, reverse=True))


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order: (n), (n-1,1), ..., (1^n)."""

    def gen(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [Partition(p) for p in gen(n, n)]


@dataclass(frozen=True)
class StdTableau:
    """Standard Young tableau; ``rows[r][c]`` is the entry (1-based) in that box."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        shape = [len(r) for r in self.rows]
        Partition(shape)
        n = sum(shape)
        if sorted(x for r in self.rows for x in r) != list(range(1, n + 1)):
            raise ValueError(f"tableau must contain 1..{n} once: {self.rows}")
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                if c and row[c - 1] >= x:
                    raise ValueError(f"rows must increase: {self.rows}")
                if r and self.rows[r - 1][c] >= x:
                    raise ValueError(f"columns must increase: {self.rows}")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def position(self, k: int) -> tuple[int, int]:
        for r, row in enumerate(self.rows):
            if k in row:
                return r, row.index(k)
        raise KeyError(k)

    @property
    def contents(self) -> tuple[int, ...]:
        """``c(k) = column - row`` of the box holding ``k``, for k = 1..n."""
        out = [0] * self.n
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                out[x - 1] = c - r
        return tuple(out)

    def restrict(self) -> "StdTableau":
        """Remove the box holding ``n``."""
        n = self.n
        rows = [tuple(x for x in row if x != n) for row in self.rows]
        return StdTableau(tuple(r for r in rows if r))

    def swap(self, i: int) -> "StdTableau | None":
        """Tableau with ``i`` and ``i+1`` exchanged, or None if not standard."""
        rows = tuple(tuple(i + 1 if x == i else i if x == i + 1 else x for x in row)
                     for row in self.rows)
        try:
            return StdTableau(rows)
        except ValueError:
            return None


def standard_tableaux(shape: Sequence[int]) -> list[StdTableau]:
    """All standard tableaux of ``shape``, in a fixed deterministic order."""
    shape = Partition(shape)
    n = shape.n
    result: list[StdTableau] = []

    def place(rows: list[list[int]], k: int) -> None:
        if k > n:
            result.append(StdTableau(tuple(tuple(r) for r in rows)))
            return
        for r in range(len(shape)):
            if len(rows[r]) < shape[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(k)
                place(rows, k + 1)
                rows[r].pop()

    place([[] for _ in shape], 1)
    return result


def row_tableau(shape: Sequence[int]) -> StdTableau:
    """Row-reading canonical tableau: 1..λ1 in the first row, and so on."""
    shape = Partition(shape)
    rows, k = [], 1
    for length in shape:
        rows.append(tuple(range(k, k + length)))
        k += length
    return StdTableau(tuple(rows))


def num_standard_tableaux(shape: Sequence[int]) -> int:
    """Hook length formula."""
    shape = Partition(shape)
    conj = shape.conjugate()
    n = shape.n
    hooks = 1
    for r, length in enumerate(shape):
        for c in range(length):
            hooks *= (length - c - 1) + (conj[c] - r - 1) + 1
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    return fact // hooks


# -- permutations -----------------------------------------------------------

Perm = tuple


def _left_gen(w: Perm, i: int) -> tuple[Perm, bool]:
    """``s_i w`` (swap values i-1, i) and whether the length goes up."""
    a, b = i - 1, i
    pa, pb = w.index(a), w.index(b)
    lst = list(w)
    lst[pa], lst[pb] = b, a
    return tuple(lst), pa < pb


def _right_gen(w: Perm, i: int) -> tuple[Perm, bool]:
    """``w s_i`` (swap positions i-1, i) and whether the length goes up."""
    lst = list(w)
    up = lst[i - 1] < lst[i]
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst), up


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """1-based generator indices ``(i1, ..., ik)`` with ``w = s_i1 ... s_ik``."""
    word: list[int] = []
    lst = list(w)
    while True:
        for i in range(1, len(lst)):
            if lst[i - 1] > lst[i]:
                lst[i - 1], lst[i] = lst[i], lst[i - 1]
                word.append(i)
                break
        else:
            break
    return tuple(reversed(word))


def perm_length(w: Perm) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def cycle_type(w: Perm) -> Partition:
    seen = [False] * len(w)
    lengths = []
    for s in range(len(w)):
        if not seen[s]:
            k, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = w[x]
                k += 1
            lengths.append(k)
    return Partition(sorted(lengths, reverse=True))


# -- the algebra ------------------------------------------------------------


class HeckeElement:
    """Finite linear combination of ``T_w``, ``w`` in S_n; immutable."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Perm, object] | None = None):
        self.n = n
        clean: dict[Perm, RatFunc] = {}
        for w, c in (terms or {}).items():
            c = as_ratfunc(c)
            if c:
                if len(w) != n:
                    raise ValueError(f"permutation {w} is not in S_{n}")
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, n: int, terms: dict[Perm, RatFunc]) -> "HeckeElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    def coeff(self, w: Perm) -> RatFunc:
        return self.terms.get(tuple(w), ZERO)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def _check(self, other: "HeckeElement") -> None:
        if self.n != other.n:
            raise ValueError(f"mismatched Hecke algebras H_{self.n} and H_{other.n}")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return HeckeElement._wrap(self.n, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, -ONE)
        return HeckeElement._wrap(self.n, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._wrap(self.n, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "HeckeElement":
        c = as_ratfunc(c)
        if not c:
            return HeckeElement._wrap(self.n, {})
        return HeckeElement._wrap(self.n, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def embed(self, n: int) -> "HeckeElement":
        """Image under H_m ⊂ H_n (fixing the last n - m letters)."""
        if n < self.n:
            raise ValueError("can only embed into a larger algebra")
        tail = tuple(range(self.n, n))
        return HeckeElement._wrap(n, {w + tail: c for w, c in self.terms.items()})

    def left_gen(self, i: int) -> "HeckeElement":
        """``τ_i · self``."""
        out: dict[Perm, RatFunc] = {}
        for w, c in self.terms.items():
            v, up = _left_gen(w, i)
            _add_term(out, v, c)
            if not up:
                _add_term(out, w, c * QQ)
        return HeckeElement._wrap(self.n, out)

    def right_gen(self, i: int) -> "HeckeElement":
        """``self · τ_i``."""
        out: dict[Perm, RatFunc] = {}
        for w, c in self.terms.items():
            v, up = _right_gen(w, i)
            _add_term(out, v, c)
            if not up:
                _add_term(out, w, c * QQ)
        return HeckeElement._wrap(self.n, out)

    def __repr__(self) -> str:
        if not self.terms:
            return f"HeckeElement({self.n}, 0)"
        parts = []
        for w in sorted(self.terms, key=lambda w: (perm_length(w), w)):
            word = reduced_word(w)
            name = "e" if not word else "".join(f"τ{i}" for i in word)
            parts.append(f"({self.terms[w]})*{name}")
        return " + ".join(parts)


def _add_term(out: dict, w: Perm, c: RatFunc) -> None:
    old = out.get(w)
    if old is None:
        out[w] = c
    else:
        new = old + c
        if new:
            out[w] = new
        else:
            del out[w]


def _accumulate(out: dict, terms: Mapping[Perm, RatFunc], factor: RatFunc) -> None:
    for w, c in terms.items():
        _add_term(out, w, c * factor if factor != ONE else c)


def identity(n: int) -> HeckeElement:
    return HeckeElement._wrap(n, {tuple(range(n)): ONE})


def generator(n: int, i: int) -> HeckeElement:
    """The Artin generator τ_i of H_n(q), 1 ≤ i ≤ n-1."""
    if not 1 <= i <= n - 1:
        raise IndexError(f"τ_{i} is not a generator of H_{n}")
    w = list(range(n))
    w[i - 1], w[i] = w[i], w[i - 1]
    return HeckeElement._wrap(n, {tuple(w): ONE})


def basis_element(w: Perm) -> HeckeElement:
    return HeckeElement._wrap(len(w), {tuple(w): ONE})


def word_element(n: int, word: Iterable[int]) -> HeckeElement:
    """Product τ_{i1} τ_{i2} ... of generators."""
    x = identity(n)
    for i in reversed(list(word)):
        x = x.left_gen(i)
    return x


def multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    a._check(b)
    out: dict[Perm, RatFunc] = {}
    if len(a.terms) <= len(b.terms):
        # a·b = Σ a_w τ_{i1}(...(τ_{ik} b))
        for w, c in a.terms.items():
            x = b
            for i in reversed(reduced_word(w)):
                x = x.left_gen(i)
            _accumulate(out, x.terms, c)
    else:
        for w, c in b.terms.items():
            x = a
            for i in reduced_word(w):
                x = x.right_gen(i)
            _accumulate(out, x.terms, c)
    return HeckeElement._wrap(a.n, out)


def jucys_murphy(n: int, k: int) -> HeckeElement:
    """j_1 = e, j_k = τ_{k-1} j_{k-1} τ_{k-1}."""
    if not 1 <= k <= n:
        raise IndexError(f"j_{k} is not defined in H_{n}")
    j = identity(n)
    for m in range(2, k + 1):
        j = j.left_gen(m - 1).right_gen(m - 1)
    return j


@lru_cache(maxsize=None)
def antisymmetrizer(k: int) -> HeckeElement:
    """a_1 = e, a_k = a_{k-1} (q^{k-1} e - (k-1)_q τ_{k-1}) a_{k-1} / k_q."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return identity(1)
    prev = antisymmetrizer(k - 1).embed(k)
    mid = identity(k).scale(q_pow(k - 1)) - generator(k, k - 1).scale(q_int(k - 1))
    return multiply(multiply(prev, mid), prev).scale(q_int(k).inverse())


@lru_cache(maxsize=None)
def symmetrizer(k: int) -> HeckeElement:
    """h_1 = e, h_k = h_{k-1} (q^{1-k} e + (k-1)_q τ_{k-1}) h_{k-1} / k_q."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return identity(1)
    prev = symmetrizer(k - 1).embed(k)
    mid = identity(k).scale(q_pow(1 - k)) + generator(k, k - 1).scale(q_int(k - 1))
    return multiply(multiply(prev, mid), prev).scale(q_int(k).inverse())


def _addable_contents(shape: Sequence[int]) -> list[int]:
    shape = list(shape)
    out = []
    for r in range(len(shape) + 1):
        length = shape[r] if r < len(shape) else 0
        if r == 0 or shape[r - 1] > length:
            out.append(length - r)
    return out


_idem_lock = threading.Lock()
_idem_cache: dict[tuple, HeckeElement] = {}


def primitive_idempotent(t: StdTableau) -> HeckeElement:
    """Primitive idempotent e_TT by inductive Jucys-Murphy interpolation.

    E(T) = E(T') · Π_{c ≠ c(n)} (j_n - q^{2c}) / (q^{2c(n)} - q^{2c}), the product over
    the contents of all boxes addable to the shape of T' = T minus the box of n.
    """
    if not isinstance(t, StdTableau):
        t = StdTableau(tuple(tuple(r) for r in t))
    key = t.rows
    with _idem_lock:
        hit = _idem_cache.get(key)
    if hit is not None:
        return hit
    n = t.n
    if n == 1:
        result = identity(1)
    else:
        sub = t.restrict()
        e = primitive_idempotent(sub).embed(n)
        c_n = t.contents[n - 1]
        jn = jucys_murphy(n, n)
        for c in _addable_contents(sub.shape):
            if c == c_n:
                continue
            factor = (jn - identity(n).scale(q_pow(2 * c))).scale(
                (q_pow(2 * c_n) - q_pow(2 * c)).inverse())
            e = multiply(e, factor)
        result = e
    with _idem_lock:
        _idem_cache[key] = result
    return result


def coxeter_with_gaps(nu: Sequence[int], n: int | None = None) -> HeckeElement:
    """Canonical z_ν: contiguous descending strings, largest part first.

    Part ν_j occupies letters b+1..b+ν_j (b = ν_1 + ... + ν_{j-1}) and contributes
    τ_{b+ν_j-1} ... τ_{b+1}.
    """
    nu = Partition(nu)
    n = nu.n if n is None else n
    if nu.n != n:
        raise ValueError(f"{nu} is not a partition of {n}")
    return word_element(n, coxeter_word(nu))


def coxeter_word(nu: Sequence[int]) -> tuple[int, ...]:
    nu = Partition(nu)
    word: list[int] = []
    b = 0
    for part in nu:
        word.extend(range(b + part - 1, b, -1))
        b += part
    return tuple(word)


def cyclic_type(word: Sequence[int], n: int) -> Partition:
    """Cyclic type of a Coxeter element with gaps given as a generator word.

    The word must be a subword of τ_{n-1} ... τ_1; maximal runs of consecutive
    indices are the strings.
    """
    word = list(word)
    if any(a <= b for a, b in zip(word, word[1:])):
        raise ValueError(f"{word} is not a subword of the Coxeter element")
    lengths = []
    run = 0
    prev = None
    for i in word:
        if prev is not None and i == prev - 1:
            run += 1
        else:
            if run:
                lengths.append(run)
            run = 1
        prev = i
    if run:
        lengths.append(run)
    parts = sorted((l + 1 for l in lengths), reverse=True)
    parts += [1] * (n - sum(parts))
    return Partition(parts)


def gap_placements(nu: Sequence[int]) -> list[tuple[int, ...]]:
    """All subwords of τ_{n-1}...τ_1 whose cyclic type is ν."""
    nu = Partition(nu)
    n = nu.n
    full = list(range(n - 1, 0, -1))
    out = []
    for mask in range(1 << len(full)):
        word = tuple(i for k, i in enumerate(full) if mask >> k & 1)
        if cyclic_type(word, n) == nu:
            out.append(word)
    return sorted(out)


# -- characters -------------------------------------------------------------

_ideal_lock = threading.Lock()
_ideal_cache: dict[tuple, tuple[list[dict[int, RatFunc]], list[Perm], dict[Perm, int]]] = {}


def _perm_index(n: int) -> tuple[list[Perm], dict[Perm, int]]:
    perms = sorted(permutations(range(n)))
    return perms, {w: i for i, w in enumerate(perms)}


def _left_ideal(lam: Partition, t: StdTableau | None = None):
    """Echelon basis of H_n · e^λ as sparse coordinate vectors."""
    t = t or row_tableau(lam)
    key = t.rows
    with _ideal_lock:
        hit = _ideal_cache.get(key)
    if hit is not None:
        return hit
    n = lam.n
    perms, index = _perm_index(n)
    e = primitive_idempotent(t)
    ech = SparseEchelon()
    basis: list[HeckeElement] = []
    queue = [e]
    ech.add({index[w]: c for w, c in e.terms.items()})
    basis.append(e)
    while queue:
        x = queue.pop()
        for i in range(1, n):
            y = x.left_gen(i)
            if ech.add({index[w]: c for w, c in y.terms.items()}):
                basis.append(y)
                queue.append(y)
    ech.fully_reduce()
    rows = [ech.pivots[c] for c in sorted(ech.pivots)]
    result = (rows, perms, index)
    with _ideal_lock:
        _ideal_cache[key] = result
    return result


def character(lam: Sequence[int], z: HeckeElement, tableau: StdTableau | None = None) -> RatFunc:
    """χ^λ(z): trace of left multiplication by z on the left ideal H_n e^λ."""
    lam = Partition(lam)
    if lam.n != z.n:
        raise ValueError(f"{lam} is not a partition of {z.n}")
    rows, perms, index = _left_ideal(lam, tableau)
    if len(rows) != num_standard_tableaux(lam):
        raise DimensionMismatch(
            f"left ideal of {lam} has dimension {len(rows)}, expected {num_standard_tableaux(lam)}")
    total = ZERO
    for row in rows:
        pivot = min(row)
        x = HeckeElement._wrap(z.n, {perms[k]: c for k, c in row.items()})
        y = multiply(z, x)
        # RREF rows have an identity block on pivot columns, so the coordinate of
        # y along this row is its entry at the pivot.
        total = total + y.coeff(perms[pivot])
    return total


def seminormal_matrices(lam: Sequence[int]) -> tuple[list[StdTableau], list[Matrix]]:
    """Young's seminormal form: matrices of τ_1..τ_{n-1} on the tableau basis.

    With axial distance ``d = c(i+1) - c(i)``, τ_i v_T = (q^d / d_q) v_T + β v_{s_i T},
    where β = 1 when d > 0 and β = (d-1)_q (d+1)_q / d_q^2 when d < 0.
    """
    lam = Partition(lam)
    tabs = standard_tableaux(lam)
    pos = {t.rows: k for k, t in enumerate(tabs)}
    mats = []
    for i in range(1, lam.n):
        m = Matrix.zeros(len(tabs))
        for col, t in enumerate(tabs):
            c = t.contents
            d = c[i] - c[i - 1]
            m.rows[col][col] = q_pow(d) / q_int(d)
            other = t.swap(i)
            if other is not None:
                row = pos[other.rows]
                if d > 0:
                    beta = ONE
                else:
                    beta = q_int(d - 1) * q_int(d + 1) / (q_int(d) * q_int(d))
                m.rows[row][col] = beta
        mats.append(m)
    return tabs, mats


def character_seminormal(lam: Sequence[int], word: Sequence[int]) -> RatFunc:
    """χ^λ of the generator word τ_{i1}...τ_{ik} via the seminormal representation."""
    lam = Partition(lam)
    tabs, mats = seminormal_matrices(lam)
    m = Matrix.identity(len(tabs))
    for i in word:
        m = m @ mats[i - 1]
    return m.trace()


def character_table(n: int, bound: int = 5) -> tuple[list[Partition], list[Partition], list[list[RatFunc]]]:
    """Entries χ^λ(z_ν); rows ν and columns λ in reverse lexicographic order."""
    if n > bound:
        raise ValueError(f"n = {n} exceeds the configured bound {bound}")
    parts = partitions(n)
    table = [[character(lam, coxeter_with_gaps(nu)) for lam in parts] for nu in parts]
    return parts, parts, table
