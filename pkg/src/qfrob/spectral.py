"""Eigenvalue-side formulas: symmetric functions in even μ and odd ν.

Eigenvalues are formal commuting indeterminates.  A family (m|n) has
variables μ_1..μ_m followed by ν_1..ν_n, and a :class:`MultiPoly` stores
exponent vectors in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .hecke import Partition
from .qscalar import ONE, Q, ZERO, RatFunc, as_ratfunc, q_int, specialize

__all__ = [
    "SpectralFamily",
    "MultiPoly",
    "RatExpr",
    "NonPolynomialResult",
    "sym_poly",
    "eigen_relations",
    "power_sum_spectral",
    "power_sum_partition_spectral",
    "schur_spectral",
    "elementary_spectral",
    "newton_check",
    "hall_littlewood_row",
    "hl_compare",
    "supersymmetry_check",
    "classical_limit",
]

Q_INV = Q.inverse()


class NonPolynomialResult(ArithmeticError):
    """A rational expression expected to be polynomial left a remainder."""


@dataclass(frozen=True)
class SpectralFamily:
    m: int
    n: int = 0

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ValueError(f"invalid family ({self.m}|{self.n})")

    @property
    def nvars(self) -> int:
        return self.m + self.n

    @property
    def even(self) -> list[int]:
        return list(range(self.m))

    @property
    def odd(self) -> list[int]:
        return list(range(self.m, self.m + self.n))

    def names(self) -> list[str]:
        if self.m == 1 and self.n <= 1:
            ev = ["mu"]
        else:
            ev = [f"mu{i + 1}" for i in range(self.m)]
        od = ["nu"] if self.n == 1 and self.m <= 1 else [f"nu{j + 1}" for j in range(self.n)]
        return ev + od

    def var(self, idx: int) -> "MultiPoly":
        exp = [0] * self.nvars
        exp[idx] = 1
        return MultiPoly(self.nvars, {tuple(exp): ONE}, self.names())

    def mu(self, i: int) -> "MultiPoly":
        return self.var(i)

    def nu(self, j: int) -> "MultiPoly":
        return self.var(self.m + j)

    def __str__(self) -> str:
        return f"({self.m}|{self.n})"


class MultiPoly:
    """Commutative polynomial with RatFunc coefficients."""

    __slots__ = ("nvars", "terms", "names")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None, names=None):
        self.nvars = nvars
        self.names = names
        clean = {}
        for e, c in (terms or {}).items():
            c = as_ratfunc(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, nvars, terms, names=None):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj.names = names
        return obj

    @classmethod
    def constant(cls, nvars: int, c=ONE, names=None) -> "MultiPoly":
        c = as_ratfunc(c)
        return cls._wrap(nvars, {(0,) * nvars: c} if c else {}, names)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, RatFunc)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(self.nvars, other, self.names)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _add(out, e, c)
        return MultiPoly._wrap(self.nvars, out, self.names or other.names)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._wrap(self.nvars, {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MultiPoly":
        c = as_ratfunc(c)
        if not c:
            return MultiPoly._wrap(self.nvars, {}, self.names)
        return MultiPoly._wrap(self.nvars, {e: x * c for e, x in self.terms.items()}, self.names)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out: dict = {}
        for e1, a in self.terms.items():
            for e2, b in other.terms.items():
                _add(out, tuple(x + y for x, y in zip(e1, e2)), a * b)
        return MultiPoly._wrap(self.nvars, out, self.names or other.names)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(self.nvars, ONE, self.names)
        for _ in range(k):
            out = out * self
        return out

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variable ``i`` to ``perm[i]``."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for i, x in enumerate(e):
                new[perm[i]] = x
            out[tuple(new)] = c
        return MultiPoly._wrap(self.nvars, out, self.names)

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
            c = self.terms[e]
            if not mono:
                parts.append(f"({c})")
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def _add(out: dict, e, c) -> None:
    old = out.get(e)
    if old is None:
        out[e] = c
    else:
        new = old + c
        if new:
            out[e] = new
        else:
            del out[e]


@dataclass
class RatExpr:
    """num/den before simplification."""

    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    def to_poly(self) -> MultiPoly:
        """Exact division (lexicographic), raising when a remainder survives."""
        quotient: dict = {}
        rem = dict(self.num.terms)
        lead_e, lead_c = self.den.leading()
        lead_inv = lead_c.inverse()
        nv = self.num.nvars
        while rem:
            e = max(rem)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < 0 for x in shift):
                raise NonPolynomialResult(f"remainder term at exponent {e}")
            f = c * lead_inv
            _add(quotient, shift, f)
            for de, dc in self.den.terms.items():
                _add(rem, tuple(a + b for a, b in zip(de, shift)), -(dc * f))
        return MultiPoly._wrap(nv, quotient, self.num.names)


# -- symmetric polynomials ---------------------------------------------------


def sym_poly(kind: str, r: int, vars: Sequence[MultiPoly], scale=ONE) -> MultiPoly:
    """e_r or h_r of the scaled variables ``scale * v``."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if not vars:
        raise ValueError("need at least one variable")
    nv = vars[0].nvars
    names = vars[0].names
    scaled = [v.scale(scale) for v in vars]
    one = MultiPoly.constant(nv, ONE, names)
    if kind == "elementary":
        # coefficients of Π(1 + t·x)
        coeffs = [one]
        for x in scaled:
            nxt = coeffs + [MultiPoly.constant(nv, ZERO, names)]
            for i in range(len(coeffs), 0, -1):
                nxt[i] = nxt[i] + coeffs[i - 1] * x
            coeffs = nxt
        return coeffs[r] if r < len(coeffs) else MultiPoly.constant(nv, ZERO, names)
    if kind == "complete":
        # h_r(x_1..x_k) = h_r(x_1..x_{k-1}) + x_k h_{r-1}(x_1..x_k)
        h = [one] + [MultiPoly.constant(nv, ZERO, names)] * r
        for x in scaled:
            new = [one]
            for d in range(1, r + 1):
                new.append(h[d] + x * new[d - 1])
            h = new
        return h[r]
    raise ValueError(f"unknown kind {kind!r}")


def eigen_relations(f: SpectralFamily) -> dict[int, MultiPoly]:
    """k ↦ e_k(L) = q^{-k} e_k(μ) for an even family."""
    if f.n:
        raise ValueError("eigenvalue relations are stated for even families")
    mus = [f.mu(i) for i in range(f.m)]
    return {k: sym_poly("elementary", k, mus, Q_INV) for k in range(1, f.m + 1)}


def _lagrange_sum(f: SpectralFamily, k: int, lead: Sequence[RatFunc], ratio: Sequence[RatFunc]) -> MultiPoly:
    """Σ_i lead_i x_i^k Π_{p≠i} (x_i - ratio_p x_p)/(x_i - x_p), simplified exactly."""
    nv = f.nvars
    xs = [f.var(i) for i in range(nv)]
    names = f.names()
    den = MultiPoly.constant(nv, ONE, names)
    for a in range(nv):
        for b in range(a + 1, nv):
            den = den * (xs[a] - xs[b])
    num = MultiPoly.constant(nv, ZERO, names)
    for i in range(nv):
        term = (xs[i] ** k).scale(lead[i])
        for p in range(nv):
            if p != i:
                term = term * (xs[i] - xs[p].scale(ratio[p]))
        for a in range(nv):
            for b in range(a + 1, nv):
                if i not in (a, b):
                    term = term * (xs[a] - xs[b])
        if i % 2:
            term = -term
        num = num + term
    return RatExpr(num, den).to_poly()


def power_sum_spectral(f: SpectralFamily, k: int) -> MultiPoly:
    """p_k = Σ μ_i^k d_i + Σ ν_j^k d̃_j."""
    if k < 1:
        raise ValueError("power sums start at k = 1")
    q2, qm2 = Q * Q, Q_INV * Q_INV
    lead = [Q_INV] * f.m + [-Q] * f.n
    ratio = [qm2] * f.m + [q2] * f.n
    return _lagrange_sum(f, k, lead, ratio)


def power_sum_partition_spectral(f: SpectralFamily, nu: Sequence[int]) -> MultiPoly:
    out = MultiPoly.constant(f.nvars, ONE, f.names())
    for part in Partition(nu):
        out = out * power_sum_spectral(f, part)
    return out


def _one_row(f: SpectralFamily, k: int) -> MultiPoly:
    """s_(k) = Σ_r e_r(-qν) h_{k-r}(q^{-1}μ); 1 for k = 0 and 0 for k < 0."""
    nv = f.nvars
    names = f.names()
    if k < 0:
        return MultiPoly.constant(nv, ZERO, names)
    if k == 0:
        return MultiPoly.constant(nv, ONE, names)
    mus = [f.mu(i) for i in range(f.m)]
    nus = [f.nu(j) for j in range(f.n)]
    total = MultiPoly.constant(nv, ZERO, names)
    for r in range(k + 1):
        e = sym_poly("elementary", r, nus, -Q) if nus else MultiPoly.constant(nv, ONE if r == 0 else ZERO, names)
        h = sym_poly("complete", k - r, mus, Q_INV) if mus else MultiPoly.constant(nv, ONE if k == r else ZERO, names)
        total = total + e * h
    return total


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def schur_spectral(f: SpectralFamily, lam: Sequence[int]) -> MultiPoly:
    """Jacobi–Trudi determinant det[s_(λ_i - i + j)] over the super one-row functions."""
    lam = Partition(lam)
    ell = len(lam)
    if ell == 0:
        return MultiPoly.constant(f.nvars, ONE, f.names())
    rows = {}
    for d in range(-ell, lam[0] + ell):
        rows[d] = _one_row(f, d)
    total = MultiPoly.constant(f.nvars, ZERO, f.names())
    for p in permutations(range(ell)):
        term = MultiPoly.constant(f.nvars, _perm_sign(p), f.names())
        for i in range(ell):
            entry = rows[lam[i] - i + p[i]]
            if not entry:
                term = None
                break
            term = term * entry
        if term is not None:
            total = total + term
    return total


def elementary_spectral(f: SpectralFamily, k: int) -> MultiPoly:
    """e_k = s_(1^k) spectrally."""
    if k == 0:
        return MultiPoly.constant(f.nvars, ONE, f.names())
    return schur_spectral(f, (1,) * k)


def newton_check(f: SpectralFamily, k: int) -> bool:
    """k_q e_k + Σ_{j=1}^{k} (-1)^j q^{k-j} e_{k-j} p_j = 0."""
    total = elementary_spectral(f, k).scale(q_int(k))
    for j in range(1, k + 1):
        term = elementary_spectral(f, k - j) * power_sum_spectral(f, j)
        total = total + term.scale(Q ** (k - j) * (-1) ** j)
    return not total


def hall_littlewood_row(k: int, f: SpectralFamily, t) -> MultiPoly:
    """q_k(x; t) = (1 - t) Σ_i x_i^k Π_{j≠i} (x_i - t x_j)/(x_i - x_j) in the μ variables."""
    if f.n:
        raise ValueError("the Hall–Littlewood comparison needs an even family")
    t = as_ratfunc(t)
    return _lagrange_sum(f, k, [ONE - t] * f.m, [t] * f.m)


def hl_compare(f: SpectralFamily, k: int) -> bool:
    """(q - q^{-1}) p_k == q_k(μ; q^{-2})."""
    lhs = power_sum_spectral(f, k).scale(Q - Q_INV)
    return lhs == hall_littlewood_row(k, f, Q_INV * Q_INV)


def _is_symmetric(p: MultiPoly, block: Sequence[int]) -> bool:
    base = list(range(p.nvars))
    for a, b in zip(block, block[1:]):
        perm = list(base)
        perm[a], perm[b] = b, a
        if p.permute(perm) != p:
            return False
    return True


def supersymmetry_check(p: MultiPoly, f: SpectralFamily, pair: tuple[int, int] = (0, 0)) -> bool:
    """Symmetry in x = q^{-1}μ and in y = qν separately, and no dependence on s after x_i = y_j = s."""
    if not (f.m and f.n):
        raise ValueError("super-symmetry needs both even and odd eigenvalues")
    if not (_is_symmetric(p, f.even) and _is_symmetric(p, f.odd)):
        return False
    i, j = pair[0], f.m + pair[1]
    # μ_i = q s, ν_j = q^{-1} s; collect by the remaining exponents and the power of s
    out: dict = {}
    for e, c in p.terms.items():
        a, b = e[i], e[j]
        rest = list(e)
        rest[i] = 0
        rest[j] = 0
        key = (tuple(rest), a + b)
        _add(out, key, c * Q ** (a - b))
    return all(deg == 0 for (_, deg) in out)


def classical_limit(p: MultiPoly) -> MultiPoly:
    """Specialize every coefficient at q = 1."""
    return MultiPoly(p.nvars, {e: specialize(c, 1) for e, c in p.terms.items()}, p.names)
