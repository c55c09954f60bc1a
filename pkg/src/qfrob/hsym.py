"""Skew-invertible Hecke symmetries and their R-matrix representations.

A Hecke symmetry is an N²×N² matrix R obeying the braid relation
``R12 R23 R12 = R23 R12 R23`` and ``R² = I + (q - q^{-1}) R``.  Matrix entries
use the convention ``R[(i, j), (k, l)] = R_{ij}^{kl}`` (lower indices label the
row) with row-major composite indices.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import flint

from .exactla import Matrix, SparseEchelon, embed_factor, inverse, kron, partial_trace, solve, Inconsistent
from .hecke import HeckeElement, reduced_word
from .qscalar import ONE, Q, ZERO, RatFunc, parse_scalar, q_int, q_pow, specialize

__all__ = [
    "HeckeSymmetry",
    "SkewInverseData",
    "BiRank",
    "BraidViolation",
    "HeckeViolation",
    "NotSkewInvertible",
    "Inconclusive",
    "validate",
    "skew_inverse",
    "r_trace",
    "rho",
    "rho_antisymmetrizers",
    "birank",
    "check_birank_identities",
    "c_power",
    "builtin",
    "flip",
]

QQ = Q - Q.inverse()


class BraidViolation(ValueError):
    def __init__(self, row: int, col: int, lhs: RatFunc, rhs: RatFunc):
        super().__init__(f"braid relation fails at entry ({row}, {col}): {lhs} != {rhs}")
        self.witness = {"row": row, "col": col, "lhs": str(lhs), "rhs": str(rhs)}


class HeckeViolation(ValueError):
    def __init__(self, row: int, col: int, lhs: RatFunc, rhs: RatFunc):
        super().__init__(f"Hecke condition fails at entry ({row}, {col}): {lhs} != {rhs}")
        self.witness = {"row": row, "col": col, "lhs": str(lhs), "rhs": str(rhs)}


class NotSkewInvertible(ArithmeticError):
    pass


class Inconclusive(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class HeckeSymmetry:
    N: int
    R: Matrix
    name: str = "custom"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def cached(self, key, build):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = build()
        with self._lock:
            return self._cache.setdefault(key, value)

    def r_i(self, i: int, m: int) -> Matrix:
        """R_i acting on V^{⊗m}."""
        return self.cached(("R_i", i, m), lambda: embed_factor(self.R, i, m, self.N))

    def r_i_inv(self, i: int, m: int) -> Matrix:
        # R^{-1} = R - (q - q^{-1}) I by the Hecke condition
        return self.cached(("R_i_inv", i, m),
                           lambda: self.r_i(i, m) - Matrix.identity(self.N ** m).scale(QQ))

    @property
    def R_inv(self) -> Matrix:
        return self.R - Matrix.identity(self.N ** 2).scale(QQ)


@dataclass(frozen=True)
class SkewInverseData:
    psi: Matrix
    b: Matrix
    c: Matrix


@dataclass(frozen=True)
class BiRank:
    r: int
    s: int
    hp_coefficients: tuple[int, ...]
    numerator: tuple[int, ...] = ()
    denominator: tuple[int, ...] = ()
    probabilistic: bool = False

    @property
    def even(self) -> bool:
        return self.s == 0

    def series_text(self) -> str:
        """The fitted series, factored as (1+t)^a/(1-t)^b when it has that form."""
        a = _binomial_power(self.numerator, 1)
        b = _binomial_power(self.denominator, -1)
        if a is not None and b is not None:
            num = "1" if a == 0 else ("(1+t)" if a == 1 else f"(1+t)^{a}")
            if b == 0:
                return num
            den = "(1-t)" if b == 1 else f"(1-t)^{b}"
            return f"{num}/{den}"
        return f"({_poly_text(self.numerator)})/({_poly_text(self.denominator)})"

    def __str__(self) -> str:
        return f"({self.r}|{self.s})"


def _binomial_power(coeffs, sign: int) -> int | None:
    """a with coeffs == (1 + sign*t)^a, else None."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    a = len(coeffs) - 1
    if a < 0:
        return None
    expected = [comb(a, k) * sign ** k for k in range(a + 1)]
    return a if coeffs == expected else None


def _poly_text(coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        c = Fraction(c)
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def validate(r: Matrix, n: int, name: str = "custom") -> HeckeSymmetry:
    """Check the braid relation and the Hecke condition exactly."""
    if r.nrows != n * n or r.ncols != n * n:
        raise ValueError(f"R must be {n * n}x{n * n}, got {r.nrows}x{r.ncols}")
    r = r.with_shape((n, n))
    r12 = embed_factor(r, 1, 3, n)
    r23 = embed_factor(r, 2, 3, n)
    lhs = r12 @ r23 @ r12
    rhs = r23 @ r12 @ r23
    diff = lhs.first_difference(rhs)
    if diff is not None:
        raise BraidViolation(*diff)
    sq = r @ r
    target = Matrix.identity(n * n) + r.scale(QQ)
    diff = sq.first_difference(target)
    if diff is not None:
        raise HeckeViolation(*diff)
    return HeckeSymmetry(n, r, name)


def skew_inverse(s: HeckeSymmetry) -> SkewInverseData:
    """Solve Σ_{r,j} R_{ij}^{kr} Ψ_{rm}^{jn} = δ_m^k δ_i^n and form B, C.

    For fixed (m, n) the unknowns Ψ_{rm}^{jn} meet the same coefficient matrix
    A[(i,k),(r,j)] = R[(i,j),(k,r)], so the N⁴ system is solved as one N²×N²
    system with N² right-hand sides.
    """

    def build() -> SkewInverseData:
        n = s.N
        rr = s.R.rows
        a = Matrix.zeros(n * n)
        rhs = Matrix.zeros(n * n)
        for i in range(n):
            for k in range(n):
                row = i * n + k
                for r_ in range(n):
                    for j in range(n):
                        a.rows[row][r_ * n + j] = rr[i * n + j][k * n + r_]
                rhs.rows[row][k * n + i] = ONE
        try:
            x, unique = solve(a, rhs)
        except Inconsistent as exc:
            raise NotSkewInvertible(str(exc)) from exc
        if not unique:
            raise NotSkewInvertible("the skew-inverse system is singular")
        psi = Matrix.zeros(n * n, shape=(n, n))
        for r_ in range(n):
            for j in range(n):
                for m in range(n):
                    for nn in range(n):
                        psi.rows[r_ * n + m][j * n + nn] = x.rows[r_ * n + j][m * n + nn]
        b = Matrix.zeros(n, shape=(n,))
        c = Matrix.zeros(n, shape=(n,))
        for i in range(n):
            for j in range(n):
                b.rows[i][j] = sum((psi.rows[a_ * n + i][a_ * n + j] for a_ in range(n)), ZERO)
                c.rows[i][j] = sum((psi.rows[i * n + a_][j * n + a_] for a_ in range(n)), ZERO)
        return SkewInverseData(psi, b, c)

    return s.cached("skew_inverse", build)


def c_power(data: SkewInverseData, factors, m: int) -> Matrix:
    """C_{f1} C_{f2} ... on V^{⊗m} for the listed 1-based factors."""
    n = data.c.nrows
    eye = Matrix.identity(n)
    out = None
    for k in range(1, m + 1):
        f = data.c if k in factors else eye
        out = f if out is None else kron(out, f)
    return out.with_shape((n,) * m)


def r_trace(data: SkewInverseData, m_: Matrix, factors) -> Matrix:
    """Multiply by C on each listed factor, then take the partial trace over them."""
    n = data.c.nrows
    factors = sorted(set(factors))
    if m_.shape is None:
        k = 0
        size = m_.nrows
        while size > 1:
            if size % n:
                raise ValueError("matrix size is not a power of N")
            size //= n
            k += 1
        m_ = m_.with_shape((n,) * k)
    if any(d != n for d in m_.shape):
        raise ValueError(f"tensor shape {m_.shape} is not all-{n}")
    cm = c_power(data, factors, len(m_.shape)) @ m_
    return partial_trace(cm.with_shape(m_.shape), factors)


def _rho_basis(s: HeckeSymmetry, n: int) -> dict[tuple, Matrix]:
    """ρ(T_w) for all w in S_n, built breadth-first along reduced words."""

    def build():
        dim = s.N ** n
        ident = tuple(range(n))
        images = {ident: Matrix.identity(dim, (s.N,) * n)}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(1, n):
                    if w[i - 1] < w[i]:
                        v = list(w)
                        v[i - 1], v[i] = v[i], v[i - 1]
                        v = tuple(v)
                        if v not in images:
                            images[v] = (images[w] @ s.r_i(i, n)).with_shape((s.N,) * n)
                            nxt.append(v)
            frontier = nxt
        return images

    return s.cached(("rho_basis", n), build)


def rho(s: HeckeSymmetry, z: HeckeElement, n: int | None = None) -> Matrix:
    """The R-matrix representation τ_i ↦ R_i on V^{⊗n}."""
    n = z.n if n is None else n
    if n != z.n:
        z = z.embed(n)
    dim = s.N ** n
    if n == 1:
        c = z.coeff((0,))
        return Matrix.identity(dim, (s.N,)).scale(c)
    images = _rho_basis(s, n)
    out = [[ZERO] * dim for _ in range(dim)]
    for w, c in z.terms.items():
        m = images[w]
        for i, row in enumerate(m.rows):
            orow = out[i]
            for j, x in enumerate(row):
                if x:
                    orow[j] = orow[j] + c * x
    return Matrix._wrap(out, (s.N,) * n, dim)


def rho_antisymmetrizers(s: HeckeSymmetry, kmax: int) -> list[Matrix]:
    """ρ(a_k) for k = 1..kmax via the matrix form of the a_k recursion."""
    out = [Matrix.identity(s.N, (s.N,))]
    for k in range(2, kmax + 1):
        prev = kron(out[-1], Matrix.identity(s.N))
        if prev.is_zero():
            out.append(Matrix.zeros(s.N ** k, shape=(s.N,) * k))
            continue
        mid = Matrix.identity(s.N ** k).scale(q_pow(k - 1)) - s.r_i(k - 1, k).scale(q_int(k - 1))
        a = (prev @ mid @ prev).scale(q_int(k).inverse())
        out.append(a.with_shape((s.N,) * k))
    return out


def _rank(m: Matrix) -> int:
    ech = SparseEchelon()
    for row in m.rows:
        ech.add({j: x for j, x in enumerate(row) if x})
    return ech.rank


def _fmpq_kron_identity(a: flint.fmpq_mat, n: int) -> flint.fmpq_mat:
    rows, cols = a.nrows(), a.ncols()
    out = flint.fmpq_mat(rows * n, cols * n)
    for i in range(rows):
        for j in range(cols):
            v = a[i, j]
            if v != 0:
                for t in range(n):
                    out[i * n + t, j * n + t] = v
    return out


def _dims_numeric(s: HeckeSymmetry, kmax: int, q0: Fraction) -> list[int]:
    def conv(m: Matrix) -> flint.fmpq_mat:
        vals = m.specialize(q0)
        out = flint.fmpq_mat(m.nrows, m.ncols)
        for i, r in enumerate(vals):
            for j, v in enumerate(r):
                if v:
                    out[i, j] = flint.fmpq(v.numerator, v.denominator)
        return out

    dims = [1]
    a = flint.fmpq_mat(s.N, s.N)
    for i in range(s.N):
        a[i, i] = 1
    dims.append(s.N)
    for k in range(2, kmax + 1):
        if dims[-1] == 0:
            dims.append(0)
            continue
        prev = _fmpq_kron_identity(a, s.N)
        rk = conv(s.r_i(k - 1, k))
        mid = -rk * flint.fmpq(*_frac(specialize(q_int(k - 1), q0)))
        c = _frac(specialize(q_pow(k - 1), q0))
        for i in range(s.N ** k):
            mid[i, i] += flint.fmpq(*c)
        a = prev * mid * prev
        inv_kq = specialize(q_int(k), q0)
        a = a * flint.fmpq(inv_kq.denominator, inv_kq.numerator)
        dims.append(a.rank())
    return dims


def _frac(x: Fraction) -> tuple[int, int]:
    return x.numerator, x.denominator


def _fit_series(dims: list[int], kmax: int):
    """Minimal P/Q (Q(0) = 1, coprime) matching the series through t^kmax."""
    half = kmax // 2
    for total in range(0, kmax):
        for s_deg in range(0, total + 1):
            r_deg = total - s_deg
            if r_deg > half or s_deg > half:
                continue
            qc = _solve_denominator(dims, r_deg, s_deg, kmax)
            if qc is None:
                continue
            pc = [sum((qc[j] * dims[k - j] for j in range(min(k, s_deg) + 1)), Fraction(0))
                  for k in range(r_deg + 1)]
            if (r_deg and pc[-1] == 0) or (s_deg and qc[-1] == 0):
                continue
            p = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in pc])
            qq = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in qc])
            if p.gcd(qq).degree() > 0:
                continue
            return r_deg, s_deg, tuple(pc), tuple(qc)
    return None


def _solve_denominator(dims, r_deg, s_deg, kmax):
    """Q_1..Q_s from Σ_j Q_j d_{k-j} = 0 for r < k ≤ kmax; None if inconsistent."""
    eqs = []
    for k in range(r_deg + 1, kmax + 1):
        row = [Fraction(dims[k - j]) if k - j >= 0 else Fraction(0) for j in range(1, s_deg + 1)]
        eqs.append((row, -Fraction(dims[k])))
    if s_deg == 0:
        return [Fraction(1)] if all(rhs == 0 for _, rhs in eqs) else None
    a = Matrix([[x for x in row] for row, _ in eqs])
    b = Matrix([[rhs] for _, rhs in eqs])
    try:
        x, _ = solve(a, b)
    except Inconsistent:
        return None
    return [Fraction(1)] + [x.rows[j][0].constant_value() for j in range(s_deg)]


def birank(s: HeckeSymmetry, kmax: int = 6, fast: bool = False, seed: int = 0) -> BiRank:
    """Detect the bi-rank from d_k = rank ρ(a_k), k = 0..kmax.

    The generating series Σ d_k t^k is fitted by the rational function of least
    total degree (then least denominator degree) that matches every coefficient
    through t^kmax with at least one coefficient to spare.  Once some d_k is 0,
    all later antisymmetrizers vanish and the remaining terms are 0 exactly.
    """
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    if fast:
        rng = random.Random(seed)
        points = set()
        while len(points) < 2:
            points.add(Fraction(rng.randint(2, 97), rng.randint(1, 97)))
        runs = [_dims_numeric(s, kmax, p) for p in sorted(points)]
        dims = [max(col) for col in zip(*runs)]
    else:
        mats = rho_antisymmetrizers(s, kmax)
        dims = [1]
        for m in mats:
            dims.append(0 if dims[-1] == 0 else _rank(m))
    fit = _fit_series(dims, kmax)
    if fit is None:
        raise Inconclusive(f"no rational series with degrees ≤ {kmax // 2} fits {dims}; raise kmax")
    r_deg, s_deg, pc, qc = fit
    return BiRank(r_deg, s_deg, tuple(dims), pc, qc, probabilistic=fast)


def check_birank_identities(data: SkewInverseData, br: BiRank) -> dict:
    """B·C = q^{-2(r-s)} I and Tr B = Tr C = q^{s-r} (r-s)_q."""
    n = data.c.nrows
    d = br.r - br.s
    bc = data.b @ data.c
    target = Matrix.identity(n).scale(q_pow(-2 * d))
    tr_target = q_pow(-d) * q_int(d)
    tr_b = data.b.trace()
    tr_c = data.c.trace()
    return {
        "bc_ok": bc == target,
        "trace_b_ok": tr_b == tr_target,
        "trace_c_ok": tr_c == tr_target,
        "trace_b": str(tr_b),
        "trace_c": str(tr_c),
        "expected_trace": str(tr_target),
    }


def flip(n: int) -> Matrix:
    p = Matrix.zeros(n * n, shape=(n, n))
    for i in range(n):
        for j in range(n):
            p.rows[i * n + j][j * n + i] = ONE
    return p


def _gl_super(m: int, nodd: int) -> Matrix:
    """R = Σ_i ±q^{±1} E_ii⊗E_ii + Σ_{i≠j} (-1)^{p(i)p(j)} E_ij⊗E_ji + (q - q^{-1}) Σ_{i<j} E_ii⊗E_jj."""
    n = m + nodd
    parity = [0] * m + [1] * nodd
    r = Matrix.zeros(n * n, shape=(n, n))
    for i in range(n):
        r.rows[i * n + i][i * n + i] = Q if parity[i] == 0 else -Q.inverse()
        for j in range(n):
            if i == j:
                continue
            sign = -1 if parity[i] and parity[j] else 1
            r.rows[i * n + j][j * n + i] = RatFunc(sign)
            if i < j:
                r.rows[i * n + j][i * n + j] = QQ
    return r


_R2_TEXT = [["q", "0", "0", "0"],
            ["0", "q-q^-1", "1", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "0", "q"]]
_R11_TEXT = [["q", "0", "0", "0"],
             ["0", "q-q^-1", "1", "0"],
             ["0", "1", "0", "0"],
             ["0", "0", "0", "-q^-1"]]

BUILTIN_NAMES = ("r2", "r11", "glN:<N>", "glMN:<m>,<n>")


def builtin(name: str) -> HeckeSymmetry:
    """``r2``, ``r11``, ``glN:<N>`` or ``glMN:<m>,<n>``."""
    if name == "r2":
        r = Matrix([[parse_scalar(x) for x in row] for row in _R2_TEXT], shape=(2, 2))
        return validate(r, 2, "r2")
    if name == "r11":
        r = Matrix([[parse_scalar(x) for x in row] for row in _R11_TEXT], shape=(2, 2))
        return validate(r, 2, "r11")
    if name.startswith("glN:"):
        try:
            n = int(name[4:])
        except ValueError:
            raise ValueError(f"bad builtin parameters: {name!r}") from None
        if not 1 <= n <= 4:
            raise ValueError(f"glN dimension out of range (1..4): {n}")
        return validate(_gl_super(n, 0), n, name)
    if name.startswith("glMN:"):
        try:
            m, nodd = (int(x) for x in name[5:].split(","))
        except ValueError:
            raise ValueError(f"bad builtin parameters: {name!r}") from None
        if m < 0 or nodd < 0 or not 1 <= m + nodd <= 4:
            raise ValueError(f"glMN parameters out of range: {name!r}")
        return validate(_gl_super(m, nodd), m + nodd, name)
    raise ValueError(f"unknown builtin symmetry {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
