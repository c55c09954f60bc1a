"""End-to-end verification of the q-Frobenius formula and its supporting facts.

Three pipelines check p_ν = Σ_λ χ^λ(z_ν) s_λ independently once the Hecke
characters are known:

* algebra: NCPolys reduced modulo the graded RE ideal (module realg);
* rep: operator-valued matrices on V^{⊗k}, traced with partial traces;
* spectral: polynomials in the eigenvalues (module spectral).

Every check lands in a :class:`VerificationReport`; failures carry a witness
and skipped checks carry a reason.
"""

from __future__ import annotations

import platform
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .exactla import Matrix, kron, partial_trace
from .hecke import (
    Partition,
    character,
    character_seminormal,
    character_table,
    coxeter_with_gaps,
    coxeter_word,
    gap_placements,
    partitions,
    primitive_idempotent,
    row_tableau,
    standard_tableaux,
    word_element,
)
from .hsym import (
    BraidViolation,
    HeckeSymmetry,
    HeckeViolation,
    Inconclusive,
    NotSkewInvertible,
    birank,
    c_power,
    check_birank_identities,
    rho,
    skew_inverse,
    validate,
)
from .qscalar import ONE, Q, ZERO, RatFunc
from . import realg
from . import spectral as sp

__all__ = [
    "CheckResult",
    "VerificationReport",
    "SuiteConfig",
    "ResourceBoundExceeded",
    "frobenius_algebra",
    "frobenius_rep",
    "frobenius_spectral",
    "coxeter_ch_check",
    "placement_character_check",
    "classical_lr",
    "lr_check",
    "full_suite",
    "GAP_WORD_421",
]

# τ6 τ4 τ3 τ2 in H_7, cyclic type (4,2,1)
GAP_WORD_421 = (6, 4, 3, 2)
MONOMIAL_ORDER = "deglex, generators l_i^j ordered by (i, j)"


class ResourceBoundExceeded(RuntimeError):
    pass


@dataclass
class CheckResult:
    id: str
    params: dict
    status: str  # "pass", "fail" or "skip"
    witness: object = None
    reason: str | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass
class VerificationReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)
    environment: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            counts[c.status] += 1
        return {**counts, "total": len(self.checks), "ok": self.passed}

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)
        for key, value in other.environment.items():
            self.environment.setdefault(key, value)
        self.seconds += other.seconds

    def record(self, check_id: str, params: dict, fn: Callable[[], object]) -> CheckResult:
        """Run ``fn``; it returns True, False, or a witness (anything else means failure)."""
        t0 = time.perf_counter()
        outcome = fn()
        dt = time.perf_counter() - t0
        if outcome is True:
            res = CheckResult(check_id, params, "pass", seconds=dt)
        elif outcome is False:
            res = CheckResult(check_id, params, "fail", witness="check returned false", seconds=dt)
        else:
            res = CheckResult(check_id, params, "fail", witness=outcome, seconds=dt)
        self.checks.append(res)
        self.seconds += dt
        return res

    def skip(self, check_id: str, params: dict, reason: str) -> CheckResult:
        res = CheckResult(check_id, params, "skip", reason=reason)
        self.checks.append(res)
        return res

    def to_dict(self, timing: bool = True) -> dict:
        checks = []
        for c in self.checks:
            d = asdict(c)
            d["witness"] = _jsonable(d["witness"])
            if not timing:
                d.pop("seconds")
            checks.append(d)
        out = {
            "subject": self.subject,
            "environment": dict(self.environment),
            "checks": checks,
            "summary": self.summary(),
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _env(**extra) -> dict:
    env = {
        "monomial_order": MONOMIAL_ORDER,
        "q_mode": "exact",
        "version": __version__,
        "python": platform.python_version(),
    }
    env.update(extra)
    return env


def _matrix_witness(a: Matrix, b: Matrix) -> dict:
    diff = a.first_difference(b)
    if diff is None:
        return {}
    i, j, x, y = diff
    return {"row": i, "col": j, "lhs": str(x), "rhs": str(y)}


# -- algebra pipeline -------------------------------------------------------


def _degree_bound(s: HeckeSymmetry) -> int:
    return 4 if s.N <= 2 else 3


def frobenius_algebra(s: HeckeSymmetry, n: int, bound: int | None = None) -> VerificationReport:
    """normal_form(p_ν(L) - Σ_λ χ^λ_ν s_λ(L)) = 0 for every ν ⊢ n."""
    bound = _degree_bound(s) if bound is None else bound
    if n > bound:
        raise ResourceBoundExceeded(f"algebra pipeline bound is n <= {bound} for N = {s.N}")
    data = skew_inverse(s)
    rep = VerificationReport(s.name, environment=_env())
    parts, _, table = character_table(n)
    schurs = [realg.schur(s, data, lam) for lam in parts]
    for a, nu in enumerate(parts):
        def run(a=a, nu=nu):
            diff = realg.power_sum_partition(s, data, nu)
            for b, lam in enumerate(parts):
                if table[a][b]:
                    diff = diff - schurs[b].scale(table[a][b])
            residue = realg.normal_form(diff, realg.ideal_component(s, n)) if diff else diff
            return True if not residue else {"nu": str(nu), "residue": str(residue)}

        rep.record("frobenius.algebra", {"n": n, "nu": str(nu)}, run)
    return rep


# -- representation pipeline -------------------------------------------------


def _op_matrix(s: HeckeSymmetry, reps: dict, n: int) -> Matrix:
    """Σ_g E_g ⊗ I^{⊗(n-1)} ⊗ X_g on V^{⊗n} ⊗ W."""
    N = s.N
    rest = Matrix.identity(N ** (n - 1), (N,) * (n - 1)) if n > 1 else None
    total = None
    for g, x in reps.items():
        e = Matrix.unit(N, g // N, g % N).with_shape((N,))
        left = kron(e, rest) if rest is not None else e
        term = kron(left, x.with_shape(x.shape or (x.nrows,)))
        total = term if total is None else total + term
    return total


def _op_lbar_product(s: HeckeSymmetry, reps: dict, n: int, w: int) -> Matrix:
    key = ("op_lbar", n, id(reps))
    cached = s._cache.get(key)
    if cached is not None:
        return cached
    ident_w = Matrix.identity(w)
    level = _op_matrix(s, reps, n)
    shape = level.shape
    prod_ = level
    for j in range(1, n):
        rj = kron(s.r_i(j, n), ident_w)
        rj_inv = kron(s.r_i_inv(j, n), ident_w)
        level = (rj @ level @ rj_inv).with_shape(shape)
        prod_ = (prod_ @ level).with_shape(shape)
    s._cache[key] = prod_
    return prod_


def _op_ch(s, data, reps, z, n: int, w: int) -> Matrix:
    f = c_power(data, range(1, n + 1), n) @ rho(s, z, n)
    big = _op_lbar_product(s, reps, n, w)
    return partial_trace((kron(f, Matrix.identity(w)) @ big).with_shape(big.shape), range(1, n + 1))


def _op_power_sums(s, data, reps, kmax: int, w: int) -> dict[int, Matrix]:
    lhat = _op_matrix(s, reps, 1)
    shape = lhat.shape
    twist = kron(data.c, Matrix.identity(w))
    out = {}
    power = lhat
    for k in range(1, kmax + 1):
        out[k] = partial_trace((twist @ power).with_shape(shape), [1])
        power = (power @ lhat).with_shape(shape)
    return out


def _rep_size_ok(s: HeckeSymmetry, n: int, k: int, max_dim: int) -> bool:
    return s.N ** (n + k) <= max_dim


def frobenius_rep(s: HeckeSymmetry, n: int, k: int, max_dim: int = 64) -> VerificationReport:
    """Both sides of the Frobenius formula as exact operators on V^{⊗k}."""
    if not _rep_size_ok(s, n, k, max_dim):
        raise ResourceBoundExceeded(f"operator size N^(n+k) = {s.N ** (n + k)} exceeds {max_dim}")
    data = skew_inverse(s)
    conv = realg.select_slot_convention(s, data)
    reps = realg.rep_generators(s, data, k, conv)
    w = s.N ** k
    rep = VerificationReport(s.name, environment=_env(slot_convention=conv))
    parts, _, table = character_table(n)
    psums = _op_power_sums(s, data, reps, n, w)
    schurs = [_op_ch(s, data, reps, primitive_idempotent(row_tableau(lam)), n, w) for lam in parts]
    for a, nu in enumerate(parts):
        def run(a=a, nu=nu):
            lhs = Matrix.identity(w)
            for part in nu:
                lhs = lhs @ psums[part]
            rhs = Matrix.zeros(w)
            for b in range(len(parts)):
                if table[a][b]:
                    rhs = rhs + schurs[b].scale(table[a][b])
            lhs, rhs = lhs.with_shape(None), rhs.with_shape(None)
            return True if lhs == rhs else {"nu": str(nu), **_matrix_witness(lhs, rhs)}

        rep.record("frobenius.rep", {"n": n, "k": k, "nu": str(nu)}, run)
    return rep


# -- spectral pipeline --------------------------------------------------------


def frobenius_spectral(f: sp.SpectralFamily, n: int) -> VerificationReport:
    """Exact MultiPoly equality p_ν = Σ_λ χ^λ_ν s_λ(μ, ν) for every ν ⊢ n."""
    if n > 5:
        raise ResourceBoundExceeded("spectral pipeline bound is n <= 5")
    rep = VerificationReport(str(f), environment=_env())
    parts, _, table = character_table(n)
    schurs = [sp.schur_spectral(f, lam) for lam in parts]
    for a, nu in enumerate(parts):
        def run(a=a, nu=nu):
            lhs = sp.power_sum_partition_spectral(f, nu)
            rhs = sp.MultiPoly.constant(f.nvars, ZERO, f.names())
            for b in range(len(parts)):
                if table[a][b]:
                    rhs = rhs + schurs[b].scale(table[a][b])
            return True if lhs == rhs else {"nu": str(nu), "difference": str(lhs - rhs)}

        rep.record("frobenius.spectral", {"family": str(f), "n": n, "nu": str(nu)}, run)
    return rep


# -- characteristic map on Coxeter elements and gap placements ---------------------------------------------


def coxeter_ch_check(s: HeckeSymmetry, nu: Sequence[int]) -> bool:
    """ch(z_ν) ≡ p_ν for the canonical placement and one other placement if any."""
    nu = Partition(nu)
    n = nu.n
    data = skew_inverse(s)
    basis = realg.ideal_component(s, n) if n >= 2 else None
    target = realg.power_sum_partition(s, data, nu)
    canonical = coxeter_word(nu)
    words = [canonical]
    others = [w for w in gap_placements(nu) if w != canonical]
    if others:
        words.append(others[0])
    for word in words:
        diff = realg.ch(s, data, word_element(n, word), n) - target
        if basis is None:
            if diff:
                return False
        elif realg.normal_form(diff, basis) if diff else diff:
            return False
    return True


def placement_character_check(nu: Sequence[int], words: Sequence[Sequence[int]] | None = None) -> bool:
    """Every irreducible character takes one value on all given placements of type ν."""
    nu = Partition(nu)
    n = nu.n
    if words is None:
        words = [coxeter_word(nu)]
        others = [w for w in gap_placements(nu) if w != words[0]]
        words += others[:1]
    for lam in partitions(n):
        values = {character_seminormal(lam, w) for w in words}
        if len(values) != 1:
            return False
    return True


# -- Littlewood-Richardson ----------------------------------------------------


def classical_lr(lam: Sequence[int], mu: Sequence[int], nvars: int = 6) -> dict[Partition, int]:
    """Coefficients of s_λ s_μ in the Schur basis, from commutative Schur polynomials."""
    fam = sp.SpectralFamily(nvars)

    def classical(part):
        return sp.classical_limit(sp.schur_spectral(fam, part))

    product_ = classical(lam) * classical(mu)
    out: dict[Partition, int] = {}
    while product_:
        lead, coeff = product_.leading()
        nu = Partition([x for x in lead if x])
        c = coeff.constant_value()
        out[nu] = int(c)
        product_ = product_ - classical(nu).scale(coeff)
    return out


def lr_check(s: HeckeSymmetry, lam: Sequence[int], mu: Sequence[int],
             coefficients: dict[Partition, int] | None = None) -> bool | dict:
    """s_λ s_μ ≡ Σ c^ν_{λμ} s_ν in the RE algebra."""
    lam, mu = Partition(lam), Partition(mu)
    coefficients = classical_lr(lam, mu) if coefficients is None else coefficients
    data = skew_inverse(s)
    diff = realg.schur(s, data, lam) * realg.schur(s, data, mu)
    for nu, c in sorted(coefficients.items()):
        diff = diff - realg.schur(s, data, nu).scale(c)
    if not diff:
        return True
    residue = realg.normal_form(diff, realg.ideal_component(s, lam.n + mu.n))
    return True if not residue else {"residue": str(residue)}


# -- the full suite ----------------------------------------------------------


@dataclass
class SuiteConfig:
    n: int = 3
    k: int = 3
    kmax: int = 6
    mode: str = "all"
    fast_rank: bool = False
    seed: int = 0
    rep_max_dim: int = 64
    family: tuple[int, int] | None = None

    def wants(self, pipeline: str) -> bool:
        return self.mode in ("all", pipeline)


def _witness_of(exc: Exception) -> object:
    return getattr(exc, "witness", None) or str(exc)


def full_suite(subject, config: SuiteConfig | None = None) -> VerificationReport:
    """Run every applicable check on a symmetry.

    ``subject`` is a validated :class:`HeckeSymmetry` or a tuple
    ``(R, N, name)`` that still has to pass validation.
    """
    config = config or SuiteConfig()
    if isinstance(subject, HeckeSymmetry):
        s, name, raw = subject, subject.name, None
    else:
        raw_r, raw_n, name = subject
        s, raw = None, (raw_r, raw_n)
    env = _env(q_mode=f"probabilistic (seed {config.seed})" if config.fast_rank else "exact",
               mode=config.mode)
    report = VerificationReport(name, environment=env)

    def blocked(check_id, params, why):
        report.skip(check_id, params, why)

    # structure
    if raw is not None:
        holder = {}

        def run_validate():
            try:
                holder["s"] = validate(raw[0], raw[1], name)
            except (BraidViolation, HeckeViolation) as exc:
                return {"error": type(exc).__name__, **(exc.witness or {})}
            return True

        if report.record("validate", {"N": raw[1]}, run_validate).status == "fail":
            for cid in ("skew_inverse", "birank", "downstream"):
                blocked(cid, {}, "validation failed")
            return report
        s = holder["s"]
    else:
        report.record("validate", {"N": s.N}, lambda: True)

    holder = {}

    def run_skew():
        try:
            holder["data"] = skew_inverse(s)
        except NotSkewInvertible as exc:
            return {"error": "NotSkewInvertible", "detail": str(exc)}
        return True

    if report.record("skew_inverse", {}, run_skew).status == "fail":
        blocked("downstream", {}, "R is not skew-invertible")
        return report
    data = holder["data"]

    def run_birank():
        try:
            holder["br"] = birank(s, kmax=config.kmax, fast=config.fast_rank, seed=config.seed)
        except Inconclusive as exc:
            return {"error": "Inconclusive", "detail": str(exc)}
        return True

    if report.record("birank", {"kmax": config.kmax, "fast": config.fast_rank}, run_birank).status == "fail":
        blocked("downstream", {}, "bi-rank undetermined")
        return report
    br = holder["br"]
    report.checks[-1].params.update({"result": str(br), "dimensions": list(br.hp_coefficients),
                                     "series": br.series_text()})
    env["birank"] = str(br)

    def run_identities():
        res = check_birank_identities(data, br)
        return True if all(res.values()) else {k: v for k, v in res.items()}

    report.record("skew_inverse.identities", {"birank": str(br)}, run_identities)

    dmax = _degree_bound(s)
    n_alg = min(config.n, dmax)

    if config.wants("algebra"):
        _algebra_checks(report, s, data, br, config, dmax, n_alg)
    if config.wants("rep"):
        _rep_checks(report, s, data, config)
    if config.wants("spectral"):
        fam = sp.SpectralFamily(*(config.family or (br.r, br.s)))
        _spectral_checks(report, fam, config)
    return report


def _algebra_checks(report, s, data, br, config, dmax, n_alg):
    report.record("re_relations.rank", {}, lambda: realg.ideal_component(s, 2).rank > 0)
    for nu in partitions(3):
        if 3 > dmax:
            report.skip("ch.coxeter", {"nu": str(nu)}, f"degree bound {dmax}")
            continue
        report.record("ch.coxeter", {"nu": str(nu)}, lambda nu=nu: coxeter_ch_check(s, nu))
    # centrality of power sums and Schur polynomials below the degree bound
    for k in range(1, dmax):
        report.record("central.power_sum", {"k": k},
                      lambda k=k: realg.is_central(s, realg.power_sum(s, data, k)))
    for d in range(2, dmax):
        for lam in partitions(d):
            report.record("central.schur", {"lambda": str(lam)},
                          lambda lam=lam: realg.is_central(s, realg.schur(s, data, lam)))
    # cyclicity of the characteristic map
    for n in range(2, n_alg + 1):
        z = word_element(n, coxeter_word(Partition([n]))) + word_element(n, (1,)).scale(Q)
        report.record("ch.cyclic", {"n": n, "z": "z_(n) + q*tau_1"},
                      lambda z=z, n=n: realg.ch(s, data, z, n) == realg.ch_right(s, data, z, n))
    for n in range(1, max(n_alg, 1) + 1):
        if n == 1:
            report.record("frobenius.algebra", {"n": 1, "nu": "(1)"},
                          lambda: realg.schur(s, data, (1,)) == realg.power_sum(s, data, 1))
            continue
        report.extend(frobenius_algebra(s, n))
    if config.n > dmax:
        report.skip("frobenius.algebra", {"n": config.n}, f"degree bound {dmax} for N = {s.N}")
    # Cayley-Hamilton, even case only
    if br.s == 0:
        if br.r <= dmax:
            report.record("cayley_hamilton", {"m": br.r},
                          lambda: realg.cayley_hamilton_even(s, data, br.r))
        else:
            report.skip("cayley_hamilton", {"m": br.r}, f"degree {br.r} above bound {dmax}")
    else:
        report.skip("cayley_hamilton", {}, f"bi-rank {br}")
    for lam, mu in (((1,), (1,)), ((2,), (1,))):
        if len(lam) + len(mu) and Partition(lam).n + Partition(mu).n <= dmax:
            report.record("littlewood_richardson", {"lambda": str(Partition(lam)), "mu": str(Partition(mu))},
                          lambda lam=lam, mu=mu: lr_check(s, lam, mu))


def _rep_checks(report, s, data, config):
    conv = realg.select_slot_convention(s, data)
    report.environment["slot_convention"] = conv
    report.record("rep.basic_action", {"k": 1, "convention": conv},
                  lambda: realg._matches_basic_action(s, data, realg.rep_generators(s, data, 1, conv)))
    rels = realg.re_relations(s)
    for k in range(0, config.k + 1):
        if s.N ** (k + 1) > config.rep_max_dim * 2:
            report.skip("rep.relations", {"k": k}, f"size N^(k+1) above {config.rep_max_dim * 2}")
            continue
        def run(k=k):
            reps = realg.rep_generators(s, data, k, conv)
            for r in rels:
                img = realg.apply_rep(reps, r)
                if not img.is_zero():
                    return {"relation": str(r), "k": k}
            return True

        report.record("rep.relations", {"k": k}, run)
        if k >= 2 and s.N ** (k + 1) <= config.rep_max_dim * 2:
            report.record("schur_weyl", {"k": k}, lambda k=k: realg.schur_weyl_check(s, data, k))
    for n in range(1, config.n + 1):
        for k in range(1, config.k + 1):
            if not _rep_size_ok(s, n, k, config.rep_max_dim):
                report.skip("frobenius.rep", {"n": n, "k": k}, f"operator size above {config.rep_max_dim}")
                continue
            report.extend(frobenius_rep(s, n, k, config.rep_max_dim))


P2_NOTE = ("the printed (2|0) example q^-1 mu1^2 + mu2^2 + ... looks like a dropped pair of "
           "parentheses; the derived q^-1 (mu1^2 + mu2^2) + ... is used")


def _p2_printed_form_check():
    """The derived p_2 for (2|0) satisfies Frobenius at n = 2 and the literal printed form does not."""
    fam = sp.SpectralFamily(2)
    m1, m2 = fam.mu(0), fam.mu(1)
    q_inv = Q.inverse()
    mixed = (m1 * m2).scale(q_inv * q_inv * (Q - q_inv))
    derived = (m1 * m1 + m2 * m2).scale(q_inv) + mixed
    printed = (m1 * m1).scale(q_inv) + m2 * m2 + mixed
    if sp.power_sum_spectral(fam, 2) != derived:
        return {"p2": str(sp.power_sum_spectral(fam, 2))}
    parts, _, table = character_table(2)
    row = table[parts.index(Partition((2,)))]
    rhs = sp.MultiPoly.constant(fam.nvars, ZERO)
    for b, lam in enumerate(parts):
        rhs = rhs + sp.schur_spectral(fam, lam).scale(row[b])
    return derived == rhs and printed != rhs


def _spectral_checks(report, fam, config):
    for n in range(1, min(config.n, 5) + 1):
        report.extend(frobenius_spectral(fam, n))
    if (fam.m, fam.n) == (2, 0):
        report.record("p2.printed_form", {"family": str(fam), "note": P2_NOTE}, _p2_printed_form_check)
    for k in range(1, 6):
        report.record("newton", {"family": str(fam), "k": k}, lambda k=k: sp.newton_check(fam, k))
    if fam.n == 0:
        for k in range(1, 5):
            report.record("hall_littlewood", {"family": str(fam), "k": k}, lambda k=k: sp.hl_compare(fam, k))
    else:
        report.skip("hall_littlewood", {"family": str(fam)}, "family has odd eigenvalues")
    if fam.m and fam.n:
        for k in range(1, 4):
            report.record("supersymmetry.power_sum", {"family": str(fam), "k": k},
                          lambda k=k: sp.supersymmetry_check(sp.power_sum_spectral(fam, k), fam))
        for lam in partitions(3):
            report.record("supersymmetry.schur", {"family": str(fam), "lambda": str(lam)},
                          lambda lam=lam: sp.supersymmetry_check(sp.schur_spectral(fam, lam), fam))
    for k in range(1, 4):
        def run(k=k):
            got = sp.classical_limit(sp.power_sum_spectral(fam, k))
            want = sp.MultiPoly.constant(fam.nvars, ZERO)
            for i in range(fam.m):
                want = want + fam.mu(i) ** k
            for j in range(fam.n):
                want = want - fam.nu(j) ** k
            return True if got == want else {"limit": str(got)}

        report.record("classical_limit", {"family": str(fam), "k": k}, run)
