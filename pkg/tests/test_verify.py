import json

import pytest

from qfrob.hecke import Partition, character_table, coxeter_word, gap_placements, partitions
from qfrob.hsym import builtin
from qfrob.qscalar import ONE, Q, specialize
from qfrob.spectral import SpectralFamily
from qfrob.verify import (
    GAP_WORD_421,
    ResourceBoundExceeded,
    SuiteConfig,
    VerificationReport,
    classical_lr,
    frobenius_algebra,
    frobenius_rep,
    frobenius_spectral,
    full_suite,
    lr_check,
    placement_character_check,
    coxeter_ch_check,
)

from oracles import lr_coefficients, sn_character_table


def _all_pass(report):
    return report.checks and all(c.status == "pass" for c in report.checks)


@pytest.mark.parametrize("n", [2, 3])
def test_frobenius_algebra(sym, n):
    rep = frobenius_algebra(sym, n)
    assert _all_pass(rep)
    assert len(rep.checks) == len(partitions(n))


def test_frobenius_algebra_degree_four(r2):
    assert _all_pass(frobenius_algebra(r2, 4))


def test_frobenius_algebra_bound():
    with pytest.raises(ResourceBoundExceeded):
        frobenius_algebra(builtin("glN:3"), 4)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_frobenius_rep(sym, k):
    assert _all_pass(frobenius_rep(sym, 3, k))


def test_frobenius_rep_bound():
    with pytest.raises(ResourceBoundExceeded):
        frobenius_rep(builtin("glN:3"), 3, 3, max_dim=64)


@pytest.mark.parametrize("mn,n", [((2, 0), 3), ((1, 1), 3), ((3, 0), 4), ((2, 1), 4)])
def test_frobenius_spectral(mn, n):
    assert _all_pass(frobenius_spectral(SpectralFamily(*mn), n))


@pytest.mark.parametrize("nu", [(3,), (2, 1), (1, 1, 1)])
def test_coxeter_ch(sym, nu):
    assert coxeter_ch_check(sym, nu)


def test_coxeter_ch_second_placement(r2):
    # (2,1,1) and (3,1) in H_4 have several placements; the check compares two of them
    for nu in [(2, 1, 1), (3, 1)]:
        assert len(gap_placements(Partition(nu))) > 1
        assert coxeter_ch_check(r2, nu)


def test_placement_characters_n7():
    canonical = coxeter_word(Partition((4, 2, 1)))
    assert canonical != GAP_WORD_421
    assert placement_character_check((4, 2, 1), [canonical, GAP_WORD_421])


def test_classical_frobenius_matches_group_oracle():
    # at q = 1 the Hecke character table is the S_n table
    for n in (2, 3, 4):
        parts, _, table = character_table(n)
        oracle = sn_character_table(n)
        ours = {tuple(int(specialize(table[a][b], 1)) for a in range(len(parts))) for b in range(len(parts))}
        theirs = {tuple(chi[tuple(nu)] for nu in parts) for chi in oracle.values()}
        assert ours == theirs


@pytest.mark.parametrize("lam,mu", [((1,), (1,)), ((2,), (1,)), ((1, 1), (1,)), ((2, 1), (2,))])
def test_classical_lr_against_oracle(lam, mu):
    ours = {tuple(k): v for k, v in classical_lr(lam, mu).items()}
    assert ours == lr_coefficients(lam, mu)


@pytest.mark.parametrize("lam,mu", [((1,), (1,)), ((2,), (1,))])
def test_lr_in_re_algebra(sym, lam, mu):
    assert lr_check(sym, lam, mu) is True


def test_lr_wrong_coefficients_fail(r2):
    out = lr_check(r2, (1,), (1,), {Partition((2,)): 1})
    assert isinstance(out, dict) and out["residue"]


def test_full_suite_builtins(sym):
    report = full_suite(sym, SuiteConfig())
    assert report.passed, report.failures
    ids = {c.id for c in report.checks}
    assert {"validate", "skew_inverse", "birank", "frobenius.algebra", "frobenius.rep",
            "frobenius.spectral", "ch.coxeter"} <= ids


def test_full_suite_corrupted():
    s = builtin("r2")
    i, j, v = s.R.first_nonzero()
    bad = s.R.set(i, j, v + ONE)
    report = full_suite((bad, 2, "bad"), SuiteConfig())
    assert not report.passed
    first = report.checks[0]
    assert first.id == "validate" and first.status == "fail"
    assert first.witness["error"] in ("BraidViolation", "HeckeViolation")
    assert all(c.status == "skip" for c in report.checks[1:])


def test_full_suite_modes(r11):
    report = full_suite(r11, SuiteConfig(mode="spectral"))
    ids = {c.id for c in report.checks}
    assert "frobenius.spectral" in ids and "frobenius.algebra" not in ids


def test_report_deterministic(r2):
    a = full_suite(r2, SuiteConfig(n=2, k=2)).to_dict(timing=False)
    b = full_suite(r2, SuiteConfig(n=2, k=2)).to_dict(timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_report_record_and_summary():
    rep = VerificationReport("x")
    rep.record("a", {}, lambda: True)
    rep.record("b", {}, lambda: {"row": 0})
    rep.skip("c", {}, "too big")
    assert rep.summary() == {"pass": 1, "fail": 1, "skip": 1, "total": 3, "ok": False}
    assert rep.failures[0].witness == {"row": 0}
    assert "seconds" not in rep.to_dict(timing=False)["checks"][0]


def test_p2_printed_form_flagged(r2):
    report = full_suite(r2, SuiteConfig(mode="spectral"))
    [check] = [c for c in report.checks if c.id == "p2.printed_form"]
    assert check.status == "pass" and "parentheses" in check.params["note"]
