import json
from fractions import Fraction

import pytest

from gausscyclo.cyclotomic import cyclo_ctx
from gausscyclo.verify import (
    CLAIMS,
    RunOptions,
    VerificationReport,
    exact_str,
    expand_jobs,
    run_claims,
    sample_generators,
    verify_background,
    verify_det_a1,
    verify_det_b2,
    verify_generic_det,
    verify_lerch,
)


def test_exact_str():
    assert exact_str(Fraction(-4, 3)) == "-4/3"
    assert exact_str(Fraction(12, 4)) == "3"
    assert exact_str(10 ** 40) == "1" + "0" * 40
    ctx = cyclo_ctx(4, 5)
    assert exact_str(ctx.scalar(Fraction(1, 2))) == "1/2"
    data = json.loads(exact_str(ctx.zeta_n() / 3))
    assert data["den"] == "3"


def test_report_serialisation():
    r = VerificationReport("det_a1", q=5, p=5, n=1, k=1, expected="-256", computed="-256")
    d = r.to_dict()
    assert d["q"] == "5" and "elapsed" not in d
    assert "elapsed" in r.to_dict(timings=True)
    assert r.csv_row() == ["det_a1", "5", "5", "1", "1", "pass", "-256", "-256"]


def test_generic_det_examples():
    r = verify_generic_det(5, 1)
    assert r.status == "pass" and r.extra["det_a"] == "-256" and r.computed == "4"
    r = verify_generic_det(9, 4)
    assert r.status == "pass" and r.expected == "1"
    r = verify_generic_det(7, 6)
    assert r.extra["det_a"] == "-1"


def test_q2_is_informational():
    r = verify_det_a1(2)
    assert r.status == "info" and r.computed == "-1" and r.expected == "1"
    assert r.passed


def test_det_b2_reports_stated_and_rederived_values():
    r = verify_det_b2(7)
    assert r.status == "fail"
    assert r.expected == "-27/49" and r.computed == "27/49"
    assert r.extra["rederived"] == "27/49"
    assert verify_det_b2(5).status == "pass"


def test_sample_generators_is_deterministic():
    assert sample_generators(12, 3) == [5, 7, 11]
    assert sample_generators(48, 3) == sample_generators(48, 3)
    assert len(sample_generators(48, 3)) == 3


def test_expand_jobs_skips_inapplicable_parameters():
    jobs = expand_jobs([8, 9], None, ["det_a2", "b_singularity"], RunOptions())
    assert ("det_a2", (8,)) not in jobs
    assert ("det_a2", (9,)) in jobs
    assert ("b_singularity", (9, 4)) in jobs and ("b_singularity", (8, 7)) in jobs


def test_run_claims_sorted_and_parallel_equal():
    seq = run_claims([5, 7], claims=["det_a1", "b_singularity", "stickelberger"])
    par = run_claims([7, 5], claims=["stickelberger", "b_singularity", "det_a1"], jobs=2)
    assert [r.to_dict() for r in seq] == [r.to_dict() for r in par]
    assert [r.sort_key() for r in seq] == sorted(r.sort_key() for r in seq)


def test_unknown_claim():
    with pytest.raises(ValueError):
        run_claims([5], claims=["nope"])


def test_lerch_and_background():
    assert verify_lerch(12).status == "pass"
    reports = verify_background(primes=(3, 5, 7), prime_powers=(4, 5, 9))
    assert reports and all(r.passed for r in reports)
    assert {r.claim for r in reports} >= {"carlitz", "gamma", "lerch", "stickelberger"}


def test_every_claim_runs_on_a_small_field():
    reports = run_claims([5, 7], claims=list(CLAIMS), opts=RunOptions(m_max=6, gamma_max=3))
    failed = [r for r in reports if not r.passed]
    # the det B_p(2) closed form has the wrong sign at p = 7
    assert [(r.claim, r.q) for r in failed] == [("det_b2", 7)]
