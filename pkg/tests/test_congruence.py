import pytest

from romikseq import congruence as cg
from romikseq.errors import DomainError, PreconditionError, UsageError
from romikseq.reports import Status
from romikseq.seqcore import pi3

MOD13 = [1, 1, 12, 12, 4, 9, 9, 3, 10, 10, 12, 1, 1, 9, 4, 4, 10, 3, 3, 1, 12]


def test_reduce_mod_examples():
    assert cg.reduce_mod("d", 13, (0, 20)) == MOD13
    assert cg.reduce_mod("d", 4, (0, 4)) == [1, 1, 3, 3, 1]
    assert set(cg.reduce_mod("d", 2, (0, 100))) == {1}
    assert cg.reduce_mod("d", 13, (5, 8)) == MOD13[5:9]
    with pytest.raises(DomainError):
        cg.reduce_mod("d", 1, (0, 3))


def test_detect_period_examples():
    rep = cg.detect_period([1, 1, 3, 3] * 3)
    assert rep.status is Status.VERIFIED and rep.observed == {"start": 0, "period": 4}
    assert cg.detect_period(cg.reduce_mod("d", 13, (0, 60))).observed["period"] == 18
    rep = cg.detect_period([5, 2, 7, 0, 0, 0, 0])
    assert rep.observed == {"start": 3, "period": 1}
    assert cg.detect_period([1, 2, 3]).status is Status.INCONCLUSIVE
    with pytest.raises(DomainError):
        cg.detect_period([])


def test_detect_period_invariants():
    rep = cg.detect_period(cg.reduce_mod("d", 4, (0, 64)))
    assert rep.observed == {"start": 0, "period": 4}
    for e in (3, 4, 5):
        P = 2 ** (e - 1)
        obs = cg.detect_period(cg.reduce_mod("d", 2**e, (0, 4 * P))).observed
        assert obs["start"] == 0 and P % obs["period"] == 0


@pytest.mark.parametrize(
    "family,p,e,horizon,start",
    [("d", 3, 2, 100, 5), ("u", 3, 2, 60, 4), ("v", 5, 1, 60, 3), ("d", 7, 2, 120, 25)],
)
def test_verify_vanishing(family, p, e, horizon, start):
    rep = cg.verify_vanishing(family, p, e, horizon)
    assert rep.status is Status.VERIFIED
    assert rep.claimed_start == start
    assert rep.observed_start <= rep.claimed_start


def test_verify_vanishing_preconditions():
    with pytest.raises(UsageError):
        cg.verify_vanishing("d", 5, 2, 100)
    with pytest.raises(UsageError):
        cg.verify_vanishing("d", 3, 1, 100)
    with pytest.raises(UsageError):
        cg.verify_vanishing("d", 3, 2, 3)
    with pytest.raises(UsageError):
        cg.verify_vanishing("u", 4, 2, 50)


@pytest.mark.parametrize(
    "p,e,period,start,horizon,minimal",
    [(5, 1, 4, 2, 60, 2), (2, 4, 8, 0, 64, 8), (13, 1, 36, 2, 150, 18), (5, 2, 20, 3, 200, None)],
)
def test_verify_periodicity(p, e, period, start, horizon, minimal):
    rep = cg.verify_periodicity("d", p, e, period, start, horizon)
    assert rep.status is Status.VERIFIED
    assert rep.period == period and rep.start == start
    if minimal:
        assert rep.observed["period"] == minimal


def test_verify_periodicity_outcomes():
    assert cg.verify_periodicity("d", 13, 1, 36, 2, 60).status is Status.INCONCLUSIVE
    rep = cg.verify_periodicity("d", 13, 1, 5, 2, 100)
    assert rep.status is Status.COUNTEREXAMPLE and rep.witness["index"] >= 2
    with pytest.raises(UsageError):
        cg.verify_periodicity("d", 7, 1, horizon=100)


def test_shift_congruence():
    rep = cg.verify_shift_congruence(13, 1, 100)
    assert rep.status is Status.VERIFIED and rep.details["multiplier"] == "3"
    assert MOD13[13] == 3 * MOD13[7] % 13
    rep = cg.verify_shift_congruence(5, 1, 60)
    assert rep.details == {"shift": 2, "multiplier": "1"} and rep.status is Status.VERIFIED
    assert cg.verify_shift_congruence(5, 2, 60).status is Status.VERIFIED
    assert cg.verify_shift_congruence(13, 1, 5).status is Status.INCONCLUSIVE
    assert cg.shift_multiplier(13, 1) == (3 * 7 * 11 * 15 * 19 * 23) ** 2 % 13
    with pytest.raises(UsageError):
        cg.verify_shift_congruence(7, 1, 60)


@pytest.mark.parametrize("p,e,k,horizon", [(5, 1, 1, 40), (5, 1, 3, 40), (13, 1, 1, 30), (5, 2, 2, 20)])
def test_twisted_rinv(p, e, k, horizon):
    assert cg.verify_twisted_Rinv(p, e, k, horizon).status is Status.VERIFIED


def test_twisted_rinv_hypothesis_checked():
    with pytest.raises(PreconditionError):
        cg.verify_twisted_Rinv(5, 1, 1, 10, lambda j: 1)
    with pytest.raises(UsageError):
        cg.verify_twisted_Rinv(7, 1, 1, 10)


def test_vx_periodicity():
    rep = cg.verify_vx_periodicity(3, pi3, 48)
    assert rep.status is Status.VERIFIED and rep.period == 4
    for seed in range(10):
        x = cg.RandomSeq(seed, odd_at=(1, 2))
        rep = cg.verify_vx_periodicity(2, x)
        x1 = x(1) % 4
        assert rep.status is Status.VERIFIED
        assert rep.details["table"] == [str(t) for t in (1, x1, 3, (x1 + 2) % 4)]
        assert cg.verify_vx_periodicity(5, x, 3 * 16 + 16).status is Status.VERIFIED
    with pytest.raises(UsageError):
        cg.verify_vx_periodicity(3, lambda j: [1, 1, 2][j] if j < 3 else 1)
    with pytest.raises(UsageError):
        cg.verify_vx_periodicity(2, lambda j: 1 if j == 0 else 2)


def test_rinv_row_periodicity():
    for e in (2, 3, 4):
        for n in range(7):
            for y in [None] + [cg.RandomSeq(s) for s in range(3)]:
                rep = cg.verify_periodicity("Rinv_row", 2, e, horizon=4 * 2**e, n=n, y=y)
                assert rep.status is Status.VERIFIED


def test_rinv_divisibility_and_residue():
    assert cg.verify_Rinv_divisibility(3, 60).status is Status.VERIFIED
    assert cg.verify_Rinv_divisibility(7, 60).status is Status.VERIFIED
    for p in (5, 13, 17):
        assert cg.quadratic_residue_check(p).status is Status.VERIFIED


def test_scans():
    rep = cg.scan_conjecture("C3", 3, 1, 100)
    assert rep.status is Status.CONSISTENT and rep.claimed["start"] == 3
    rep = cg.scan_conjecture("C2", 7, 8, 200)
    assert rep.status is Status.DOCUMENTED_EXCEPTION and rep.observed["start"] == 102
    assert cg.scan_conjecture("H2adic", horizon=40).status is Status.CONSISTENT
    assert cg.scan_conjecture("C1", 3, 2, 100, variant="2a").status is Status.CONSISTENT
    assert cg.scan_conjecture("C4", 13, 1, 200).details["constant"] is not None
    assert cg.scan_conjecture("C5", 2, 4, 64, n=0).status is Status.CONSISTENT
    # the k-period of row n = 1 is 2^(e-1), not 2^(e-3): reported, not raised
    rep = cg.scan_conjecture("C5", 2, 4, 64, n=1)
    assert rep.status is Status.COUNTEREXAMPLE and rep.observed == {"start": 0, "period": 8}
    with pytest.raises(UsageError):
        cg.scan_conjecture("C9", 3, 1, 10)
    with pytest.raises(UsageError):
        cg.scan_conjecture("C3", 5, 1, 10)


def test_reports_are_deterministic():
    a = cg.verify_periodicity("d", 13, 1, 36, 2, 150)
    b = cg.verify_periodicity("d", 13, 1, 36, 2, 150)
    a.elapsed_ms = b.elapsed_ms = None
    assert a.to_dict() == b.to_dict()


def test_mod4_table_needs_x2_odd():
    x = lambda j: 1 if j < 2 else 0
    rep = cg.verify_vx_periodicity(2, x)
    assert rep.status is Status.COUNTEREXAMPLE
    assert rep.witness["block"] == ["1", "1", "1", "1"]
    assert cg.verify_vx_periodicity(1, x).status is Status.VERIFIED
