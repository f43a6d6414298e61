"""Record-jump prediction vs the fully-run engine, and window estimators."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcdlab import engine, primality, records
from gcdlab.engine import RunConfig
from gcdlab.generators import AffineMinus, PowerMinus


def affine_trace(m, count):
    cfg = RunConfig(initial=1, arg=AffineMinus(m=m), stop_after_zeros=count, budget=10**12)
    return engine.run(cfg)


def test_integer_nth_root():
    assert records.integer_nth_root(27, 3) == (3, True)
    assert records.integer_nth_root(28, 3) == (3, False)
    assert records.integer_nth_root(0, 5) == (0, True)
    assert records.integer_nth_root(10**60, 2) == (10**30, True)
    with pytest.raises(ValueError):
        records.integer_nth_root(-1, 2)


@given(st.integers(0, 10**12), st.integers(1, 6))
@settings(max_examples=200, deadline=None)
def test_integer_nth_root_property(v, n):
    r, exact = records.integer_nth_root(v, n)
    assert r**n <= v < (r + 1) ** n
    assert exact == (r**n == v)


def test_affine_jump_matches_engine():
    for m in (1, 4, 7):
        tr = affine_trace(m, 6)
        zs = tr.zero_indices
        recs = [m * (z + 1) - 1 for z in zs]
        for k in range(len(recs) - 1):
            tail = records.harvest_tail(tr, zs[k] + 1, zs[k + 1])
            jump = records.RecordJump(recs[k], tail, AffineMinus(m=m))
            assert records.predict_next_affine(m, jump) == recs[k + 1]


def test_power_jump_matches_engine():
    for b, c in ((2, 2), (3, 2)):
        cfg = RunConfig(initial=b, arg=PowerMinus(b=b, c=c), stop_after_zeros=4, budget=10**9)
        tr = engine.run(cfg)
        zs = tr.zero_indices
        recs = [b * (z + 1) ** c - 1 for z in zs]
        for k in range(len(recs) - 1):
            tail = records.harvest_tail(tr, zs[k] + 1, zs[k + 1])
            jump = records.RecordJump(recs[k], tail, PowerMinus(b=b, c=c))
            assert records.predict_next_power(b, c, jump) == recs[k + 1]


def test_predict_affine_base_case():
    jump = records.RecordJump(2, [], AffineMinus(m=1))
    assert records.predict_next_affine(1, jump) == 5


def test_predict_power_2591():
    # harvest between the first two zeros of the b=2, c=2 run from initial 2
    cfg = RunConfig(initial=2, arg=PowerMinus(b=2, c=2), stop_after_zeros=2, budget=10**5)
    tr = engine.run(cfg)
    tail = records.harvest_tail(tr, tr.zero_indices[0] + 1, tr.zero_indices[1])
    jump = records.RecordJump(31, tail, PowerMinus(b=2, c=2))
    assert records.predict_next_power(2, 2, jump) == 2591


def test_worked_candidates():
    j = records.RecordJump(
        43213789,
        [-3, -13, -15241, -43, -1889, -3, -433, -113, -3, -5827, -247],
        AffineMinus(m=10),
    )
    assert records.predict_next_affine(10, j) == 475113649
    j = records.RecordJump(29994499999, [-3, -7, -53, -3], AffineMinus(m=100000))
    assert records.predict_next_affine(100000, j) == 2999479988299999
    j = records.RecordJump(2760686028799, [-113, -103, -7, -7, -113], PowerMinus(b=32, c=2))
    assert records.predict_next_power(32, 2, j) == 243884447023448880167715967
    j = records.RecordJump(265301, [-109, -31, -17, -3, -5, -3], PowerMinus(b=2, c=3))
    assert records.predict_next_power(2, 3, j) == 37299785868725741


def test_predict_power_rejects_inexact_root():
    jump = records.RecordJump(13, [], PowerMinus(b=2, c=2))  # (13+1)/2 = 7 not a square
    with pytest.raises(records.NotPerfectPower):
        records.predict_next_power(2, 2, jump)


def test_family_mismatch_rejected():
    jump = records.RecordJump(9, [], AffineMinus(m=2))
    with pytest.raises(ValueError):
        records.predict_next_affine(5, jump)
    with pytest.raises(ValueError):
        records.predict_next_power(2, 2, jump)


def test_tail_validation():
    with pytest.raises(ValueError):
        records.RecordJump(9, [-1], AffineMinus(m=2))  # -1 steps are never harvested


def test_second_record_candidate_full_window_is_exact():
    # alpha = 1 covers the whole inter-record gap, so the candidate is the record
    for m in (11, 28, 100):
        tr = affine_trace(m, 2)
        exact = m * (tr.zero_indices[1] + 1) - 1
        assert records.second_record_candidate_for(m, 1) == exact


def test_second_record_candidate_m28():
    assert records.second_record_candidate_for(28, 1) == 1147


def test_second_record_candidate_partial_window_monotone_toward_exact():
    m = 10**4
    full = records.second_record_candidate_for(m, 1)
    half = records.second_record_candidate_for(m, Fraction(1, 2))
    assert half >= full  # omitted negative steps only lower the estimate
    assert half == 299569999


def test_second_record_big_m_window():
    m = 2**100
    # window floor(m^(1/6)) keeps the run to ~10^5 steps
    val = records.second_record_candidate(
        m,
        Fraction(1, 6),
        engine.run(
            RunConfig(
                initial=1,
                arg=AffineMinus(m=m),
                budget=records._window_floor(m, Fraction(1, 6)) + 1,
            )
        ),
    )
    assert val == 4820814132776970826625886270541990288599672051495735016816639


def test_estimate_L_alpha_deterministic():
    ms = records.sample_ms(40, 10**6, 10**7, seed=11)
    assert ms == records.sample_ms(40, 10**6, 10**7, seed=11)
    est = records.estimate_L_alpha(Fraction(1, 2), ms)
    assert 0 <= est <= 1
    assert est == records.estimate_L_alpha(Fraction(1, 2), ms)
