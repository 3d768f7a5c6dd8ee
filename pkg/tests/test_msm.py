import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixsim.commsim import SimConfig, run
from mixsim.errors import InvalidParameter
from mixsim.msm import (
    MeasureSet,
    PhaseUndetermined,
    StepSeries,
    aggregate,
    classify_phase,
    measure_series,
    stat_I,
    stat_L,
    stat_LR,
    stat_S,
    step_series,
)
from mixsim.netgen import make_star, make_ws
from mixsim.rng import make_rng

from oracles import naive_I, naive_L, naive_LR, naive_mean_var, naive_S

PREV, NEXT = (1, 0, 1, 0), (1, 1, 1, 0)


def test_worked_example():
    assert stat_I(PREV, NEXT, 1) == pytest.approx(0.25, abs=1e-15)
    assert stat_L(PREV, NEXT, 1) == pytest.approx(0.5, abs=1e-15)
    assert stat_LR(PREV, NEXT) == pytest.approx(1 / math.sqrt(3), abs=1e-15)
    assert stat_S(PREV, NEXT) == pytest.approx(2 / math.sqrt(6), abs=1e-15)


def test_swap_example():
    assert stat_I((2, 0), (0, 2), 1) == 0
    assert stat_L((2, 0), (0, 2), 1) == pytest.approx(2.0)
    assert stat_S((2, 0), (0, 2)) == 0


def test_identical_states():
    q = (3, 0, 1, 2)
    assert stat_I(q, q) == 0 and stat_L(q, q) == 0 and stat_LR(q, q) == 0
    assert stat_S(q, q) == 1.0


def test_undefined_on_zero_vectors():
    assert stat_LR((1, 2), (0, 0)) is None
    assert stat_S((1, 2), (0, 0)) is None
    assert stat_S((0, 0), (1, 2)) is None
    assert stat_LR((0, 0), (1, 2)) == pytest.approx(1.0)


def test_length_mismatch():
    for f in (stat_I, stat_L, stat_LR, stat_S):
        with pytest.raises(InvalidParameter):
            f((1, 2), (1, 2, 3))


def test_oracle_equivalence_random_pairs():
    rng = make_rng(2024, "msm-oracle")
    for _ in range(1000):
        n = rng.randint(1, 20)
        a = [rng.randint(0, 10) for _ in range(n)]
        b = [rng.randint(0, 10) for _ in range(n)]
        u = rng.randint(1, 3)
        assert stat_I(a, b, u) == pytest.approx(naive_I(a, b, u), abs=1e-12)
        assert stat_L(a, b, u) == pytest.approx(naive_L(a, b, u), abs=1e-12)
        for f, g in ((stat_LR, naive_LR), (stat_S, naive_S)):
            got, want = f(a, b), g(a, b)
            assert (got is None) == (want is None)
            if got is not None:
                assert got == pytest.approx(want, abs=1e-12)
        # vectorized path agrees with scalar path
        ss = step_series(np.array([a, b]), u)
        assert ss.I[0] == pytest.approx(naive_I(a, b, u), abs=1e-12)
        assert ss.L[0] == pytest.approx(naive_L(a, b, u), abs=1e-12)
        lr, s = naive_LR(a, b), naive_S(a, b)
        assert np.isnan(ss.LR[0]) if lr is None else ss.LR[0] == pytest.approx(lr, abs=1e-12)
        assert np.isnan(ss.S[0]) if s is None else ss.S[0] == pytest.approx(s, abs=1e-12)


states = st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 50), min_size=n, max_size=n),
                        st.lists(st.integers(0, 50), min_size=n, max_size=n))
)


@given(pair=states, u=st.integers(1, 4))
@settings(max_examples=300)
def test_ranges(pair, u):
    a, b = pair
    s = stat_S(a, b)
    assert s is None or 0.0 <= s <= 1.0
    assert stat_I(a, b, u) <= max(sum(a), sum(b)) / (len(a) * u) + 1e-15
    assert stat_L(a, b, u) >= 0
    lr = stat_LR(a, b)
    assert lr is None or lr >= 0


@given(pair=states, c=st.integers(2, 7))
@settings(max_examples=200)
def test_scale_behavior(pair, c):
    a, b = pair
    ca, cb = [c * x for x in a], [c * x for x in b]
    s, cs = stat_S(a, b), stat_S(ca, cb)
    assert (s is None) == (cs is None)
    if s is not None:
        assert cs == pytest.approx(s, abs=1e-12)
    lr, clr = stat_LR(a, b), stat_LR(ca, cb)
    if lr is not None:
        assert clr == pytest.approx(lr, abs=1e-12)
    # L's numerator is the raw Euclidean change
    assert stat_L(ca, cb, 1) == pytest.approx(c * stat_L(a, b, 1), rel=1e-12, abs=1e-12)


def test_step_series_constant():
    ss = step_series(np.tile([1, 2, 0], (5, 1)))
    assert len(ss) == 4
    assert (ss.I == 0).all() and (ss.L == 0).all() and (ss.LR == 0).all()
    assert (ss.S == 1).all()


def test_step_series_length_from_run():
    series = run(make_star(91), SimConfig(t_max=100, seed=1))
    assert len(step_series(series)) == 100


def test_step_series_zero_vector():
    Q = np.array([[1, 0], [0, 0], [0, 0], [0, 1], [0, 1]])
    ss = step_series(Q)
    assert np.isnan(ss.S[:3]).all()
    assert ss.S[3] == 1.0
    assert np.isnan(ss.LR[:2]).all() and not np.isnan(ss.LR[2:]).any()


def test_step_series_too_short():
    with pytest.raises(InvalidParameter):
        step_series(np.array([[1, 2]]))


def test_aggregate_population_variance():
    ss = StepSeries.from_lists([0, 0], [0, 0], [0, 0], [1, 0])
    ms = aggregate(ss)
    assert (ms.mu_S, ms.var_S, ms.M_mix) == (0.5, 0.25, 0.125)


def test_aggregate_excludes_undefined():
    ss = StepSeries.from_lists([0.1, 0.2, 0.3], [0.1, 0.2, 0.3], [None, 0.5, 1.0], [None, None, 0.5])
    ms = aggregate(ss)
    assert (ms.excluded_LR, ms.excluded_S) == (1, 2)
    assert ms.mu_LR == pytest.approx(0.75) and ms.var_LR == pytest.approx(0.0625)
    assert ms.mu_S == 0.5 and ms.var_S == 0.0


def test_aggregate_absent():
    ms = aggregate(StepSeries.from_lists([0], [0], [None], [None]))
    assert ms.mu_S is None and ms.var_S is None and ms.M_mix is None and ms.M_atom is None
    with pytest.raises(PhaseUndetermined):
        classify_phase(ms)


def test_aggregate_matches_oracle_on_simulation():
    series = run(make_ws(91, 4, 0.55, make_rng(1)), SimConfig(g_rate=0.5, d_rate=0.5, seed=4))
    ss = step_series(series)
    ms = aggregate(ss)
    prev, nxt = series.states[:-1].tolist(), series.states[1:].tolist()
    for stat, naive, (mu, var) in (
        ("I", naive_I, (ms.mu_I, ms.var_I)),
        ("L", naive_L, (ms.mu_L, ms.var_L)),
        ("LR", naive_LR, (ms.mu_LR, ms.var_LR)),
        ("S", naive_S, (ms.mu_S, ms.var_S)),
    ):
        vals = [naive(a, b) for a, b in zip(prev, nxt)]
        m, v = naive_mean_var(vals)
        assert mu == pytest.approx(m, abs=1e-12)
        assert var == pytest.approx(v, abs=1e-12)
    assert ms.M_mix == ms.mu_S * ms.var_S
    assert ms.M_atom is ms.var_LR and ms.M_mob is ms.mu_L


def test_no_activity_is_nihilism():
    ms = measure_series(run(make_star(91), SimConfig(g_rate=0, d_rate=0, seed=1)))
    assert (ms.M_mix, ms.M_atom, ms.M_mob) == (0, 0, 0)
    assert classify_phase(ms) == "Nihilism"


def _ms(mix, atom, mob):
    return MeasureSet(0, 0, mob, 0, 0, atom, 1.0, mix, mix)


def test_classify_examples():
    assert classify_phase(_ms(0.0, 0.0, 0.0)) == "Nihilism"
    # 0.02/0.02 = 1 beats 0.001/0.1 and 0.01/0.25
    assert classify_phase(_ms(0.02, 0.001, 0.01)) == "Mixism"
    assert classify_phase(_ms(0.02, 0.001, 0.01), epsilon=math.inf) == "Nihilism"
    assert classify_phase(_ms(0.001, 0.3, 0.01)) == "Atomism"
    assert classify_phase(_ms(0.001, 0.01, 0.5)) == "Mobism"


@given(mix=st.floats(0, 1), atom=st.floats(0, 1), mob=st.floats(0, 1), eps=st.floats(0, 1))
def test_nihilism_only_below_threshold(mix, atom, mob, eps):
    label = classify_phase(_ms(mix, atom, mob), epsilon=eps)
    assert (label == "Nihilism") == (max(mix, atom, mob) < eps)
