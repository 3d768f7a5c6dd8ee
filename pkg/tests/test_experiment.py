import pickle

import pytest

from mixsim.commsim import SimConfig
from mixsim.errors import InvalidParameter
from mixsim.experiment import (
    ExperimentSpec,
    NetworkSpec,
    average_measures,
    case_label,
    compare_networks,
    default_spec,
    normalize_columns,
    parse_network,
    radar_normalize,
    rep_seed,
    run_repetitions,
    _run_reps,
)
from mixsim.msm import MEASURE_NAMES, MeasureSet
from mixsim.netgen import make_star, make_tree

STAR = make_star(91)
CFG = SimConfig(g_rate=0.4, d_rate=0.4, t_max=100)


def test_single_rep_average_equals_measure_set():
    avg, per_rep = run_repetitions(STAR, CFG, 1, 3)
    assert len(per_rep) == 1
    assert avg.measures() == per_rep[0].measures()


def test_repetitions_deterministic_and_parallel_equal():
    a = run_repetitions(STAR, CFG, 12, 5)
    b = run_repetitions(STAR, CFG, 12, 5)
    c = run_repetitions(STAR, CFG, 12, 5, workers=3)
    assert pickle.dumps(a) == pickle.dumps(b) == pickle.dumps(c)


def test_repetition_order_independence():
    _, per_rep = run_repetitions(STAR, CFG, 8, 11)
    shuffled = _run_reps(STAR, CFG, [5, 2, 7, 0, 1, 6, 3, 4], 11)
    by_index = dict(zip([5, 2, 7, 0, 1, 6, 3, 4], shuffled))
    assert [by_index[i] for i in range(8)] == per_rep


def test_averaging_linearity():
    avg, per_rep = run_repetitions(STAR, CFG, 20, 2)
    total = 0.0
    for ms in per_rep:
        total += ms.mu_S
    assert avg.mu_S == total / len(per_rep)
    # M_mix is averaged per run, not rebuilt from averaged components
    total = 0.0
    for ms in per_rep:
        total += ms.M_mix
    assert avg.M_mix == total / len(per_rep)


def test_average_skips_absent_measures():
    full = MeasureSet(*([1.0] * 9))
    empty = MeasureSet(0.5, 0.0, 0.5, 0.0, None, None, None, None, None, 3, 3)
    avg = average_measures([full, empty, full])
    assert avg.mu_I == pytest.approx(2.5 / 3)
    assert avg.mu_S == 1.0
    assert avg.absent_reps == {n: 1 for n in ("mu_LR", "var_LR", "mu_S", "var_S", "M_mix")}
    assert avg.excluded_S == 3
    none = average_measures([empty])
    assert none.mu_S is None and none.M_mix is None


def test_rep_seeds_distinct():
    seeds = {rep_seed(1, r) for r in range(1000)}
    assert len(seeds) == 1000
    assert rep_seed(1, 0) != rep_seed(2, 0)


def test_reps_validation():
    with pytest.raises(InvalidParameter):
        run_repetitions(STAR, CFG, 0, 1)
    with pytest.raises(InvalidParameter):
        ExperimentSpec([NetworkSpec("s", "star", {"n": 5})], reps=0)


def test_parse_network():
    spec = parse_network("ws:91,4,0.55")
    assert spec.kind == "ws" and spec.params == {"n": 91, "k": 4, "p": 0.55}
    assert parse_network("hypercube:6").build().n == 64
    for bad in ("ring:5", "star", "star:1,2", "tree:9,x"):
        with pytest.raises(InvalidParameter):
            parse_network(bad)


def test_random_networks_built_once_from_construction_seed():
    spec = NetworkSpec("J", "jumpers", {"branching": 9, "depth": 2, "count": 30}, seed=4)
    assert spec.build(0) == spec.build(99)
    unseeded = NetworkSpec("J", "jumpers", {"branching": 9, "depth": 2, "count": 30})
    assert unseeded.build(1) == unseeded.build(1)
    assert unseeded.build(1) != unseeded.build(2)


def test_default_spec_protocol():
    spec = default_spec(1)
    assert [n.name for n in spec.networks] == [
        "Star", "Tree", "Tree+Jumpers", "Tree+More", "Small-world", "Hypercube"
    ]
    assert spec.cases == [(0.4, 0.3), (0.4, 0.4), (0.5, 0.4), (0.5, 0.5)]
    assert (spec.reps, spec.base.u, spec.base.n0, spec.base.t_max) == (100, 1, 10, 100)
    graphs = [n.build(1) for n in spec.networks]
    assert [g.edge_count for g in graphs] == [90, 90, 120, 150, 182, 192]


def small_spec(**kw):
    nets = [NetworkSpec("Star", "star", {"n": 31}), NetworkSpec("Tree", "tree", {"branching": 5, "depth": 2})]
    return ExperimentSpec(nets, [(0.4, 0.3), (0.5, 0.5)], reps=kw.pop("reps", 5), master_seed=3, **kw)


def test_compare_grid_and_radar():
    rep = compare_networks(small_spec())
    assert set(rep.cells) == {(n, c) for n in ("Star", "Tree") for c in ("g0.4_d0.3", "g0.5_d0.5")}
    for label, radar in rep.radar.items():
        for m in MEASURE_NAMES:
            col = [radar[n][m] for n in radar]
            assert all(0.0 <= v <= 1.0 for v in col)
            assert max(col) == 1.0 or max(col) == 0.0


def test_compare_single_cell():
    spec = ExperimentSpec([NetworkSpec("S", "star", {"n": 10})], [(0.4, 0.4)], reps=2)
    rep = compare_networks(spec)
    assert len(rep.cells) == 1
    assert all(v in (0.0, 1.0) for v in rep.radar["g0.4_d0.4"]["S"].values())


def test_compare_parallel_equals_serial():
    a = compare_networks(small_spec())
    b = compare_networks(small_spec(), workers=2)
    assert pickle.dumps(a.cells) == pickle.dumps(b.cells)
    assert a.radar == b.radar


def test_compare_records_cell_failures():
    nets = [NetworkSpec("Star", "star", {"n": 31}), NetworkSpec("Tiny", "star", {"n": 3})]
    spec = ExperimentSpec(nets, [(0.4, 0.3)], reps=2, base=SimConfig(n0=10))
    rep = compare_networks(spec)
    assert rep.cells["Star", "g0.4_d0.3"].average is not None
    bad = rep.cells["Tiny", "g0.4_d0.3"]
    assert bad.average is None and "n0=10" in bad.error
    assert [c.network for c in rep.failed()] == ["Tiny"]
    assert set(rep.radar["g0.4_d0.3"]) == {"Star"}


def test_compare_records_build_failures():
    nets = [NetworkSpec("Star", "star", {"n": 31}), NetworkSpec("Bad", "jumpers", {"branching": 1, "depth": 1, "count": 5})]
    rep = compare_networks(ExperimentSpec(nets, [(0.4, 0.3)], reps=1))
    assert rep.cells["Bad", "g0.4_d0.3"].error.startswith("InvalidParameter")


def test_radar_normalize_properties():
    rep = compare_networks(small_spec())
    radar = radar_normalize(rep, "g0.4_d0.3")
    assert normalize_columns(radar) == radar  # idempotent
    with pytest.raises(InvalidParameter):
        radar_normalize(rep, "g0.9_d0.9")


def test_normalize_zero_and_absent_columns():
    rows = {
        "a": {m: 0.0 for m in MEASURE_NAMES} | {"mu_S": None},
        "b": {m: 0.0 for m in MEASURE_NAMES} | {"mu_S": 0.5, "mu_I": 2.0},
    }
    out = normalize_columns(rows)
    assert out["a"]["var_I"] == 0.0 and out["a"]["mu_S"] is None
    assert out["b"]["mu_S"] == 1.0 and out["b"]["mu_I"] == 1.0


def test_case_label():
    assert case_label(0.4, 0.3) == "g0.4_d0.3"
