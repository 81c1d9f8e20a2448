import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from statsmodels.stats.proportion import proportion_confint

from amplekit.errors import InvalidParam
from amplekit.io import canonical_text
from amplekit.medial import (Constant, Hashed, MedialRegimeConfig, PerDimension, evaluate,
                             medial_sample, parse_prob, parse_property, rows_to_csv,
                             run_experiment, wilson_interval)

# conic:2 at n = 30, Constant(1/2), max_dim 2, seed 42, 200 samples
PINNED_CONIC2_N30 = 103


def test_degenerate_configs():
    full = medial_sample(MedialRegimeConfig(4, 2, Constant(1.0), 7, allow_degenerate=True))
    assert full.f_vector == (4, 6, 4)
    empty = medial_sample(MedialRegimeConfig(4, 2, Constant(0.0), 7, allow_degenerate=True))
    assert empty.is_empty()
    with pytest.raises(InvalidParam):
        MedialRegimeConfig(4, 2, Constant(1.0), 7)
    with pytest.raises(InvalidParam):
        MedialRegimeConfig(4, 2, PerDimension((0.5, 0.5)), 7)


def test_hashed_probabilities_in_range():
    h = Hashed(0.2, 0.7)
    ps = [h.probability((str(i), str(i + 1)), 5) for i in range(200)]
    assert all(0.2 <= p <= 0.7 for p in ps)
    assert h.probability(("0", "1"), 5) == ps[0]
    assert len(set(ps)) > 150


def test_parsers():
    assert parse_prob("const:0.5") == Constant(0.5)
    assert parse_prob("hashed:0.2,0.8") == Hashed(0.2, 0.8)
    assert parse_prob("perdim:0.9,0.5") == PerDimension((0.9, 0.5))
    assert parse_property("conic:2") == ("conic", 2)
    assert parse_property("connected") == ("connected", None)
    for bad in ("foo:1", "ample:0", "conic", "connected:1"):
        with pytest.raises(InvalidParam):
            parse_property(bad)


def test_wilson_examples():
    assert wilson_interval(0, 10)[0] == 0.0
    assert wilson_interval(10, 10)[1] == 1.0
    lo, hi = wilson_interval(5, 10)
    assert lo < 0.5 < hi
    assert lo == pytest.approx(0.236593090512564, abs=1e-6)
    assert hi == pytest.approx(0.763406909487436, abs=1e-6)
    with pytest.raises(InvalidParam):
        wilson_interval(0, 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 500), st.data())
def test_wilson_against_statsmodels(n, data):
    k = data.draw(st.integers(0, n))
    lo, hi = wilson_interval(k, n)
    ref = proportion_confint(k, n, alpha=0.05, method="wilson")
    assert lo == pytest.approx(ref[0], abs=1e-9) and hi == pytest.approx(ref[1], abs=1e-9)
    assert lo <= k / n <= hi


def test_edge_count_statistics():
    cfg = MedialRegimeConfig(20, 1, Constant(0.5), 11)
    observed = expected = var = 0.0
    for i in range(500):
        K = medial_sample(cfg, i)
        v = len(K.vertices)
        pairs = v * (v - 1) // 2
        observed += len(K.simplices_of_dim(1))
        expected += 0.5 * pairs
        var += 0.25 * pairs
    assert abs(observed - expected) <= 3 * math.sqrt(var)


def test_simplex_marginals_with_forced_boundary():
    # with vertices and edges forced present, triangles appear with probability c
    cfg = MedialRegimeConfig(8, 2, PerDimension((1.0, 1.0, 0.3)), 3, allow_degenerate=True)
    hits = total = 0
    for i in range(300):
        K = medial_sample(cfg, i)
        hits += len(K.simplices_of_dim(2))
        total += math.comb(8, 3)
    sigma = math.sqrt(total * 0.3 * 0.7)
    assert abs(hits - 0.3 * total) <= 3 * sigma


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 63), st.floats(0.05, 0.9), st.floats(0.05, 0.9), st.integers(0, 20))
def test_coupling_monotonicity(seed, c1, c2, index):
    lo, hi = sorted((c1, c2))
    a = medial_sample(MedialRegimeConfig(9, 3, Constant(lo), seed), index)
    b = medial_sample(MedialRegimeConfig(9, 3, Constant(hi), seed), index)
    assert a <= b


def test_sample_reproducible():
    cfg = MedialRegimeConfig(15, 2, Hashed(0.3, 0.7), 99)
    assert canonical_text(medial_sample(cfg, 4)) == canonical_text(medial_sample(cfg, 4))
    assert medial_sample(cfg, 4) != medial_sample(cfg, 5)


def test_run_experiment_rows():
    cfg = MedialRegimeConfig(10, 2, Constant(0.5), 42)
    assert run_experiment(cfg, [10], ["connected"], 0) == []
    rows = run_experiment(cfg, [8, 6], ["connected", "d-connected:1"], 20)
    assert [(r.property, r.n) for r in rows] == [("connected", 6), ("connected", 8),
                                                 ("d-connected", 6), ("d-connected", 8)]
    for r in rows:
        assert r.ci_low <= r.estimate <= r.ci_high
        assert r.max_dim == 2
        assert r.estimate <= r.optimistic
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == "seed,n,samples,property,param,estimate,ci_low,ci_high,unknown"
    assert text.splitlines()[1].startswith("42,6,20,connected,,")


def test_unknown_is_reported_not_folded():
    from amplekit.constructions import csaszar
    assert evaluate(csaszar(), ("d-connected", 1)) == "failure"
    from amplekit.constructions import cross_polytope_sphere
    assert evaluate(cross_polytope_sphere(2), ("d-connected", 1)) == "success"


def test_conic2_regression_pin():
    cfg = MedialRegimeConfig(30, 2, Constant(0.5), 42)
    (row,) = run_experiment(cfg, [30], ["conic:2"], 200)
    assert round(row.estimate * 200) == PINNED_CONIC2_N30
    assert row.ci_low < row.estimate < row.ci_high
