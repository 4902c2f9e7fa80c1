import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pierce_gldim import generators
from pierce_gldim.algebra import corner_algebra
from pierce_gldim.engine import (
    INF,
    INFINITE,
    AnalyzeConfig,
    Bound,
    EngineError,
    analyze,
    classify_nonrecursive,
    corner_gldim_terminal,
    flat_lower_bound,
    join_max,
    meet,
    morita_reduce,
    no_cycle_bounds,
    smear_test,
    source_sink_bounds,
)
from pierce_gldim.modules import ResourceLimit, gldim_oracle

# oracle values computed by minimal projective resolutions of the simples
ORACLE = {
    "anick_green": 2,
    "ladder1": 2,
    "ladder2": 3,
    "a2": 1,
    "k2": 0,
    "m2": 0,
    "example3": 2,
    "incidence_chain3": 1,
    "incidence_diamond": 2,
}


def test_bound_invariants():
    with pytest.raises(EngineError):
        Bound(2, 1)
    assert Bound(INF, INF).infinite
    assert Bound.exact(3).finite and Bound.exact(3).decided
    assert not Bound(0, None).decided
    assert Bound(1, 3).contains(2) and not Bound(1, 3).contains(4)
    for b in (Bound(0, 1), Bound(2, None), INFINITE):
        assert Bound.from_json(json.loads(json.dumps(b.to_json()))) == b


def test_source_sink_examples():
    assert source_sink_bounds(Bound.exact(0), Bound.exact(0), False) == Bound(0, 1)
    assert source_sink_bounds(Bound.exact(1), Bound(2, 4), False) == Bound(2, 6)
    assert source_sink_bounds(INFINITE, Bound.exact(0), False) == INFINITE
    assert source_sink_bounds(Bound.exact(0), INFINITE, True) == INFINITE
    assert source_sink_bounds(Bound.exact(2), Bound.exact(0), True) == Bound(2, 2)
    assert source_sink_bounds(Bound(0, None), Bound.exact(1), False) == Bound(1, None)


def finite_bounds():
    return st.tuples(st.integers(0, 5), st.integers(0, 5)).map(lambda t: Bound(min(t), max(t)))


def upper_le(x, y):
    return (x if x is not None else INF) <= (y if y is not None else INF)


@given(finite_bounds(), finite_bounds(), finite_bounds(), st.booleans())
def test_source_sink_monotone(b1, b2, b3, flat):
    big = Bound(b1.lower, max(b1.upper, b3.upper))
    small = source_sink_bounds(b1, b2, flat)
    wide = source_sink_bounds(big, b2, flat)
    assert small.lower <= wide.lower
    assert upper_le(small.upper, wide.upper)
    assert source_sink_bounds(INFINITE, b2, flat) == INFINITE


def test_join_and_meet():
    assert join_max([Bound(0, 1), Bound(2, 2)]) == Bound(2, 2)
    assert join_max([Bound(0, 1), Bound(0, None)]) == Bound(0, None)
    assert join_max([Bound(0, 1), INFINITE]) == INFINITE
    assert meet([Bound(0, 3), Bound(1, None), Bound(0, 2)]) == Bound(1, 2)


def test_terminal_corners(ex3):
    assert corner_gldim_terminal(generators.a2(), "e") == Bound.exact(0)
    assert corner_gldim_terminal(ex3, "e") == INFINITE
    assert corner_gldim_terminal(generators.dual_numbers(3), "e") == INFINITE
    assert not gldim_oracle(corner_algebra(ex3, ["e"]), 10).finite


def test_morita_reduce(ex2):
    assert morita_reduce(ex2, ex2.vertices) is ex2
    m2 = generators.matrix_algebra(2)
    c = morita_reduce(m2, ["e11"])
    assert c is not None and c.dim == 1
    assert morita_reduce(ex2, ["e"]) is None


def test_flat_lower_bound(ex3):
    free = generators.free_path_algebra(generators.Quiver(["a", "b"], [("p", "a", "b"), ("q", "a", "b")]))
    assert flat_lower_bound(free, ["a"], Bound.exact(0)) == Bound(0, None)
    assert flat_lower_bound(ex3, ["e"], INFINITE) is None
    assert flat_lower_bound(generators.matrix_algebra(2), ["e11"], Bound.exact(0)) == Bound(0, None)


def test_smear(ex2, ex3):
    assert smear_test(ex2, ["e"], Bound.exact(0), Bound.exact(0)) == "infinite"
    assert smear_test(ex3, ["e"], INFINITE, Bound.exact(0)) is None
    assert smear_test(generators.a2(), ["e"], Bound.exact(0), Bound.exact(0)) is None


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_gallery_bracketing(name):
    a = generators.gallery(name)
    report = analyze(a)
    n = ORACLE[name]
    assert report.overall.lower <= n
    assert report.overall.upper is None or n <= report.overall.upper
    assert gldim_oracle(a, 10).value == n


def test_example2_infinite_via_smear(ex2):
    report = analyze(ex2)
    assert report.verdict == "infinite"
    assert report.branch == "smear"
    assert report.witness_cycle == ["e", "f", "e"]


def test_example3_is_nonrecursive(ex3):
    report = analyze(ex3)
    assert report.verdict == "unknown"
    assert report.overall == Bound(0, None)
    assert report.nonrecursive == [["e", "f"]]
    assert not classify_nonrecursive(ex3).recursive


def test_anick_green_upper_three(anick_green):
    report = analyze(anick_green)
    assert report.overall == Bound(0, 3)
    assert report.branch == "source-sink"


def test_a2_bounds():
    assert analyze(generators.a2()).overall == Bound(0, 1)


def test_classification_examples(ex2):
    a2 = classify_nonrecursive(generators.a2())
    assert a2.recursive and a2.reason == "source or sink"
    m2 = classify_nonrecursive(generators.matrix_algebra(2))
    assert m2.recursive and m2.reason == "morita"
    assert classify_nonrecursive(ex2).recursive


def test_no_cycle_bounds():
    chain = generators.gallery("incidence_chain3")
    assert no_cycle_bounds(chain) == Bound(0, 2)
    assert no_cycle_bounds(chain, sharpen=True) == Bound(0, 1)
    assert no_cycle_bounds(generators.semisimple(3)) == Bound(0, 2)
    assert no_cycle_bounds(generators.anick_green()).upper == 5
    with pytest.raises(EngineError):
        no_cycle_bounds(generators.example2())


def test_flat_sharpening_undershoots_commutative_square():
    # both corners over U = {e0, f0} have global dimension 1 and A is flat over them,
    # yet the square itself has global dimension 2
    square = generators.ladder(1)
    assert gldim_oracle(square).value == 2
    sharp = analyze(square, AnalyzeConfig(sharpen_flat=True))
    assert sharp.overall.upper < 2
    assert analyze(square).overall.contains(2)


def test_subset_cap_is_recorded(anick_green):
    report = analyze(anick_green, AnalyzeConfig(max_subset_size=1))
    assert any(step["branch"] == "subset-cap" for step in report.trace)
    assert report.overall.contains(2)


def test_oracle_cross_check(anick_green):
    report = analyze(anick_green, AnalyzeConfig(oracle_cutoff=8))
    assert report.oracle == {"verdict": "finite", "value": 2, "cutoff": 8}
    assert report.consistent
    d = report.to_dict()
    assert d["schema"] == "pierce-gldim/bound-report/1"
    assert d["bound"] == [0, 3]
    assert "oracle: 2" in report.to_text()


def random_algebra(seed):
    rng = random.Random(seed)
    if seed % 2:
        return generators.random_small_algebra(rng, max_dim=10)
    return generators.random_nil_quotient(rng, 5, 6, 2)


@given(st.integers(0, 100_000))
def test_bounds_bracket_the_oracle(seed):
    a = random_algebra(seed)
    report = analyze(a)
    try:
        res = gldim_oracle(a, cutoff=8, max_dim=60)
    except ResourceLimit:
        return
    if res.finite:
        assert report.overall.contains(res.value)
        assert report.verdict != "infinite"
    else:
        assert report.overall.upper is None or report.overall.upper >= 8


@given(st.integers(0, 100_000), st.integers(0, 100_000))
def test_component_additivity(s1, s2):
    a, b = generators.relabel(random_algebra(s1), "A"), generators.relabel(random_algebra(s2), "B")
    joint = analyze(generators.product(a, b)).overall
    assert joint == join_max([analyze(a).overall, analyze(b).overall])


@given(st.integers(0, 100_000))
def test_analysis_is_deterministic(seed):
    a = random_algebra(seed)
    assert analyze(a).to_json() == analyze(random_algebra(seed)).to_json()


@given(st.integers(0, 100_000))
def test_morita_consistency(seed):
    b, u = generators.random_morita_pair(random.Random(seed), max_dim=8)
    c = morita_reduce(b, u)
    assert c is not None
    try:
        rb = gldim_oracle(b, 8, max_dim=80)
        rc = gldim_oracle(c, 8, max_dim=80)
    except ResourceLimit:
        return
    assert rb.finite == rc.finite
    if rb.finite:
        assert rb.value == rc.value
