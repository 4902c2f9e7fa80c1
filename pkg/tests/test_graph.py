import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pierce_gldim import generators
from pierce_gldim.algebra import Quiver, pierce_component
from pierce_gldim.graph import (
    GraphError,
    PierceGraph,
    build_graph,
    connected_components,
    find_alternating_cycle,
    has_alternating_cycle,
    has_oriented_cycle,
    is_central_sum,
    quotient_graph,
    to_dot,
    vertex_role,
)

GOLDEN = Path(__file__).parent / "golden"


def graph(vertices, edges):
    return PierceGraph(tuple(vertices), frozenset(edges))


def test_semisimple_graph_has_no_edges():
    g = build_graph(generators.semisimple(2))
    assert g.vertices == ("e0", "e1")
    assert g.edges == frozenset()


def test_example2_graph_is_two_cycle(ex2):
    assert build_graph(ex2).edges == {("e", "f"), ("f", "e")}


def test_anick_green_graph(anick_green):
    g = build_graph(anick_green)
    arrows = {("f0", "e1"), ("g0", "e1"), ("e1", "f1"), ("e1", "g1"), ("f1", "e2"), ("g1", "e2")}
    composites = {("f0", "g1"), ("g0", "f1"), ("e1", "e2")}
    assert g.edges == arrows | composites


@pytest.mark.parametrize("name,make", [
    ("k2", lambda: generators.semisimple(2)),
    ("example2", generators.example2),
    ("anick_green", generators.anick_green),
])
def test_dot_golden(name, make):
    assert to_dot(build_graph(make())) == (GOLDEN / f"{name}.dot").read_text()


def test_dot_colors(ex2):
    text = to_dot(build_graph(ex2), ["e"])
    assert '"e" [color=red];' in text and '"f" [color=blue];' in text
    q = quotient_graph(build_graph(ex2), ["e"])
    assert '"U" [color=red];' in to_dot(q)


def test_components():
    assert connected_components(build_graph(generators.semisimple(3))) == [["e0"], ["e1"], ["e2"]]
    assert connected_components(build_graph(generators.example2())) == [["e", "f"]]
    a = generators.product(generators.a2(), generators.point(name="p"))
    comps = connected_components(build_graph(a), a)
    assert comps == [["e", "f"], ["p"]]
    assert is_central_sum(a, ["e", "f"])
    assert not is_central_sum(a, ["e"])


def test_quotient_of_path():
    g = graph("efg", {("e", "f"), ("f", "g")})
    q = quotient_graph(g, {"e", "f"})
    assert q.vertices == ("U", "g")
    assert q.edges == {("U", "g")}
    assert vertex_role(q) == "source"


def test_quotient_of_two_cycle(ex2):
    q = quotient_graph(build_graph(ex2), {"e"})
    assert q.edges == {("U", "f"), ("f", "U")}
    assert vertex_role(q) == "neither"


def test_quotient_at_source_of_a2():
    q = quotient_graph(build_graph(generators.a2()), {"e"})
    assert q.edges == {("U", "f")}
    assert vertex_role(q) == "source"
    q2 = quotient_graph(build_graph(generators.a2()), {"f"})
    assert vertex_role(q2) == "sink"


def test_quotient_rejects_improper_subsets(ex2):
    g = build_graph(ex2)
    for bad in (set(), {"e", "f"}, {"z"}):
        with pytest.raises(GraphError):
            quotient_graph(g, bad)


def test_quotient_name_clash():
    g = graph(["U", "V"], {("U", "V")})
    q = quotient_graph(g, {"U"})
    assert q.node == "{U}"


def test_cycles_on_acyclic_graph():
    g = build_graph(generators.anick_green())
    assert not has_oriented_cycle(g)
    for k in range(1, 6):
        assert not has_alternating_cycle(g, g.vertices[:k])


def test_cycles_example2(ex2):
    g = build_graph(ex2)
    assert has_oriented_cycle(g)
    assert has_alternating_cycle(g, {"e"})


def test_alternating_four_cycle():
    g = graph("abcd", {("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")})
    assert has_alternating_cycle(g, {"a", "c"})
    assert not has_alternating_cycle(g, {"a", "b"})
    cyc = find_alternating_cycle(g, {"a", "c"})
    assert len(set(cyc)) == 4


def algebras():
    return st.integers(0, 100_000).map(
        lambda s: generators.random_small_algebra(random.Random(s), max_dim=10) if s % 2
        else generators.random_nil_quotient(random.Random(s), 5, 6, 2))


@given(algebras())
def test_edges_match_components(a):
    g = build_graph(a)
    for e in a.vertices:
        for f in a.vertices:
            if e != f:
                assert ((e, f) in g.edges) == bool(pierce_component(a, e, f))
    assert all(s != t for s, t in g.edges)


@given(algebras())
def test_quiver_arrows_are_edges(a):
    q: Quiver = a.meta["quiver"]
    g = build_graph(a)
    for _lab, s, t in q.arrows:
        if s != t and pierce_component(a, s, t):
            assert (s, t) in g.edges
    if not q.has_oriented_cycle():
        assert not has_oriented_cycle(g)


@given(algebras(), st.data())
def test_quotient_never_gains_edges(a, data):
    g = build_graph(a)
    if len(g.vertices) < 2:
        return
    k = data.draw(st.integers(1, len(g.vertices) - 1))
    u = data.draw(st.permutations(list(g.vertices)))[:k]
    q = quotient_graph(g, u)
    assert len(q.edges) <= len(g.edges)
    assert all(s != t for s, t in q.edges)
    assert q.vertices[0] == q.node


@given(algebras())
def test_components_are_central(a):
    g = build_graph(a)
    comps = connected_components(g, a)
    assert sorted(v for c in comps for v in c) == sorted(a.vertices)
    for c in comps:
        assert is_central_sum(a, c)
