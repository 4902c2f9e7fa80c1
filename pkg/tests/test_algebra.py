import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pierce_gldim import generators
from pierce_gldim.algebra import (
    AlgebraError,
    InvalidRelation,
    NonBasicSemisimpleQuotient,
    NotApproximatelyIdempotent,
    NotFiniteDimensional,
    NotIdempotent,
    Quiver,
    Relation,
    UnsupportedField,
    all_subsets,
    blow_up,
    build_quotient_basis,
    conjugate_idempotents,
    corner_algebra,
    from_structure_constants,
    is_primitive,
    lift_idempotent,
    nilpotency_index,
    pierce_component,
    radical,
    random_unit,
    split_identity,
    to_raw_table,
    two_sided_span,
)
from pierce_gldim.graph import build_graph
from pierce_gldim.linalg import GF, QQ, spans_equal


def names(a):
    return [b.name for b in a.basis]


def test_single_vertex_is_the_ground_field():
    a = build_quotient_basis(Quiver(["e"], []), [], 1, QQ)
    assert a.dim == 1
    assert names(a) == ["e"]


def test_two_cycle_with_both_relations(ex2):
    assert ex2.dim == 4
    assert sorted(names(ex2)) == ["e", "f", "x", "y"]


def test_two_cycle_with_one_relation(ex3):
    assert ex3.dim == 5
    assert sorted(names(ex3)) == ["e", "f", "x", "y", "yx"]


def test_surviving_long_paths_raise():
    q = Quiver(["e", "f"], [("x", "e", "f"), ("y", "f", "e")])
    with pytest.raises(NotFiniteDimensional):
        build_quotient_basis(q, [], 3, QQ)


def test_non_parallel_relation_raises():
    q = Quiver(["e", "f", "g"], [("x", "e", "f"), ("y", "f", "g")])
    with pytest.raises(InvalidRelation):
        build_quotient_basis(q, [Relation.of((1, "x"), (1, "y"))], 2, QQ)


def test_bad_quiver_rejected():
    with pytest.raises(AlgebraError):
        Quiver(["e"], [("x", "e", "nowhere")])
    with pytest.raises(AlgebraError):
        Quiver(["e", "f"], [("x", "e", "f"), ("x", "f", "e")])


@pytest.mark.parametrize("name", generators.gallery_names())
def test_gallery_algebras_satisfy_invariants(name):
    generators.gallery(name).check()


def test_gallery_dimensions():
    dims = {n: generators.gallery(n).dim for n in ["example2", "example3", "anick_green",
                                                    "ladder1", "ladder2", "ladder3"]}
    assert dims == {"example2": 4, "example3": 5, "anick_green": 15,
                    "ladder1": 9, "ladder2": 19, "ladder3": 29}


def test_check_over_prime_field():
    generators.example3(GF(3)).check()
    generators.anick_green(GF(2)).check()


def test_pierce_components(ex2):
    assert pierce_component(ex2, "e", "f") == ["x"]
    assert pierce_component(ex2, "f", "e") == ["y"]
    for v in ex2.vertices:
        assert v in pierce_component(ex2, v, v)
    k2 = generators.semisimple(2)
    assert pierce_component(k2, "e0", "e1") == []
    with pytest.raises(AlgebraError):
        pierce_component(ex2, "e", "nope")


def test_corner_of_everything_is_itself(ex3):
    assert corner_algebra(ex3, ex3.vertices) is ex3


def test_corner_of_example3_is_dual_numbers(ex3):
    c = corner_algebra(ex3, ["e"])
    assert sorted(names(c)) == ["e", "yx"]
    yx = c.element(yx=1)
    assert c.mul(yx, yx) == c.zero()
    c.check()


def test_ladder_corner_is_five_dimensional_triangular():
    c = corner_algebra(generators.ladder(1), ["e0", "f0", "g0"])
    assert c.dim == 5
    c.check()


def test_two_sided_span_examples(ex2):
    full = two_sided_span(ex2, ex2.vertices)
    assert full.dim_h0 == 0 and full.dim == ex2.dim
    part = two_sided_span(ex2, ["e"])
    assert part.dim_h0 == 1
    want = [ex2.element(e=1), ex2.element(x=1), ex2.element(y=1)]
    assert spans_equal(part.basis, want, QQ, ex2.dim)
    m2 = generators.matrix_algebra(2)
    assert two_sided_span(m2, ["e11"]).dim_h0 == 0


def test_radical_of_semisimple_is_zero():
    assert radical(generators.semisimple(2)) == []


def test_radical_powers_of_example3(ex3):
    j = radical(ex3)
    want = [ex3.element(x=1), ex3.element(y=1), ex3.element(yx=1)]
    assert spans_equal(j, want, QQ, ex3.dim)
    j2 = [ex3.mul(u, v) for u in j for v in j]
    assert spans_equal([v for v in j2 if any(v)], [ex3.element(yx=1)], QQ, ex3.dim)
    assert nilpotency_index(ex3) == 3


def test_radical_of_upper_triangular_2():
    u = generators.upper_triangular(2)
    assert len(radical(u)) == 1
    assert nilpotency_index(u) == 2


def test_structure_constants_over_prime_field_unsupported():
    with pytest.raises(UnsupportedField):
        generators.matrix_algebra(2, GF(5))


def test_lift_idempotent_trivial_cases(ex3):
    j = radical(ex3)
    assert lift_idempotent(ex3, ex3.zero(), j) == ex3.zero()
    assert lift_idempotent(ex3, ex3.one(), j) == ex3.one()


def test_lift_idempotent_upper_triangular():
    u = generators.upper_triangular(2)
    rad = radical(u)
    e11 = u.idempotent(0)
    eps = [a + b for a, b in zip(e11, rad[0])]
    e = lift_idempotent(u, eps, rad)
    assert u.mul(e, e) == e
    assert spans_equal([[a - b for a, b in zip(e, e11)]] + rad, rad, QQ, u.dim)


def test_lift_idempotent_rejects_non_idempotent(ex3):
    with pytest.raises(NotApproximatelyIdempotent):
        lift_idempotent(ex3, [2 * c for c in ex3.idempotent("e")], radical(ex3))


def test_primitivity(ex3):
    for v in ex3.vertices:
        assert is_primitive(ex3, ex3.idempotent(v))
    k2 = generators.semisimple(2)
    assert not is_primitive(k2, k2.one())
    u3 = generators.upper_triangular(3)
    assert not is_primitive(u3, [a + b for a, b in zip(u3.idempotent(0), u3.idempotent(1))])
    with pytest.raises(NotIdempotent):
        is_primitive(ex3, ex3.element(x=1))


def test_split_identity():
    a = generators.anick_green()
    es = split_identity(a)
    assert len(es) == 6
    total = [sum(c) for c in zip(*es)]
    assert total == a.one()
    k2 = from_structure_constants(QQ, 2, {(0, 0): [(0, 1)], (1, 1): [(1, 1)]})
    assert sorted(map(tuple, k2.meta["change_of_basis"])) == [(0, 1), (1, 0)]
    assert len(generators.upper_triangular(3).vertices) == 3


def test_matrix_block_is_rejected_without_hints():
    m2 = generators.matrix_algebra(2)
    table = {k: list(v) for k, v in m2.meta["raw_table"].items()}
    with pytest.raises(NonBasicSemisimpleQuotient):
        from_structure_constants(QQ, 4, table, idempotents=[[1, 0, 0, 1]], vertex_names=["one"])


def test_opposite_swaps_components(ex3):
    op = ex3.opposite()
    assert op.opposite() is ex3
    assert pierce_component(op, "f", "e") == ["x"]
    op.check()


def test_blow_up_is_morita_instance():
    a = generators.example3()
    b = blow_up(a, {"e'": "e"})
    b.check()
    assert len(b.vertices) == 3
    assert two_sided_span(b, a.vertices).dim_h0 == 0
    assert corner_algebra(b, a.vertices).dim == a.dim


def test_all_subsets_order():
    assert list(all_subsets("abc")) == [("a",), ("b",), ("c",), ("a", "b"), ("a", "c"), ("b", "c")]
    assert len(list(all_subsets("abcd", proper=False, max_size=2))) == 10


def edge_set(a):
    return set(build_graph(a).edges)


@given(st.integers(0, 10_000), st.sampled_from(["example3", "a2", "incidence_chain3", "ladder1"]))
def test_conjugated_idempotents_give_same_graph(seed, name):
    a = generators.gallery(name)
    rng = random.Random(seed)
    g = random_unit(a, rng)
    conj = conjugate_idempotents(a, g)
    assert len(conj) == len(a.vertices)
    b = from_structure_constants(QQ, a.dim, to_raw_table(a), idempotents=conj,
                                 vertex_names=list(a.vertices))
    b.check(associativity=False)
    assert edge_set(b) == edge_set(a)
    for e in a.vertices:
        for f in a.vertices:
            assert len(b.component(e, f)) == len(a.component(e, f))


@given(st.integers(0, 10_000))
def test_random_structure_constants_recover_idempotent_count(seed):
    rng = random.Random(seed)
    a = generators.random_nil_quotient(rng, 4, 4, 2)
    b = from_structure_constants(QQ, a.dim, to_raw_table(a))
    assert len(b.vertices) == len(a.vertices)
    b.check()
