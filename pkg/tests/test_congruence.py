import random

import pytest
from hypothesis import given, settings

from accat.congruence import (DiagramInCat, RelationPair, coequalizer, coproduct_by_pushouts,
                              coproduct_of_maps, filtered_colimit, finite_colimit, is_filtered,
                              present_category, pushout, quotient, quotient_universal_check,
                              saturate, sieve_pushout_direct)
from accat.errors import (ConditionsViolated, GrowthExceeded, NotFiltered,
                          PreconditionViolated)
from accat.fincat import (FinCat, FinFunctor, are_isomorphic, arrow_category, chain_category,
                          coproduct, discrete_category, empty_category, enumerate_functors,
                          identity_functor, is_acyclic, terminal_category)
from accat.generate import random_filtered_diagram, random_map_family, random_sieve_span

import oracles
from strategies import categories, seeds, sieve_spans


def parallel_pair():
    return FinCat("ab", [("f", "a", "b"), ("g", "a", "b")])


def two_arrows():
    return coproduct([arrow_category("a", "b", "f"), arrow_category("c", "d", "h")])[0]


# -- saturation -----------------------------------------------------------------------


def test_empty_relation_is_discrete():
    C = two_arrows()
    P = saturate(C)
    assert len(P.classes) == len(C.arrows)
    assert all(len(m) == 1 for m in P.object_classes.values())


def test_identifying_ends_of_an_arrow_is_infinite():
    with pytest.raises(GrowthExceeded):
        quotient(arrow_category(), RelationPair([("a", "b")]), cap=50)


def test_span_without_relations_is_unchanged():
    C = FinCat("abc", [("f", "a", "b"), ("g", "a", "c")])
    Q, q = quotient(C)
    assert are_isomorphic(Q, C)
    assert are_isomorphic(quotient(C, RelationPair())[0], C)


def test_gluing_parallel_arrows():
    Q, q = quotient(parallel_pair(), RelationPair(sequence_pairs=[(("f",), ("g",))]))
    assert are_isomorphic(Q, arrow_category())
    assert q.mor("f") == q.mor("g")


def test_gluing_two_arrows_end_to_end():
    # oracle: the new composite h after f is the only extra class
    Q, q = quotient(two_arrows(), RelationPair([("0.b", "1.c")]))
    assert len(Q.objects) == 3
    assert len(Q.morphisms) == 3
    assert are_isomorphic(Q, chain_category(3))


def test_relation_validation():
    with pytest.raises(ValueError):
        RelationPair([("a", "zz")]).validate(arrow_category())
    with pytest.raises(ValueError):
        RelationPair(sequence_pairs=[((), ("f",))]).validate(arrow_category())


@settings(max_examples=40, deadline=None)
@given(categories(max_objects=3, max_morphisms=4), seeds)
def test_quotient_represents_respecting_functors(C, seed):
    """Functors out of C/~ correspond to functors out of C that respect R."""
    rng = random.Random(seed)
    objs, arrows = list(C.objects), list(C.morphisms)
    obj_pairs = [tuple(rng.sample(objs, 2))] if len(objs) > 1 and rng.random() < 0.4 else []
    seq_pairs = []
    if arrows and rng.random() < 0.7:
        f = rng.choice(arrows)
        g = rng.choice([m for m in arrows if C.src(m) == C.src(f) and C.tgt(m) == C.tgt(f)]
                       + [C.identity(C.src(f))] * (C.src(f) == C.tgt(f)))
        seq_pairs.append(((f,), (g,)))
    try:
        Q, q = quotient(C, RelationPair(obj_pairs, seq_pairs), cap=60)
    except GrowthExceeded:
        return
    D = chain_category(2)
    expected = sum(1 for om, mm in oracles.brute_functors(C, D)
                   if oracles.respects(D, om, mm, obj_pairs, seq_pairs))
    assert len(enumerate_functors(Q, D)) == expected


# -- universal property ---------------------------------------------------------------


def test_universal_property_trivial_relation():
    C = arrow_category()
    F = identity_functor(C)
    G = quotient_universal_check(C, RelationPair(), F)
    Q, q = quotient(C)
    assert q.then(G) == F


def test_universal_property_parallel_pair():
    C = parallel_pair()
    R = RelationPair(sequence_pairs=[(("f",), ("g",))])
    F = FinFunctor(C, arrow_category(), {"a": "a", "b": "b"}, {"f": "f", "g": "f"})
    G = quotient_universal_check(C, R, F)
    Q, q = quotient(C, R)
    assert q.then(G) == F
    # uniqueness: exactly one functor from the quotient factors F
    assert sum(q.then(H) == F for H in enumerate_functors(Q, F.target)) == 1


def test_universal_property_needs_the_conditions():
    C = discrete_category("xy")
    F = identity_functor(C)
    with pytest.raises(ConditionsViolated):
        quotient_universal_check(C, RelationPair([("x", "y")]), F)


# -- coequalizers and pushouts --------------------------------------------------------


def test_coequalizer_of_equal_functors():
    F = identity_functor(arrow_category())
    Q, q = coequalizer(F, F)
    assert are_isomorphic(Q, arrow_category())


def test_coequalizer_of_arrow_ends_is_infinite():
    pt, A = terminal_category(), arrow_category()
    F = FinFunctor(pt, A, {"*": "a"})
    G = FinFunctor(pt, A, {"*": "b"})
    with pytest.raises(GrowthExceeded):
        coequalizer(F, G, cap=50)


def test_coequalizer_glues_two_arrows():
    D = two_arrows()
    X = discrete_category("xy")
    F = FinFunctor(X, D, {"x": "0.b", "y": "1.d"})
    G = FinFunctor(X, D, {"x": "1.c", "y": "1.d"})
    Q, _ = coequalizer(F, G)
    assert are_isomorphic(Q, chain_category(3))


def test_pushout_over_empty_is_coproduct():
    A = empty_category()
    B, C = arrow_category(), chain_category(3)
    i = FinFunctor(A, B, {})
    F = FinFunctor(A, C, {})
    P, _, _ = pushout(i, F)
    assert are_isomorphic(P, coproduct([B, C])[0])
    assert are_isomorphic(sieve_pushout_direct(i, F), P)


def test_pushout_of_two_arrows_from_a_point():
    A = FinCat("a")
    B, C = arrow_category("a", "b", "f"), arrow_category("a", "c", "g")
    i = B.full_subcategory(["a"])[1]
    F = FinFunctor(A, C, {"a": "a"})
    P, leg_b, leg_c = pushout(i, F)
    assert len(P.objects) == 3 and len(P.morphisms) == 2
    apex = leg_c.obj("a")
    assert leg_b.obj("a") == apex
    assert {P.src(m) for m in P.morphisms} == {apex}
    assert are_isomorphic(sieve_pushout_direct(i, F), P)


def test_pushout_along_identity():
    C = chain_category(3)
    A = FinCat("a")
    i = identity_functor(A)
    F = FinFunctor(A, C, {"a": "1"})
    P, _, _ = pushout(i, F)
    assert are_isomorphic(P, C)
    assert are_isomorphic(sieve_pushout_direct(i, F), C)


def test_direct_pushout_rejects_non_sieve():
    A = FinCat("b")
    i = arrow_category().full_subcategory(["b"])[1]
    with pytest.raises(PreconditionViolated):
        sieve_pushout_direct(i, identity_functor(A))


def test_empty_sieve_span_gives_coproduct():
    span = random_sieve_span(random.Random(3), 4, 6, empty=True)
    P, _, _ = pushout(span.i, span.F)
    assert are_isomorphic(P, coproduct([span.i.target, span.F.target])[0])


@settings(max_examples=50, deadline=None)
@given(sieve_spans())
def test_sieve_pushout_is_acyclic_and_matches_normal_form(span):
    P, leg_b, leg_c = pushout(span.i, span.F)
    assert is_acyclic(P)
    assert are_isomorphic(P, sieve_pushout_direct(span.i, span.F))
    assert leg_c.is_injective_on_objects() and leg_c.is_full() and leg_c.is_faithful()
    assert span.i.then(leg_b) == span.F.then(leg_c)


# -- colimits ----------------------------------------------------------------------------


def test_colimit_of_one_object_index():
    C = chain_category(3)
    D = DiagramInCat(terminal_category(), {"*": C}, {})
    L, cocone = finite_colimit(D)
    assert are_isomorphic(L, C)


def test_colimit_of_discrete_index_is_coproduct():
    B, C = arrow_category(), chain_category(3)
    D = DiagramInCat(discrete_category("xy"), {"x": B, "y": C}, {})
    L, _ = finite_colimit(D)
    assert are_isomorphic(L, coproduct([B, C])[0])


@settings(max_examples=25, deadline=None)
@given(sieve_spans(max_objects=3, max_morphisms=4))
def test_span_colimit_agrees_with_pushout(span):
    I = FinCat(["A", "B", "C"], [("i", "A", "B"), ("F", "A", "C")])
    D = DiagramInCat(I, {"A": span.i.source, "B": span.i.target, "C": span.F.target},
                     {"i": span.i, "F": span.F})
    D.validate()
    L, cocone = finite_colimit(D)
    P, _, _ = pushout(span.i, span.F)
    assert are_isomorphic(L, P)


def test_filtered_indices():
    assert is_filtered(terminal_category())
    assert not is_filtered(discrete_category("ab"))
    assert is_filtered(chain_category(3))
    assert not is_filtered(parallel_pair())


def test_filtered_colimit_rejects_unfiltered_index():
    D = DiagramInCat(discrete_category("xy"), {"x": FinCat("a"), "y": FinCat("a")}, {})
    with pytest.raises(NotFiltered):
        filtered_colimit(D)


def test_filtered_colimit_over_chain_is_top_node():
    D = random_filtered_diagram(random.Random(5), max_index=3, chain=True)
    assert is_filtered(D.index)
    D.validate()
    top = D.index.objects[-1]
    L, cocone = filtered_colimit(D)
    assert are_isomorphic(L, D.nodes[top])


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_filtered_colimit_matches_finite_colimit(seed):
    D = random_filtered_diagram(random.Random(seed), max_index=4)
    L, cocone = filtered_colimit(D)
    M, _ = finite_colimit(D)
    assert is_acyclic(L)
    assert are_isomorphic(L, M)
    for u in D.index.morphisms:
        assert D.edges[u].then(cocone[D.index.tgt(u)]) == cocone[D.index.src(u)]


# -- presentations and coproducts of maps ------------------------------------------------


def test_free_category_on_triangle():
    C, gen = present_category("012", [("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")], [])
    assert len(C.hom("0", "2")) == 2


def test_presentation_with_commuting_triangle():
    C, gen = present_category("012", [("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")],
                              [("0", ("a", "b"), ("c",))])
    assert are_isomorphic(C, chain_category(3))


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_coproduct_of_maps_by_pushouts(seed):
    maps = random_map_family(random.Random(seed))
    Z, comp = coproduct_by_pushouts(maps)
    direct = coproduct_of_maps(maps)
    assert are_isomorphic(Z, direct.target)
    assert comp.source == direct.source


@pytest.mark.parametrize("n", [0, 1, 3])
def test_coproduct_by_pushouts_sizes(n):
    maps = [FinFunctor(FinCat("a"), arrow_category(), {"a": "a"})] * n
    Z, _ = coproduct_by_pushouts(maps)
    assert len(Z.objects) == 2 * n and len(Z.morphisms) == n


def test_gluing_walking_isomorphism_ends_is_infinite():
    # f becomes an invertible endomorphism with no relation on its powers
    C = FinCat("ab", [("f", "a", "b"), ("g", "b", "a")],
               [("f", "g", "id:a"), ("g", "f", "id:b")])
    with pytest.raises(GrowthExceeded):
        quotient(C, RelationPair([("a", "b")]), cap=20)
    Q, _ = quotient(C, RelationPair([("a", "b")], [(("f",), ("id:a",))]), cap=20)
    assert are_isomorphic(Q, terminal_category())
