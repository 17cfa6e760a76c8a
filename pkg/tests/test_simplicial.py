import warnings

import pytest
from hypothesis import given, settings

from accat.fincat import (FinCat, are_isomorphic, arrow_category, chain_category,
                          is_sieve, terminal_category)
from accat.simplicial import (Poset, SimplicialComplex, TruncationWarning, boundary,
                              complex_as_sset, count_maps_into_ex, csd2, enumerate_simplicial_maps,
                              ex_bounded, face_poset, generating_set, horn, nerve, order_complex,
                              sd, sset_maps_to_nerve, standard_simplex, tau1, thol_generator)

import oracles
from strategies import acyclic_categories, categories, complexes


def as_oracle_faces(K):
    return {tuple(sorted(int(v) for v in s)) for s in K.simplices}


# -- complexes ---------------------------------------------------------------------------


def test_closure_and_counts():
    K = SimplicialComplex("abc", [["a", "b", "c"]])
    assert K.f_vector() == [3, 3, 1]
    assert ("c", "a") in K
    assert K.maximal_simplices() == [("a", "b", "c")]
    assert K.euler_characteristic() == 1


def test_standard_pieces():
    assert boundary(0).simplices == ()
    assert boundary(2).f_vector() == [3, 3]
    assert horn(2, 1).f_vector() == [3, 2]
    assert horn(2, 1).is_subcomplex_of(standard_simplex(2))
    with pytest.raises(ValueError):
        horn(2, 3)


def test_bad_complexes():
    with pytest.raises(ValueError):
        SimplicialComplex("ab", [["a", "z"]])
    with pytest.raises(ValueError):
        SimplicialComplex("aa")


# -- posets, face posets, subdivision -----------------------------------------------------


def test_poset_validation():
    with pytest.raises(ValueError):
        Poset("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        Poset("abc", [("a", "b"), ("b", "c")])   # not transitive
    P = Poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert P.leq("a", "c") and not P.leq("c", "a")
    assert are_isomorphic(P.as_category(), chain_category(3))
    assert are_isomorphic(Poset.from_category(chain_category(3)).as_category(), chain_category(3))


def test_from_category_rejects_parallel_arrows():
    with pytest.raises(ValueError):
        Poset.from_category(FinCat("ab", [("f", "a", "b"), ("g", "a", "b")]))


def test_face_posets():
    assert len(face_poset(standard_simplex(0))) == 1
    P = face_poset(standard_simplex(1))
    assert len(P) == 3
    top = "{0,1}"
    assert P.below(top) == ["{0}", "{1}", top]
    assert len(face_poset(boundary(2))) == 6


def test_subdivision_counts():
    assert sd(standard_simplex(0)).f_vector() == [1]
    assert sd(standard_simplex(1)).f_vector() == [3, 2]
    # chain enumeration oracle on the 7-element face poset
    assert sd(standard_simplex(2)).f_vector() == [7, 12, 6]
    assert sd(standard_simplex(3)).f_vector() == [15, 50, 60, 24]


@pytest.mark.parametrize("n, size", [(0, 1), (1, 5), (2, 25), (3, 149)])
def test_csd2_sizes(n, size):
    assert len(csd2(standard_simplex(n))) == size
    assert size == len(oracles.subdivide(oracles.closure([tuple(range(n + 1))])))


@settings(max_examples=40, deadline=None)
@given(complexes())
def test_subdivision_matches_chain_oracle(K):
    maximal = [tuple(int(v) for v in s) for s in K.maximal_simplices()]
    assert sd(K).f_vector() == oracles.simplex_counts(oracles.subdivide(oracles.closure(maximal)))
    assert sd(K).euler_characteristic() == K.euler_characteristic()


def test_order_complex_of_chain_is_simplex():
    P = Poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert order_complex(P).f_vector() == [3, 3, 1]


# -- nerves --------------------------------------------------------------------------------


def test_small_nerves():
    X = nerve(terminal_category())
    assert X.count(0) == 1 and X.count(1) == 0
    X = nerve(arrow_category())
    assert (X.count(0), X.count(1), X.count(2)) == (2, 1, 0)
    X = nerve(FinCat("ab", [("f", "a", "b"), ("g", "a", "b")]))
    assert (X.count(0), X.count(1)) == (2, 2)
    assert X.complete


def test_nerve_of_chain_is_simplex():
    X = nerve(chain_category(4))
    assert [X.count(n) for n in range(4)] == [4, 6, 4, 1]


def test_nerve_of_non_acyclic_category_is_truncated():
    C = FinCat("a", [("e", "a", "a")], [("e", "e", "e")])
    with pytest.warns(TruncationWarning):
        X = nerve(C)
    assert not X.complete and X.max_dim == 2


@settings(max_examples=40, deadline=None)
@given(acyclic_categories(max_objects=4, max_morphisms=6))
def test_nerve_face_identities(C):
    assert nerve(C).check_identities() == []


@settings(max_examples=40, deadline=None)
@given(categories(max_objects=3, max_morphisms=5))
def test_fundamental_category_of_nerve(C):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        assert are_isomorphic(tau1(nerve(C, max_dim=2)), C)


def test_fundamental_categories_of_complexes():
    assert are_isomorphic(tau1(standard_simplex(2)), chain_category(3))
    T = tau1(boundary(2))
    assert len(T.hom("0", "2")) == 2
    assert are_isomorphic(tau1(nerve(Poset("ab", [("a", "b")]).as_category())), arrow_category())


def test_complex_as_simplicial_set():
    X = complex_as_sset(boundary(3))
    assert X.check_identities() == []
    assert [X.count(n) for n in range(3)] == [4, 6, 4]


# -- generators ------------------------------------------------------------------------


def test_boundary_generator_in_dimension_zero():
    F = thol_generator("I", 0)
    assert F.source.objects == () and len(F.target.objects) == 1


def test_boundary_generator_in_dimension_one():
    F = thol_generator("I", 1)
    assert F.source.objects and len(F.source.objects) == 2 and not F.source.morphisms
    assert len(F.target.objects) == 5
    # faces of sd(Delta^1): three vertices below two edges, a zigzag
    assert len(F.target.morphisms) == 4


def test_generator_sizes():
    assert len(thol_generator("I", 2).target.objects) == 25
    assert len(thol_generator("I", 2).source.objects) == 12
    assert len(thol_generator("J", 2, 1).source.objects) == \
        len(oracles.subdivide(oracles.closure([(0, 1), (1, 2)]))) == 9


def test_horn_generators_need_positive_dimension():
    with pytest.raises(ValueError):
        thol_generator("J", 0, 0)
    with pytest.raises(ValueError):
        thol_generator("J", 2)
    with pytest.raises(ValueError):
        thol_generator("K", 1)


def test_generating_set_labels():
    assert [lab for lab, _ in generating_set("I", 2)] == ["I0", "I1", "I2"]
    assert [lab for lab, _ in generating_set("J", 2)] == ["J1,0", "J1,1", "J2,0", "J2,1", "J2,2"]
    assert all(is_sieve(F) for _, F in generating_set("J", 2))


# -- maps and Ex ------------------------------------------------------------------------


def test_simplicial_map_counts():
    X = boundary(2)
    assert len(enumerate_simplicial_maps(standard_simplex(0), X)) == 3
    assert len(enumerate_simplicial_maps(standard_simplex(1), standard_simplex(0))) == 1
    assert len(enumerate_simplicial_maps(standard_simplex(1), standard_simplex(1))) == 4
    assert len(enumerate_simplicial_maps(standard_simplex(1), standard_simplex(1), ordered=True)) == 3


def test_ex_of_point_and_vertices():
    for n in range(4):
        assert ex_bounded(standard_simplex(0), n)[0] == 1
    assert ex_bounded(boundary(2), 0)[0] == 3
    with pytest.raises(ValueError):
        ex_bounded(standard_simplex(0), 4)


@pytest.mark.parametrize("X", [standard_simplex(1), boundary(2), horn(2, 0)])
def test_sd_ex_adjunction_on_an_edge(X):
    K = standard_simplex(1)
    assert count_maps_into_ex(K, X) == len(enumerate_simplicial_maps(sd(K), X, ordered=True))


def test_sd_ex_adjunction_on_two_edges():
    K = horn(2, 1)
    X = standard_simplex(1)
    assert count_maps_into_ex(K, X) == len(enumerate_simplicial_maps(sd(K), X, ordered=True))


def test_maps_into_nerve_match_functors():
    # ordered complex Delta^2 is the nerve of [2]; maps into N(C) are functors [2] -> C
    from accat.fincat import count_functors
    C = FinCat("ab", [("f", "a", "b"), ("g", "a", "b")])
    assert len(sset_maps_to_nerve(standard_simplex(2), C)) == count_functors(chain_category(3), C)
    assert len(sset_maps_to_nerve(standard_simplex(1), C)) == count_functors(chain_category(2), C)
