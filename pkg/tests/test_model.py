import pytest
from hypothesis import given, settings

from accat.errors import NonCommutingSquare, StageBudgetExceeded
from accat.fincat import (FinFunctor, are_isomorphic, arrow_category, chain_category,
                          constant_functor, discrete_category, empty_category,
                          identity_functor, is_acyclic, is_isomorphism, terminal_category)
from accat.model import (LiftingSquare, attach_cells, failing_squares, find_lift, has_rlp,
                         iter_squares, pushout_of_cells, smallness_witness, soa_factorize)
from accat.simplicial import csd2, standard_simplex, thol_generator

from strategies import sieve_spans


def to_point(C):
    return constant_functor(C, terminal_category(), "*")


def from_empty(C):
    return FinFunctor(empty_category(), C, {})


# -- lifts -------------------------------------------------------------------------------


def test_lift_through_isomorphic_left_leg():
    C = arrow_category()
    f = identity_functor(C)
    g = to_point(chain_category(3))
    top = FinFunctor(C, chain_category(3), {"a": "0", "b": "2"}, {"f": "0<2"})
    sq = LiftingSquare(f, g, top, to_point(C))
    h = find_lift(sq)
    assert h == top


def test_lift_through_isomorphic_right_leg():
    f = from_empty(arrow_category())
    g = identity_functor(arrow_category())
    bottom = identity_functor(arrow_category())
    sq = LiftingSquare(f, g, from_empty(arrow_category()), bottom)
    assert find_lift(sq) == bottom


def test_first_of_two_lifts():
    f = from_empty(terminal_category())
    g = to_point(discrete_category(["u0", "u1"]))
    sq = LiftingSquare(f, g, from_empty(discrete_category(["u0", "u1"])),
                       identity_functor(terminal_category()))
    h = find_lift(sq)
    assert h and h.obj("*") == "u0"
    assert sq.is_lift(h)


def test_no_lift():
    # the two ends of an arrow cannot both lift into a discrete category
    two = discrete_category(["a", "b"])
    f = FinFunctor(two, arrow_category(), {"a": "a", "b": "b"})
    g = to_point(two)
    sq = LiftingSquare(f, g, identity_functor(two), to_point(arrow_category()))
    assert not find_lift(sq)


def test_non_commuting_square():
    f = from_empty(terminal_category())
    g = identity_functor(arrow_category())
    bottom = FinFunctor(terminal_category(), arrow_category(), {"*": "a"})
    sq = LiftingSquare(f, g, from_empty(arrow_category()), bottom)
    assert find_lift(sq)
    wrong = LiftingSquare(f, g, from_empty(terminal_category()), bottom)
    with pytest.raises(NonCommutingSquare):
        find_lift(wrong)


# -- lifting properties -----------------------------------------------------------------


@pytest.mark.parametrize("gens", ["I", "J"])
def test_isomorphisms_have_every_rlp(gens):
    assert has_rlp(identity_functor(arrow_category()), gens, 2)


def test_lifting_against_the_point_generator_needs_surjectivity():
    # I at dimension 0 is the empty category into the point: lifts need a preimage
    g = FinFunctor(terminal_category(), discrete_category(["x", "y"]), {"*": "x"})
    verdict = has_rlp(g, "I", 0)
    assert not verdict and verdict.generator == "I0"
    assert verdict.counterexample.commutes()
    assert has_rlp(to_point(discrete_category(["x", "y"])), "I", 0)


def test_subdivided_interval_to_point_lifts_horns():
    g = to_point(csd2(standard_simplex(1)).as_category())
    assert has_rlp(g, "J", 1)


def test_squares_commute():
    j = thol_generator("J", 1, 0)
    g = to_point(chain_category(2))
    squares = list(iter_squares(j, g))
    assert squares and all(LiftingSquare(j, g, t, b).commutes() for t, b in squares)


# -- cell attachment -------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(sieve_spans(max_objects=3, max_morphisms=4))
def test_attach_cells_is_the_pushout(span):
    U = span.F.target
    cells = [(span.i, span.F), (span.i, span.F)]
    P, leg, cell_legs, crossing = attach_cells(U, cells, "c")
    Q, _ = pushout_of_cells(U, cells)
    assert are_isomorphic(P, Q)
    assert all(span.i.then(cl) == span.F.then(leg) for cl in cell_legs)


def test_attach_nothing():
    U = arrow_category()
    P, leg, cell_legs, crossing = attach_cells(U, [], "c")
    assert P == U and cell_legs == [] and crossing == {}


# -- small object argument ---------------------------------------------------------------


def test_factorization_of_a_map_with_the_rlp():
    f = to_point(csd2(standard_simplex(1)).as_category())
    record, q = soa_factorize(f, "J", 1)
    assert record.stages == [] and q == f


def test_factorization_of_empty_into_point():
    f = from_empty(terminal_category())
    record, q = soa_factorize(f, "I", 0)
    assert len(record.stages) == 1
    assert is_isomorphism(q)
    assert record.composite.then(q) == f


def test_folding_two_points_does_not_converge():
    f = to_point(discrete_category(["x", "y"]))
    with pytest.raises(StageBudgetExceeded) as info:
        soa_factorize(f, "I", 1, max_stages=3)
    record, q = info.value.record, info.value.q
    assert len(record.stages) == 3
    sizes = [len(C.objects) for C in record.categories()]
    assert sizes == sorted(sizes) and sizes[-1] > sizes[0]
    assert all(is_acyclic(C) for C in record.categories())
    assert record.composite.then(q) == f
    assert record.validate() == []
    # every stage still has squares without lifts
    assert failing_squares(q, "I", 1, limit=1)


# -- smallness ----------------------------------------------------------------------------


def test_constant_chain_is_bijective():
    C = arrow_category()
    X = chain_category(3)
    v = smallness_witness(C, [X, X, X], [identity_functor(X)] * 2)
    assert v and v.colimit_size == v.direct_size == 6


def test_chain_of_sieve_inclusions():
    X0, X1, X2 = terminal_category(), arrow_category(), chain_category(3)
    F0 = FinFunctor(X0, X1, {"*": "a"})
    F1 = FinFunctor(X1, X2, {"a": "0", "b": "1"}, {"f": "0<1"})
    v = smallness_witness(terminal_category(), [X0, X1, X2], [F0, F1])
    assert v and v.colimit_size == v.direct_size == 3


def test_chain_collapsing_objects():
    X0 = discrete_category(["a", "b"])
    v = smallness_witness(terminal_category(), [X0, terminal_category()], [to_point(X0)])
    assert v and v.colimit_size == 1
