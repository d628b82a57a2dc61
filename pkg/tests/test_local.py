from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from equivgal import linalg as la
from equivgal.cyclo import cyclotomic_field
from equivgal.lie import in_algebra
from equivgal.local import (
    check_eta_identity,
    check_toric_identity,
    hilbert90_eta,
    toric_equation,
    toric_field,
    toric_model,
    weyl_lift,
)
from equivgal.series import PuiseuxMatrix
from equivgal.weyl import cycle_type, orbit_generators, word_perm

SHAPES = [("A", 1), ("A", 2), ("A", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4)]


def identity(n, F):
    return PuiseuxMatrix.constant(la.identity(n, F.zero()))


def test_sl2_lift():
    w = weyl_lift("A", 1, (1,))
    assert w.g == ((0, 1), (-1, 0))
    assert w.order == 4 and w.torus_order == 2


def test_identity_word():
    w = weyl_lift("C", 3, ())
    assert w.order == 1
    F = toric_field(w)
    eta = hilbert90_eta(w, F)
    assert eta.eta == identity(6, F)


def test_sl3_coxeter_lift():
    w = weyl_lift("A", 2, (1, 2))
    assert la.det([[Fraction(x) for x in r] for r in w.g]) == 1
    assert 6 % w.order == 0


def test_e_types_have_no_lift():
    with pytest.raises(ValueError):
        weyl_lift("E", 6, (1,))


@pytest.mark.parametrize("kind,rank", SHAPES)
def test_lift_matches_permutation_action(kind, rank):
    # the lift acts on the weights of the standard representation like the Weyl element on the orbit
    _, gens = orbit_generators(kind, rank, 1)
    for word in [tuple(range(1, rank + 1)), tuple(range(1, rank)), (rank,), (1, rank, 1)]:
        w = weyl_lift(kind, rank, word)
        if kind == "A":
            assert cycle_type(w.perm) == cycle_type(word_perm(gens, word))
        else:
            # orbit of omega_1 is +-e_i, the same 2l points the signed permutation moves
            assert sorted(cycle_type(w.perm)) == sorted(cycle_type(word_perm(gens, word)))


def test_sl2_torus_equation():
    w = weyl_lift("A", 1, (1,))
    F = toric_field(w)
    at = toric_equation(w, F)
    o = F.one()
    assert set(at.terms) == {Fraction(-5, 2)}
    c = at.coefficient(Fraction(-5, 2))
    assert c in (((o, F.zero()), (F.zero(), -o)), ((-o, F.zero()), (F.zero(), o)))
    assert check_toric_identity(at, w, F)


def test_trivial_witness_model_is_the_torus_equation():
    w = weyl_lift("A", 2, ())
    F = toric_field(w)
    at = toric_equation(w, F)
    assert at.is_integral()
    assert toric_model(w, F) == at.truncated(0)


def test_sl3_coxeter_terms():
    w = weyl_lift("A", 2, (1, 2))
    F = toric_field(w)
    at = toric_equation(w, F)
    assert w.torus_order == 3
    assert check_toric_identity(at, w, F)


@st.composite
def witnesses(draw):
    kind, rank = draw(st.sampled_from(SHAPES))
    word = draw(st.lists(st.integers(1, rank), max_size=6))
    return weyl_lift(kind, rank, tuple(word))


@given(witnesses())
@settings(max_examples=40)
def test_eta_identity_and_inverse(w):
    F = toric_field(w)
    for balanced in (False, True):
        h = hilbert90_eta(w, F, balanced=balanced)
        assert check_eta_identity(h.eta, w.matrix(F), w.order, F)
        assert h.eta @ h.inverse == identity(w.n, F)


@given(witnesses())
@settings(max_examples=40)
def test_toric_identity_and_model(w):
    F = toric_field(w)
    at = toric_equation(w, F)
    assert check_toric_identity(at, w, F)
    for mat in at.terms.values():
        assert in_algebra(mat, w.algebra)
    model = toric_model(w, F)
    assert model.is_integral()
    for mat in model.terms.values():
        assert in_algebra(mat, w.algebra)


@pytest.mark.parametrize("kind,rank,word", [("A", 2, (1, 2)), ("C", 2, (1, 2)), ("D", 4, (1, 2, 3, 4))])
def test_glued_model_is_stable_under_g(kind, rank, word):
    # A_bar has integral exponents, so gamma acts trivially on it; the eta identity
    # then forces g^-1 (eta' eta^-1) g to be the same series as eta' eta^-1
    w = weyl_lift(kind, rank, word)
    F = toric_field(w)
    h = hilbert90_eta(w, F, balanced=True)
    log_deriv = h.eta.derivative() @ h.inverse
    assert log_deriv.is_integral()
    assert log_deriv.gamma(w.order, F) == log_deriv
