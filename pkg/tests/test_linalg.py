from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from equivgal import linalg as la
from equivgal.cyclo import cyclotomic_field


def matrices(n_max=4, square=True):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, n_max))
        c = r if square else draw(st.integers(1, n_max))
        entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)
        # a sprinkling of zeros keeps singular cases common
        cell = st.one_of(st.just(Fraction(0)), entries)
        return [[draw(cell) for _ in range(c)] for _ in range(r)]
    return build()


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in m])


def from_sympy(m):
    return [[Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in row] for row in m.tolist()]


@given(matrices())
def test_det_matches_sympy(m):
    assert la.det(m) == Fraction(str(to_sympy(m).det()))


@given(matrices(square=False))
def test_rank_and_nullspace_match_sympy(m):
    S = to_sympy(m)
    assert la.rank(m) == S.rank()
    ns = la.nullspace(m)
    assert len(ns) == len(S.nullspace())
    for v in ns:
        assert la.is_zero_matrix(la.matmul(m, [[x] for x in v]))


@given(matrices())
def test_inverse_matches_sympy(m):
    S = to_sympy(m)
    if S.det() == 0:
        with pytest.raises(ZeroDivisionError):
            la.inverse(m)
    else:
        assert la.inverse(m) == from_sympy(S.inv())


@given(matrices(square=False), st.data())
def test_solve_consistent_systems(m, data):
    x = [[data.draw(st.fractions(min_value=-3, max_value=3, max_denominator=2))] for _ in m[0]]
    rhs = la.matmul(m, x)
    sol = la.solve(m, rhs)
    assert la.matmul(m, sol) == rhs


@given(matrices())
def test_charpoly_matches_sympy(m):
    lam = sympy.Symbol("lam")
    want = sympy.Poly(to_sympy(m).charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    assert la.charpoly(m) == [Fraction(str(c)) for c in want]


def test_solve_detects_inconsistency():
    with pytest.raises(la.SingularSystem):
        la.solve([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], [[Fraction(1)], [Fraction(3)]])


def test_cyclotomic_entries():
    F = cyclotomic_field(12)
    w = F.zeta()
    m = [[w, F.one()], [F.one(), w * w]]
    inv = la.inverse(m)
    assert la.matmul(m, inv) == la.identity(2, F.zero())
    assert la.det(m) == w ** 3 - 1
