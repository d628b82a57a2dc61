from __future__ import annotations

import pytest
import sympy

from equivgal.alternate import _equations, alternate_sl2_check, check_section5_equation, degree_of_q


@pytest.mark.parametrize("n", [1, 2])
def test_no_polynomial_solutions(n):
    rep = alternate_sl2_check(n, m_max=4)
    assert rep.passed
    assert len(rep.rows) == 2 * 5
    assert {(r["m"], r["branch"]) for r in rep.rows} == {(m, b) for m in range(5) for b in (1, -1)}
    assert all(r["groebner_is_one"] and r["forced_c_nullity"] == 0 for r in rep.rows)


@pytest.mark.parametrize("m,branch", [(0, 1), (1, -1), (2, 1)])
def test_groebner_agrees_with_direct_solve(m, branch):
    # sympy's solver on the same polynomial system, used as an independent oracle
    eqs, unknowns = _equations(1, m, branch)
    assert sympy.solve(eqs, unknowns, dict=True) == []


def test_unnormalized_system_has_only_zero():
    eqs, unknowns = _equations(2, 3, 1, normalized=False)
    sol = sympy.solve(eqs, unknowns, dict=True)
    assert sol == [] or all(all(v == 0 for v in s.values()) and len(s) == len(unknowns) for s in sol)


def test_degree_of_q():
    assert degree_of_q(1, 0) is None
    assert degree_of_q(1, 3) == 2
    assert degree_of_q(2, 5) == 2
    assert degree_of_q(3, 4) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_transformed_equation(n):
    out = check_section5_equation(n)
    assert out["substitution_holds"]
    assert [e["k"] for e in out["equivariance"]] == list(range(n))
    assert out["passed"]


def test_rejects_bad_n():
    with pytest.raises(ValueError):
        alternate_sl2_check(0)
