from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy

from equivgal import linalg as la
from equivgal.cyclo import cyclotomic_field, sqrt_prime
from equivgal.lie import (
    LieMatrix,
    UnsupportedShape,
    ad_kernel_dim,
    algebra_basis,
    algebra_for,
    generic_torus_seed,
    in_algebra,
    irregular_seed,
    principal_nilpotent,
    standard_form,
    unique_slope,
)

KINDS = [("A", l) for l in range(1, 7)] + [("C", l) for l in range(2, 7)] + [("D", l) for l in range(3, 7)]


def centralizer_dim_oracle(X, tag) -> int:
    """dim {Y in g : [X, Y] = 0} by a floating point rank on gl_n coordinates."""
    n = tag.n
    Xc = np.array([[complex(v.to_complex()) for v in r] for r in X], dtype=complex)
    rows = []
    for i in range(n):
        for j in range(n):
            # ([X, Y])_{ij} = sum_k X_ik Y_kj - Y_ik X_kj
            row = np.zeros(n * n, dtype=complex)
            for k in range(n):
                row[k * n + j] += Xc[i, k]
                row[i * n + k] -= Xc[k, j]
            rows.append(row)
    if tag.name == "sl":
        row = np.zeros(n * n, dtype=complex)
        for i in range(n):
            row[i * n + i] = 1
        rows.append(row)
    else:
        S = np.array([[float(v.to_complex().real) for v in r] for r in standard_form(tag)])
        for i in range(n):
            for j in range(n):
                # (Y^T S + S Y)_{ij}
                row = np.zeros(n * n, dtype=complex)
                for k in range(n):
                    row[k * n + i] += S[k, j]
                    row[k * n + j] += S[i, k]
                rows.append(row)
    return n * n - np.linalg.matrix_rank(np.array(rows), tol=1e-8)


@pytest.mark.parametrize("kind,rank", KINDS)
def test_algebra_basis_dimension_and_membership(kind, rank):
    tag = algebra_for(kind, rank)
    basis = algebra_basis(tag)
    assert len(basis) == tag.dim
    assert all(in_algebra(b, tag) for b in basis)
    flat = [[v for r in b for v in r] for b in basis]
    assert la.rank(flat) == tag.dim


@pytest.mark.parametrize("kind,rank", KINDS)
def test_principal_nilpotent(kind, rank):
    X = principal_nilpotent(kind, rank)
    n = X.n
    assert la.is_zero_matrix(la.matpow(X.rows(), n))
    assert ad_kernel_dim(X) == rank == centralizer_dim_oracle(X.rows(), X.algebra)


@pytest.mark.parametrize("rank", range(1, 6))
def test_sl_nilpotent_is_all_ones_above_diagonal(rank):
    X = principal_nilpotent("A", rank).rows()
    n = rank + 1
    assert all((X[i][j] == 1) == (i < j) for i in range(n) for j in range(n))


@pytest.mark.parametrize("kind,rank", KINDS)
def test_torus_seed(kind, rank):
    X, cert = generic_torus_seed(kind, rank)
    assert cert.rank == rank + 1 and cert.independent
    assert ad_kernel_dim(X) == rank == centralizer_dim_oracle(X.rows(), X.algebra)
    if rank <= 4:
        # squaring dense elements of the rank-5/6 fields is slow; square roots are covered elsewhere
        for v, p in zip(cert.values, cert.primes):
            assert v * v == X.field(p)


def test_torus_seed_examples():
    X, _ = generic_torus_seed("A", 1)
    F = X.field
    r2 = sqrt_prime(2, F)
    assert X.rows() == [[r2, F.zero()], [F.zero(), -r2]]
    X, _ = generic_torus_seed("C", 2)
    F = X.field
    d = [X.rows()[i][i] for i in range(4)]
    assert d == [sqrt_prime(2, F), sqrt_prime(3, F), -sqrt_prime(2, F), -sqrt_prime(3, F)]
    with pytest.raises(ValueError):
        generic_torus_seed("A", 2, cyclotomic_field(8))


def test_ad_kernel_examples():
    tag = algebra_for("A", 1)
    assert ad_kernel_dim(LieMatrix.make([[0, 0], [0, 0]], tag)) == 3
    assert ad_kernel_dim(LieMatrix.make([[1, 0], [0, -1]], tag)) == 1
    assert ad_kernel_dim(principal_nilpotent("A", 3)) == 3


def test_lie_matrix_rejects_non_members():
    with pytest.raises(ValueError):
        LieMatrix.make([[1, 0], [0, 1]], algebra_for("A", 1))
    J = standard_form(algebra_for("C", 2))
    assert in_algebra(J, algebra_for("C", 2))
    assert not in_algebra(J, algebra_for("D", 2))


@pytest.mark.parametrize("kind,rank", [("A", l) for l in range(1, 9)] + [("C", l) for l in range(2, 9)])
def test_irregular_seed_char_poly(kind, rank):
    seed = irregular_seed(kind, rank)
    S = la.mat_add(seed.jets[-2].rows(), seed.jets[-1].rows())
    n = len(S)
    want = [-1] + [0] * (n - 1) + [1]
    assert [Fraction(str(c)) if not hasattr(c, "to_fraction") else c.to_fraction() for c in la.charpoly(S)] == want
    # independent check with sympy
    lam = sympy.Symbol("lam")
    M = sympy.Matrix([[int(v.to_fraction()) for v in r] for r in S])
    assert sympy.expand(M.charpoly(lam).as_expr() - (lam ** n - 1)) == 0


def test_alternate_sign_for_c():
    seed = irregular_seed("C", 2, alt_sign=True)
    S = la.mat_add(seed.jets[-2].rows(), seed.jets[-1].rows())
    assert [c.to_fraction() for c in la.charpoly(S)] == [1, 0, 0, 0, 1]


@pytest.mark.parametrize("kind,rank", [("A", l) for l in range(1, 7)] + [("C", l) for l in range(2, 7)])
def test_unique_slope(kind, rank):
    n = rank + 1 if kind == "A" else 2 * rank
    res = unique_slope(irregular_seed(kind, rank))
    assert res.slope == 2 - Fraction(1, n)
    assert res.slope.denominator == n and res.coprime
    assert [c.to_fraction() for c in res.charpoly] == [-1] + [0] * (n - 1) + [1]


def test_slope_edge_cases():
    tag = algebra_for("A", 1)
    h = LieMatrix.make([[1, 0], [0, -1]], tag)
    assert unique_slope({-1: h}).note == "not irregular"
    with pytest.raises(UnsupportedShape):
        unique_slope({-2: h})
    with pytest.raises(ValueError):
        irregular_seed("D", 4)
