"""Small exact linear algebra over Fractions or cyclotomic field elements.

Matrices are lists of rows.  Nothing here uses floating point.  Pivots are
chosen to prefer rational entries, whose inverses are free, so that
elimination over large cyclotomic fields stays cheap on the sparse,
structured matrices that show up in practice.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .cyclo import FieldElem

Matrix = list[list[Any]]


def zero_like(x):
    return x.field.zero() if isinstance(x, FieldElem) else Fraction(0)


def one_like(x):
    return x.field.one() if isinstance(x, FieldElem) else Fraction(1)


def _cost(x) -> int:
    if isinstance(x, FieldElem):
        return len(x._num)
    return 0


def identity(n: int, like=Fraction(0)) -> Matrix:
    z, o = zero_like(like), one_like(like)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def zeros(r: int, c: int, like=Fraction(0)) -> Matrix:
    z = zero_like(like)
    return [[z] * c for _ in range(r)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = a[i]
        acc = [None] * m
        for t in range(k):
            x = row[t]
            if not x:
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if y:
                    acc[j] = x * y if acc[j] is None else acc[j] + x * y
        z = zero_like(row[0]) if row else Fraction(0)
        out.append([z if v is None else v for v in acc])
    return out


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a) -> Matrix:
    return [[c * x for x in row] for row in a]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


def trace(a):
    s = a[0][0]
    for i in range(1, len(a)):
        s = s + a[i][i]
    return s


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def _pick_pivot(rows, col, start):
    best, best_cost = None, None
    for r in range(start, len(rows)):
        x = rows[r][col]
        if x:
            c = _cost(x)
            if best is None or c < best_cost:
                best, best_cost = r, c
                if c <= 1:
                    break
    return best


def _components(mat) -> list[tuple[list[int], list[int]]]:
    """Connected components of the bipartite row/column support graph."""
    nr = len(mat)
    parent = list(range(nr + len(mat[0])))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if x:
                a, b = find(i), find(nr + j)
                if a != b:
                    parent[a] = b
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for i, row in enumerate(mat):
        if any(row):
            groups.setdefault(find(i), ([], []))[0].append(i)
    for j in range(len(mat[0])):
        root = find(nr + j)
        if root in groups:
            groups[root][1].append(j)
    return list(groups.values())


def rank(mat: Sequence[Sequence]) -> int:
    """Rank, computed blockwise over the connected components of the support."""
    if not mat or not mat[0]:
        return 0
    total = 0
    for rows, cols in _components(mat):
        if len(rows) == 1 or len(cols) == 1:
            total += 1
        else:
            total += _rank_dense([[mat[i][j] for j in cols] for i in rows])
    return total


def _rank_dense(mat: Sequence[Sequence]) -> int:
    rows = [list(r) for r in mat]
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = _pick_pivot(rows, col, r)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        pinv = None
        for i in range(r + 1, len(rows)):
            a = rows[i][col]
            if a:
                if pinv is None:
                    pinv = 1 / p
                f = a * pinv
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def rref(mat: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = _pick_pivot(rows, col, r)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pinv = 1 / rows[r][col]
        rows[r] = [x * pinv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r:
                a = rows[i][col]
                if a:
                    rows[i] = [x - a * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(mat: Sequence[Sequence], like=None) -> list[list]:
    """Basis of {v : mat v = 0}."""
    if not mat:
        raise ValueError("empty matrix")
    ncols = len(mat[0])
    like = like if like is not None else mat[0][0]
    R, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    z, o = zero_like(like), one_like(like)
    basis = []
    for f in free:
        v = [z] * ncols
        v[f] = o
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


class SingularSystem(ArithmeticError):
    """Linear system has no solution."""


def solve(mat: Sequence[Sequence], rhs: Sequence[Sequence]) -> Matrix:
    """A solution X of mat X = rhs, with free variables set to zero.

    ``rhs`` is a matrix (one column per right-hand side).
    """
    n = len(mat)
    ncols = len(mat[0])
    k = len(rhs[0])
    aug = [list(mat[i]) + list(rhs[i]) for i in range(n)]
    # pivot search only among coefficient columns
    rows = aug
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = _pick_pivot(rows, col, r)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pinv = 1 / rows[r][col]
        rows[r] = [x * pinv if x else x for x in rows[r]]
        for i in range(n):
            if i != r:
                a = rows[i][col]
                if a:
                    rows[i] = [x - a * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if any(rows[i][ncols + j] for j in range(k)):
            raise SingularSystem("inconsistent linear system")
    like = rhs[0][0]
    z = zero_like(like)
    out = [[z] * k for _ in range(ncols)]
    for i, pc in enumerate(pivots):
        out[pc] = rows[i][ncols:]
    return out


def det(mat: Sequence[Sequence]):
    rows = [list(r) for r in mat]
    n = len(rows)
    result = one_like(rows[0][0])
    for col in range(n):
        piv = _pick_pivot(rows, col, col)
        if piv is None:
            return zero_like(rows[0][0])
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            result = -result
        p = rows[col][col]
        result = result * p
        pinv = None
        for i in range(col + 1, n):
            a = rows[i][col]
            if a:
                if pinv is None:
                    pinv = 1 / p
                f = a * pinv
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[col])]
    return result


def inverse(mat: Sequence[Sequence]) -> Matrix:
    n = len(mat)
    try:
        return solve(mat, identity(n, mat[0][0]))
    except SingularSystem:
        raise ZeroDivisionError("singular matrix") from None


def matpow(a, k: int) -> Matrix:
    result = identity(len(a), a[0][0])
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def charpoly(a: Sequence[Sequence]) -> list:
    """Coefficients c_0..c_n (low -> high, monic) of det(lambda I - a).

    Faddeev-LeVerrier; fine in characteristic zero.
    """
    n = len(a)
    like = a[0][0]
    coeffs = [None] * (n + 1)
    coeffs[n] = one_like(like)
    I = identity(n, like)
    Mk = zeros(n, n, like)
    for k in range(1, n + 1):
        Mk = mat_add(matmul(a, Mk), mat_scale(coeffs[n - k + 1], I))
        coeffs[n - k] = -trace(matmul(a, Mk)) * Fraction(1, k)
    return coeffs
