"""Equivariant bases of g(K) for cyclic Kummer fields and jet interpolation.

An :class:`Action` is a Lie algebra automorphism tau of order dividing n.
The Galois generator sigma acts on K = F(x, y) by y -> zeta_n y, and a
matrix A over K is equivariant when sigma(A) = tau(A) entrywise.  Inner
actions are tau(X) = g^-1 X g, outer ones tau(X) = -J X^T J^-1 (J = I is
the transpose-negate action on sl_n).

Basis elements are kept as constant-coefficient polynomials in y,
e~ = sum_k y^k C_k with C_k in g(F), which makes evaluation at points and
the equivariance identity (tau(C_k) = zeta_n^k C_k) cheap to check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from . import linalg as la
from .cyclo import CycloField, FieldElem
from .funcfield import KummerElem, Poly, RatFunc, y_series
from .lie import AlgebraTag, algebra_basis, in_algebra
from .series import Laurent

__all__ = [
    "Action",
    "BadSet",
    "EquivariantBasis",
    "JetPoint",
    "JetSpec",
    "Interpolation",
    "BadPoint",
    "equivariant_basis",
    "basis_from_terms",
    "interpolate_jets",
    "kummer_matrix_expand",
]


def _mat(rows, F: CycloField):
    return tuple(tuple(F(v) for v in r) for r in rows)


@dataclass(frozen=True)
class Action:
    kind: str  # trivial, inner or outer
    order: int
    generator: tuple[tuple[FieldElem, ...], ...]

    @staticmethod
    def trivial(n: int, F: CycloField) -> Action:
        return Action("trivial", 1, _mat(la.identity(n, F.zero()), F))

    @staticmethod
    def transpose_negate(n: int, F: CycloField, J=None) -> Action:
        J = la.identity(n, F.zero()) if J is None else J
        return Action("outer", 2, _mat(J, F))

    @staticmethod
    def inner(g, order: int, F: CycloField) -> Action:
        return Action("inner", order, _mat(g, F))

    @property
    def size(self) -> int:
        return len(self.generator)

    def _inv(self):
        return la.inverse([list(r) for r in self.generator])

    def apply(self, X):
        """tau(X) for a matrix X over F or over K."""
        G = self.generator
        if self.kind == "trivial":
            return [list(r) for r in X]
        Ginv = self._inv()
        if self.kind == "inner":
            return _mm(_mm(Ginv, X), G)
        if self.kind == "outer":
            XT = [list(c) for c in zip(*X)]
            return [[-v for v in r] for r in _mm(_mm(G, XT), Ginv)]
        raise ValueError(f"unknown action kind {self.kind!r}")

    def embed(self, F: CycloField) -> Action:
        return Action(self.kind, self.order, tuple(tuple(v.embed(F) for v in r) for r in self.generator))

    def to_json(self) -> dict:
        return {"type": self.kind, "order": self.order,
                "generator": [[v.to_json() for v in r] for r in self.generator]}

    @staticmethod
    def from_json(F: CycloField, data: dict) -> Action:
        gen = tuple(tuple(FieldElem.from_json(v).embed(F) for v in r) for r in data["generator"])
        return Action(data["type"], int(data["order"]), gen)


def _mm(a, b):
    """Product of matrices whose entries may mix FieldElem and KummerElem."""
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if not x or not y:
                    continue
                p = y * x if isinstance(y, KummerElem) else x * y
                acc = p if acc is None else acc + p
            row.append(acc if acc is not None else _zero_like(a[i][0], b[0][j]))
        out.append(row)
    return out


def _zero_like(*xs):
    for x in xs:
        if isinstance(x, KummerElem):
            return KummerElem.zero(x.field, x.n)
    for x in xs:
        if isinstance(x, FieldElem):
            return x.field.zero()
    return Fraction(0)


class BadPoint(ValueError):
    """A point lies in the exceptional set S or collides with another point."""


@dataclass(frozen=True)
class BadSet:
    """The exceptional set S: ramification at x = 0, poles of B and zeros of det B.

    Here B has constant coefficients in y, so there are no poles and
    det B = D(y) is a polynomial in y.  A point x0 is bad when x0 = 0 or when
    D vanishes at some n-th root of x0.
    """

    n: int
    det_poly: Poly  # D(y)

    def contains(self, x0, y0=None) -> bool:
        F = self.det_poly.field
        x0 = F(x0)
        if not x0:
            return True
        if y0 is None:
            raise ValueError("an n-th root of x0 is needed to test membership")
        y0 = F(y0)
        for k in range(self.n):
            if not self.det_poly(y0 * F.zeta(k, self.n)):
                return True
        return False

    def to_json(self) -> dict:
        return {"ramification": ["0"], "poles": [], "det_in_y": self.det_poly.to_json()}


@dataclass(frozen=True)
class EquivariantBasis:
    algebra: AlgebraTag
    action: Action
    n: int
    terms: tuple[tuple[tuple, ...], ...]  # terms[i][k] = C_k of element i
    bad_set: BadSet

    @property
    def field(self) -> CycloField:
        return self.terms[0][0][0][0].field

    def __len__(self) -> int:
        return len(self.terms)

    def element(self, i: int) -> list[list[KummerElem]]:
        F, n = self.field, self.n
        size = self.algebra.n
        return [[KummerElem.from_y_poly(F, n, [self.terms[i][k][r][c] for k in range(n)])
                 for c in range(size)] for r in range(size)]

    def at_point(self, i: int, y0) -> list[list[FieldElem]]:
        F = self.field
        y0 = F(y0)
        out = la.zeros(self.algebra.n, self.algebra.n, F.zero())
        yk = F.one()
        for k in range(self.n):
            out = la.mat_add(out, la.mat_scale(yk, self.terms[i][k]))
            yk = yk * y0
        return out

    def expand_at(self, i: int, x0, y0, prec: int) -> list[list[list[FieldElem]]]:
        """Taylor coefficients (orders 0..prec-1) of element i at the point."""
        F = self.field
        size = self.algebra.n
        coeffs = [la.zeros(size, size, F.zero()) for _ in range(prec)]
        ys = y_series(self.n, x0, y0, prec) if self.n > 1 else None
        ypow = Laurent(F, 0, [F.one()], None)
        for k in range(self.n):
            if k:
                ypow = ypow * ys
            C = self.terms[i][k]
            if la.is_zero_matrix(C):
                continue
            for order in range(prec):
                s = ypow.coeff(order)
                if s:
                    coeffs[order] = la.mat_add(coeffs[order], la.mat_scale(s, C))
        return coeffs

    def check_equivariance(self) -> bool:
        """tau(C_k) = zeta_n^k C_k for every element and every k."""
        F = self.field
        for el in self.terms:
            for k, C in enumerate(el):
                lhs = self.action.apply(C)
                rhs = la.mat_scale(F.zeta(k, self.n), C)
                if [list(r) for r in lhs] != rhs:
                    return False
        return True

    def check_equivariance_kummer(self) -> bool:
        """sigma(e~_i) = tau(e~_i) as matrices over K."""
        for i in range(len(self)):
            E = self.element(i)
            lhs = [[v.galois(1) for v in r] for r in E]
            if lhs != self.action.apply(E):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "algebra": str(self.algebra),
            "n": self.n,
            "elements": [[[[v.to_json() for v in r] for r in C] for C in el] for el in self.terms],
            "bad_set": self.bad_set.to_json(),
        }


def _coords(tag: AlgebraTag, F: CycloField):
    basis = algebra_basis(tag, F)
    cols = [[v for r in b for v in r] for b in basis]
    return la.transpose(cols)  # n^2 x s


def _solve_coords(flat_basis, X) -> list[FieldElem]:
    rhs = [[v] for r in X for v in r]
    sol = la.solve(flat_basis, rhs)
    return [row[0] for row in sol]


def _det_poly(tag: AlgebraTag, F: CycloField, n: int, terms) -> Poly:
    """det B(y) as a polynomial in y, by evaluation and interpolation."""
    s = len(terms)
    flat = _coords(tag, F)
    # coordinates of every C_k
    coords = [[_solve_coords(flat, terms[i][k]) for k in range(n)] for i in range(s)]
    deg = s * (n - 1)
    xs = [F(j) for j in range(deg + 1)]
    ys = []
    for y0 in xs:
        Bm = [[F.zero()] * s for _ in range(s)]
        for i in range(s):
            yk = F.one()
            for k in range(n):
                for r in range(s):
                    c = coords[i][k][r]
                    if c:
                        Bm[r][i] = Bm[r][i] + c * yk
                yk = yk * y0
        ys.append(la.det(Bm))
    # Lagrange interpolation in Newton form
    coef = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = Poly(F, [coef[-1]])
    for i in range(len(xs) - 2, -1, -1):
        poly = poly * Poly.linear(F, xs[i]) + Poly.const(F, coef[i])
    return poly


def basis_from_terms(tag: AlgebraTag, action: Action, n: int, terms, check: bool = True) -> EquivariantBasis:
    """Wrap user-supplied elements e~_i = sum_k y^k C_k (e.g. a fixture basis)."""
    F = action.generator[0][0].field
    terms = tuple(tuple(_mat(C, F) for C in el) for el in terms)
    if len(terms) != tag.dim:
        raise ValueError(f"need {tag.dim} elements, got {len(terms)}")
    for el in terms:
        for C in el:
            if not in_algebra(C, tag):
                raise ValueError("basis coefficient outside the Lie algebra")
    D = _det_poly(tag, F, n, terms)
    if D.is_zero():
        raise ArithmeticError("det B vanishes identically; the elements are not a basis over K")
    basis = EquivariantBasis(tag, action, n, terms, BadSet(n, D))
    if check and not basis.check_equivariance():
        raise ValueError("supplied elements are not equivariant")
    return basis


def equivariant_basis(tag: AlgebraTag, action: Action, n: int | None = None,
                      F: CycloField | None = None) -> EquivariantBasis:
    """Average a standard basis over the cyclic group.

    With P_j the projection onto the zeta^j eigenspace of tau,
    e~_i = sum_j y^j P_j(e_i).  At y = 1 this returns e_i, so det B is not
    identically zero.
    """
    F = F or action.generator[0][0].field
    n = n or action.order
    if n % action.order:
        raise ValueError(f"action order {action.order} does not divide n = {n}")
    size = tag.n
    base = algebra_basis(tag, F)
    for e in base:
        X = e
        for _ in range(n):
            X = action.apply(X)
        if [list(r) for r in X] != [list(r) for r in e]:
            raise ValueError("action does not have order dividing n")
    inv_n = Fraction(1, n)
    terms = []
    for e in base:
        orbit = [e]
        for _ in range(n - 1):
            orbit.append(action.apply(orbit[-1]))
        el = []
        for j in range(n):
            P = la.zeros(size, size, F.zero())
            for k in range(n):
                P = la.mat_add(P, la.mat_scale(F.zeta(-j * k, n), orbit[k]))
            el.append(la.mat_scale(inv_n, P))
        terms.append(el)
    return basis_from_terms(tag, action, n, terms)


@dataclass(frozen=True)
class JetPoint:
    x: FieldElem
    root: FieldElem
    jets: dict[int, tuple]  # order -> matrix over F
    role: str = "custom"
    label: str = ""

    @property
    def low(self) -> int:
        return min(self.jets)

    @property
    def high(self) -> int:
        return max(self.jets)


@dataclass(frozen=True)
class JetSpec:
    points: tuple[JetPoint, ...]

    def validate(self, basis: EquivariantBasis) -> None:
        if not self.points:
            raise BadPoint("no points given")
        xs = [p.x for p in self.points]
        for i in range(len(xs)):
            for j in range(i):
                if xs[i] == xs[j]:
                    raise BadPoint(f"points {j} and {i} share x = {xs[i]}")
        for p in self.points:
            if basis.n > 1 and p.root ** basis.n != p.x:
                raise BadPoint(f"{p.root} is not an n-th root of {p.x}")
            if basis.bad_set.contains(p.x, p.root):
                raise BadPoint(f"x = {p.x} lies in the exceptional set")
            for M in p.jets.values():
                if not in_algebra(M, basis.algebra):
                    raise BadPoint(f"jet at x = {p.x} is outside {basis.algebra}")


@dataclass
class Interpolation:
    f: list[RatFunc]
    matrix: list[list[KummerElem]]
    local: list[dict[int, list[FieldElem]]] = field(default_factory=list)


def _poly_from_powers(F: CycloField, p, coeffs: dict[int, FieldElem]) -> RatFunc:
    """sum_k coeffs[k] (x - p)^k for k < 0, as one fraction."""
    if not coeffs:
        return RatFunc.zero(F)
    M = min(coeffs)
    lin = Poly.linear(F, p)
    num = Poly(F)
    for k, c in coeffs.items():
        if c:
            num = num + (lin ** (k - M)).scale(c)
    return RatFunc(num, lin ** (-M))


def interpolate_jets(basis: EquivariantBasis, spec: JetSpec) -> Interpolation:
    """Find f_j in F(x) with A = sum f_j e~_j matching every prescribed jet.

    At each point the coefficients of the f_j are found order by order from
    A_k = sum_j sum_b f_j[k-b] e~_j[b].  The principal parts of the f_j are
    then exact, and any prescribed orders >= 0 are met by one Hermite solve
    for a polynomial part of minimal degree.
    """
    spec.validate(basis)
    F = basis.field
    s = len(basis)
    flat = _coords(basis.algebra, F)
    local: list[dict[int, list[FieldElem]]] = []
    for p in spec.points:
        M, N = min(p.low, 0), p.high
        depth = N - M + 1
        exp = [basis.expand_at(i, p.x, p.root, depth) for i in range(s)]
        E0 = [[v for r in exp[i][0] for v in r] for i in range(s)]
        E0 = la.transpose(E0)
        c: dict[int, list[FieldElem]] = {}
        for k in range(M, N + 1):
            target = p.jets.get(k)
            R = [list(r) for r in target] if target is not None else la.zeros(basis.algebra.n, basis.algebra.n, F.zero())
            for b in range(1, k - M + 1):
                prev = c[k - b]
                for j in range(s):
                    if prev[j]:
                        R = la.mat_sub(R, la.mat_scale(prev[j], exp[j][b]))
            rhs = [[v] for r in R for v in r]
            try:
                sol = la.solve(E0, rhs)
            except la.SingularSystem:
                raise BadPoint(f"basis does not span the algebra at x = {p.x}") from None
            c[k] = [row[0] for row in sol]
        local.append(c)
    # principal parts
    f = []
    for j in range(s):
        total = RatFunc.zero(F)
        for p, c in zip(spec.points, local):
            neg = {k: v[j] for k, v in c.items() if k < 0 and v[j]}
            total = total + _poly_from_powers(F, p.x, neg)
        f.append(total)
    # regular orders by Hermite interpolation
    conds = [(pi, k) for pi, p in enumerate(spec.points) for k in range(0, p.high + 1)]
    if conds:
        deg = len(conds)
        rows = []
        for pi, k in conds:
            x0 = spec.points[pi].x
            rows.append([F(comb(d, k)) * x0 ** (d - k) if d >= k else F.zero() for d in range(deg)])
        rhs = []
        for pi, k in conds:
            p = spec.points[pi]
            row = []
            for j in range(s):
                have = f[j].expand(p.x, k + 1).coeff(k) if not f[j].is_zero() else F.zero()
                row.append(local[pi][k][j] - have)
            rhs.append(row)
        sol = la.solve(rows, rhs)
        for j in range(s):
            poly = Poly(F, [sol[d][j] for d in range(deg)])
            if not poly.is_zero():
                f[j] = f[j] + RatFunc(poly)
    matrix = assemble_matrix(basis, f)
    return Interpolation(f, matrix, local)


def assemble_matrix(basis: EquivariantBasis, f: Sequence[RatFunc]) -> list[list[KummerElem]]:
    """sum_j f_j e~_j as a matrix over K."""
    F, n, size = basis.field, basis.n, basis.algebra.n
    out = []
    for r in range(size):
        row = []
        for col in range(size):
            coeffs = []
            for k in range(n):
                acc = RatFunc.zero(F)
                for j, fj in enumerate(f):
                    c = basis.terms[j][k][r][col]
                    if c and not fj.is_zero():
                        acc = acc + fj * c
                coeffs.append(acc)
            row.append(KummerElem(n, coeffs))
        out.append(row)
    return out


def kummer_matrix_expand(A, x0, prec: int, y0=None) -> dict[int, list[list[FieldElem]]]:
    """Laurent coefficients {order: matrix} of a matrix over K, through O(t^prec)."""
    from .funcfield import laurent_expand

    size = len(A)
    F = A[0][0].field
    series = [[laurent_expand(v, x0, prec, y0) for v in r] for r in A]
    orders = set()
    for r in series:
        for s_ in r:
            orders.update(s_.terms())
    out: dict[int, list[list[FieldElem]]] = {}
    for k in sorted(orders):
        out[k] = [[series[i][j].coeff(k) for j in range(size)] for i in range(size)]
    return out
