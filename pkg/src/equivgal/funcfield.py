"""Rational functions over a cyclotomic field and the Kummer fields F(x, y), y^n = x.

A :class:`KummerElem` is sum_j a_j(x) y^j with 0 <= j < n.  The cyclic
Galois group acts by y -> zeta_n y.  Points on the curve y^n = x are pairs
(x0, y0) with y0^n = x0 and x0 != 0; expansions there use t = x - x0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy

from .cyclo import CycloField, FieldElem
from .series import Laurent

__all__ = [
    "Poly",
    "RatFunc",
    "KummerElem",
    "laurent_expand",
    "y_series",
]


class Poly:
    """Polynomial in one variable over a cyclotomic field, low degree first."""

    __slots__ = ("field", "c")

    def __init__(self, F: CycloField, coeffs: Iterable = ()):
        c = [F(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.field = F
        self.c = tuple(c)

    @classmethod
    def const(cls, F: CycloField, v) -> Poly:
        return cls(F, [v])

    @classmethod
    def x(cls, F: CycloField) -> Poly:
        return cls(F, [0, 1])

    @classmethod
    def linear(cls, F: CycloField, root) -> Poly:
        """x - root."""
        return cls(F, [-F(root), 1])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> FieldElem:
        return self.c[-1]

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        return " + ".join(f"({v})*x^{k}" for k, v in enumerate(self.c) if v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] = out[k] + v
        return Poly(self.field, out)

    def __neg__(self) -> Poly:
        return Poly(self.field, [-v for v in self.c])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.c or not other.c:
            return Poly(self.field)
        out = [None] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if b:
                    out[i + j] = a * b if out[i + j] is None else out[i + j] + a * b
        z = self.field.zero()
        return Poly(self.field, [z if v is None else v for v in out])

    __rmul__ = __mul__

    def scale(self, s) -> Poly:
        return Poly(self.field, [s * v for v in self.c])

    def __pow__(self, k: int) -> Poly:
        out = Poly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.c)
        d = other.degree
        inv = 1 / other.lc()
        q = [F.zero()] * max(0, len(r) - d)
        for k in range(len(r) - 1 - d, -1, -1):
            coef = r[k + d]
            if not coef:
                continue
            coef = coef * inv
            q[k] = coef
            for j, b in enumerate(other.c):
                if b:
                    r[k + j] = r[k + j] - coef * b
        return Poly(F, q), Poly(F, r[:d])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return self.scale(1 / lc)

    def __call__(self, x0) -> FieldElem:
        acc = self.field.zero()
        for v in reversed(self.c):
            acc = acc * x0 + v
        return acc

    def derivative(self) -> Poly:
        return Poly(self.field, [v * k for k, v in enumerate(self.c)][1:])

    def shift(self, p) -> list[FieldElem]:
        """Coefficients of P(t + p) as a polynomial in t (Taylor shift)."""
        c = list(self.c)
        n = len(c)
        if p == 0 or not c:
            return c
        # repeated synthetic division
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + p * c[j + 1]
        return c

    def order_at(self, p) -> int:
        """Multiplicity of p as a root (0 if not a root)."""
        if self.is_zero():
            raise ValueError("order of the zero polynomial")
        s = self.shift(p)
        k = 0
        while not s[k]:
            k += 1
        return k

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.c)

    @staticmethod
    def gcd(a: Poly, b: Poly) -> Poly:
        """Monic gcd.

        When one argument has rational coefficients it is factored over Q
        first, so that linear factors are handled by root multiplicities and
        Euclid only runs against small rational factors.  Plain Euclid over a
        large cyclotomic field suffers badly from coefficient growth.
        """
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        for u, v in ((a, b), (b, a)):
            if v.degree > 0 and v.is_rational():
                return _gcd_against_rational(u, v)
        if a.degree == 0 or b.degree == 0:
            return Poly.const(a.field, 1)
        return _euclid(a, b)

    def embed(self, F: CycloField) -> Poly:
        return Poly(F, [v.embed(F) for v in self.c])

    def to_json(self) -> list:
        return [v.to_json() for v in self.c]

    @staticmethod
    def from_json(F: CycloField, data: list) -> Poly:
        return Poly(F, [FieldElem.from_json(v).embed(F) for v in data])


def _euclid(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


@lru_cache(maxsize=4096)
def _rational_factors(coeffs: tuple[Fraction, ...]) -> tuple[tuple[tuple[Fraction, ...], int], ...]:
    """Monic irreducible factors over Q with multiplicities (low degree first coefficients)."""
    x = sympy.Symbol("x")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    _, facs = expr.factor_list()
    out = []
    for f, e in facs:
        f = f.monic()
        out.append((tuple(Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())), int(e)))
    return tuple(out)


def _gcd_against_rational(u: Poly, v: Poly) -> Poly:
    F = u.field
    if u.degree == 0:
        return Poly.const(F, 1)
    out = Poly.const(F, 1)
    for qc, e in _rational_factors(tuple(c.to_fraction() for c in v.c)):
        q = Poly(F, qc)
        if q.degree == 1:
            k = min(e, u.order_at(-qc[0]))
            if k:
                out = out * q ** k
        else:
            qe = q ** e
            out = out * _euclid(qe, u % qe)
    return out.monic()


class RatFunc:
    """num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduced: bool = False):
        F = num.field
        if den is None:
            den = Poly.const(F, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.const(F, 1)
        elif not reduced and den.degree > 0:
            g = Poly.gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc()
        if lc != 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self) -> CycloField:
        return self.num.field

    @classmethod
    def const(cls, F: CycloField, v) -> RatFunc:
        return cls(Poly.const(F, v))

    @classmethod
    def zero(cls, F: CycloField) -> RatFunc:
        return cls(Poly(F))

    @classmethod
    def x(cls, F: CycloField) -> RatFunc:
        return cls(Poly.x(F))

    @classmethod
    def power_of_linear(cls, F: CycloField, p, k: int) -> RatFunc:
        """(x - p)^k for any integer k."""
        lin = Poly.linear(F, p)
        if k >= 0:
            return cls(lin ** k)
        return cls(Poly.const(F, 1), lin ** (-k), reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __repr__(self) -> str:
        if self.den.degree == 0:
            return f"{self.num}"
        return f"({self.num})/({self.den})"

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def _lift(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        return RatFunc.const(self.field, other)

    def __add__(self, other) -> RatFunc:
        o = self._lift(other)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.degree == 0:
            return RatFunc(self.num + o.num * self.den, self.den, reduced=True)
        if self.den.degree == 0:
            return RatFunc(self.num * o.den + o.num, o.den, reduced=True)
        g = Poly.gcd(self.den, o.den)
        a = o.den // g
        b = self.den // g
        return RatFunc(self.num * a + o.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> RatFunc:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> RatFunc:
        return self._lift(other) - self

    def __mul__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction, FieldElem)):
            if not other:
                return RatFunc.zero(self.field)
            return RatFunc(self.num.scale(other), self.den, reduced=True)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.field)
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFunc(self.num * other.num, self.den * other.den, reduced=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction, FieldElem)):
            return self * (1 / self.field(other))
        return self * other.inverse()

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def derivative(self) -> RatFunc:
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x0) -> FieldElem:
        d = self.den(x0)
        if not d:
            raise ZeroDivisionError(f"pole at x = {x0}")
        return self.num(x0) / d

    def compose_power(self, n: int) -> RatFunc:
        """f(z^n) as a rational function of z."""
        def up(p: Poly) -> Poly:
            out = [p.field.zero()] * (n * p.degree + 1) if p.c else []
            for k, v in enumerate(p.c):
                out[n * k] = v
            return Poly(p.field, out)
        return RatFunc(up(self.num), up(self.den), reduced=True)

    def poles(self) -> Poly:
        return self.den

    def valuation_at(self, p) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self.num.order_at(p) - self.den.order_at(p)

    def expand(self, p, prec: int) -> Laurent:
        """Laurent series in t = x - p, exact through O(t^prec)."""
        F = self.field
        if self.is_zero():
            return Laurent(F, 0, [], prec)
        num = self.num.shift(p)
        den = self.den.shift(p)
        v = 0
        while not den[v]:
            v += 1
        den = den[v:]
        u = 0
        while not num[u]:
            u += 1
        num = num[u:]
        val = u - v
        need = prec - val
        if need <= 0:
            return Laurent(F, 0, [], prec)
        # power series division num/den to `need` terms
        inv0 = 1 / den[0]
        out = []
        for k in range(need):
            s = num[k] if k < len(num) else F.zero()
            for j in range(1, min(k, len(den) - 1) + 1):
                if den[j] and out[k - j]:
                    s = s - den[j] * out[k - j]
            out.append(s * inv0)
        return Laurent(F, val, out, prec)

    def embed(self, F: CycloField) -> RatFunc:
        return RatFunc(self.num.embed(F), self.den.embed(F), reduced=True)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(F: CycloField, data: dict) -> RatFunc:
        return RatFunc(Poly.from_json(F, data["num"]), Poly.from_json(F, data["den"]))


class KummerElem:
    """sum_{j<n} a_j(x) y^j in F(x, y) with y^n = x."""

    __slots__ = ("n", "a")

    def __init__(self, n: int, coeffs: Sequence[RatFunc]):
        if len(coeffs) != n:
            raise ValueError(f"expected {n} coefficients, got {len(coeffs)}")
        self.n = n
        self.a = tuple(coeffs)

    @property
    def field(self) -> CycloField:
        return self.a[0].field

    @classmethod
    def zero(cls, F: CycloField, n: int) -> KummerElem:
        return cls(n, [RatFunc.zero(F)] * n)

    @classmethod
    def const(cls, F: CycloField, n: int, v) -> KummerElem:
        return cls.from_ratfunc(n, RatFunc.const(F, v))

    @classmethod
    def from_ratfunc(cls, n: int, f: RatFunc) -> KummerElem:
        return cls(n, [f] + [RatFunc.zero(f.field)] * (n - 1))

    @classmethod
    def y_power(cls, F: CycloField, n: int, k: int, c=1) -> KummerElem:
        """c * y^k for any integer k, using y^n = x."""
        q, j = divmod(k, n)
        coeffs = [RatFunc.zero(F)] * n
        coeffs[j] = RatFunc(Poly.x(F)) ** q * c if q >= 0 else RatFunc(Poly.const(F, c), Poly.x(F) ** (-q))
        return cls(n, coeffs)

    @classmethod
    def from_y_poly(cls, F: CycloField, n: int, coeffs: Sequence) -> KummerElem:
        """sum_k coeffs[k] y^k with constant coefficients."""
        out = cls.zero(F, n)
        for k, c in enumerate(coeffs):
            if c:
                out = out + cls.y_power(F, n, k, c)
        return out

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.a)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        terms = [f"[{v}]*y^{j}" if j else f"[{v}]" for j, v in enumerate(self.a) if not v.is_zero()]
        return " + ".join(terms) or "0"

    def __eq__(self, other) -> bool:
        if isinstance(other, KummerElem):
            return self.n == other.n and self.a == other.a
        if isinstance(other, (int, Fraction, FieldElem)):
            return self == KummerElem.const(self.field, self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.a)

    def _lift(self, other) -> KummerElem:
        if isinstance(other, KummerElem):
            if other.n != self.n:
                raise ValueError("Kummer elements of different degree")
            return other
        if isinstance(other, RatFunc):
            return KummerElem.from_ratfunc(self.n, other)
        return KummerElem.const(self.field, self.n, other)

    def __add__(self, other) -> KummerElem:
        o = self._lift(other)
        return KummerElem(self.n, [u + v for u, v in zip(self.a, o.a)])

    __radd__ = __add__

    def __neg__(self) -> KummerElem:
        return KummerElem(self.n, [-v for v in self.a])

    def __sub__(self, other) -> KummerElem:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> KummerElem:
        return self._lift(other) - self

    def __mul__(self, other) -> KummerElem:
        if isinstance(other, (int, Fraction, FieldElem)):
            return KummerElem(self.n, [v * other for v in self.a])
        if isinstance(other, RatFunc):
            return KummerElem(self.n, [v * other for v in self.a])
        n = self.n
        F = self.field
        out = [RatFunc.zero(F)] * n
        xf = RatFunc.x(F)
        for i, u in enumerate(self.a):
            if u.is_zero():
                continue
            for j, v in enumerate(other.a):
                if v.is_zero():
                    continue
                p = u * v
                k = i + j
                if k >= n:
                    k -= n
                    p = p * xf
                out[k] = out[k] + p
        return KummerElem(n, out)

    __rmul__ = __mul__

    def galois(self, k: int = 1) -> KummerElem:
        """Apply y -> zeta_n^k y."""
        F = self.field
        return KummerElem(self.n, [v * F.zeta(j * k, self.n) if j else v for j, v in enumerate(self.a)])

    def norm(self) -> RatFunc:
        prod = self
        for k in range(1, self.n):
            prod = prod * self.galois(k)
        for j in range(1, self.n):
            if not prod.a[j].is_zero():
                raise ArithmeticError("norm did not land in F(x)")
        return prod.a[0]

    def inverse(self) -> KummerElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        conj = KummerElem.const(self.field, self.n, 1)
        for k in range(1, self.n):
            conj = conj * self.galois(k)
        return conj * self.norm().inverse()

    def __truediv__(self, other) -> KummerElem:
        if isinstance(other, (int, Fraction, FieldElem)):
            return self * (1 / self.field(other))
        return self * self._lift(other).inverse()

    def derivative(self) -> KummerElem:
        """d/dx, using d(y^j)/dx = (j/n) y^j / x."""
        F = self.field
        xinv = RatFunc.x(F).inverse()
        out = []
        for j, v in enumerate(self.a):
            d = v.derivative()
            if j and not v.is_zero():
                d = d + v * xinv * Fraction(j, self.n)
            out.append(d)
        return KummerElem(self.n, out)

    def substitute_power(self) -> RatFunc:
        """The rational function of z obtained from x = z^n, y = z."""
        F = self.field
        out = RatFunc.zero(F)
        for j, v in enumerate(self.a):
            if not v.is_zero():
                out = out + v.compose_power(self.n) * RatFunc(Poly(F, [0] * j + [1]))
        return out

    def pole_polys(self) -> list[Poly]:
        return [v.den for v in self.a if v.den.degree > 0]

    def embed(self, F: CycloField) -> KummerElem:
        return KummerElem(self.n, [v.embed(F) for v in self.a])

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [v.to_json() for v in self.a]}

    @staticmethod
    def from_json(F: CycloField, data: dict) -> KummerElem:
        return KummerElem(int(data["n"]), [RatFunc.from_json(F, v) for v in data["coeffs"]])


def y_series(n: int, x0, y0, prec: int) -> Laurent:
    """Expansion of y = x^(1/n) at the point (x0, y0), t = x - x0.

    y = y0 (1 + t/x0)^(1/n) expanded by the binomial series.
    """
    F = y0.field if isinstance(y0, FieldElem) else x0.field
    x0, y0 = F(x0), F(y0)
    if not x0:
        raise ValueError("x = 0 is a ramification point; y has no Taylor expansion there")
    if y0 ** n != x0:
        raise ValueError(f"{y0} is not an n-th root of {x0}")
    inv = 1 / x0
    coeffs = []
    b = Fraction(1)
    scale = y0
    for k in range(max(prec, 0)):
        coeffs.append(scale * b)
        b = b * (Fraction(1, n) - k) / (k + 1)
        scale = scale * inv
    return Laurent(F, 0, coeffs, prec)


def laurent_expand(e: KummerElem | RatFunc, x0, prec: int, y0=None) -> Laurent:
    """Laurent expansion at the point over x0 with branch y0, exact through O(t^prec)."""
    if isinstance(e, RatFunc):
        return e.expand(x0, prec)
    if e.n == 1:
        return e.a[0].expand(x0, prec)
    if y0 is None:
        raise ValueError("a branch y0 with y0^n = x0 is required")
    F = e.field
    vals = [v.valuation_at(x0) for v in e.a if not v.is_zero()]
    if not vals:
        return Laurent(F, 0, [], prec)
    vmin = min(vals)
    # work to a positive precision so that a very low target does not erase the valuation of y
    work = max(prec, 1) - min(vmin, 0)
    ys = y_series(e.n, F(x0), F(y0), work)
    total = Laurent(F, 0, [], None)
    ypow = Laurent(F, 0, [F.one()], None)
    for j, v in enumerate(e.a):
        if j:
            ypow = ypow * ys
        if v.is_zero():
            continue
        term = v.expand(x0, work) * ypow
        total = total + term
    return total.truncate(prec)
