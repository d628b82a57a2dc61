"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored as integer numerators over a common positive
denominator, in the power basis 1, z, ..., z^(phi(M)-1) of z = zeta_M
reduced modulo the M-th cyclotomic polynomial.  Trailing zero coefficients
are stripped internally so that zero and rational elements stay cheap even
in large fields; :attr:`FieldElem.coeffs` always returns the padded,
length-phi(M) tuple of Fractions.

Square roots of primes use the sign convention of the standard complex
embedding zeta_M -> exp(2*pi*i/M): ``sqrt_prime(p)`` is the positive real
square root under that embedding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CycloField",
    "FieldElem",
    "FieldMismatch",
    "cyclotomic_field",
    "cyclotomic_poly",
    "arith",
    "sqrt_prime",
    "sqrt_rational",
    "sqrt_conductor",
    "q_linear_rank",
    "euler_phi",
]


class FieldMismatch(ValueError):
    """Operands live in different cyclotomic fields."""


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _factor(n):
        result = result // p * (p - 1)
    return result


def _divexact_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact division of integer polynomials (low -> high), b monic up to sign."""
    a = a.copy()
    db = len(b) - 1
    lead = int(b[-1])
    q = np.zeros(len(a) - db, dtype=a.dtype)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c // lead
            q[k - db] = c
            a[k - db : k + 1] -= c * b
    if np.any(a[:db]):
        raise ArithmeticError("polynomial division is not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Integer coefficients (low -> high) of the M-th cyclotomic polynomial."""
    if M < 1:
        raise ValueError("order must be positive")
    primes = sorted(_factor(M))
    rad = math.prod(primes)
    # Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x) for p not dividing m
    phi = np.array([-1, 1], dtype=object if M > 10**7 else np.int64)
    m = 1
    for p in primes:
        stretched = np.zeros((len(phi) - 1) * p + 1, dtype=phi.dtype)
        stretched[::p] = phi
        phi = _divexact_np(stretched, phi)
        m *= p
    s = M // rad
    if s > 1:
        stretched = np.zeros((len(phi) - 1) * s + 1, dtype=phi.dtype)
        stretched[::s] = phi
        phi = stretched
    coeffs = tuple(int(c) for c in phi)
    assert len(coeffs) - 1 == euler_phi(M)
    return coeffs


class CycloField:
    """The field Q(zeta_M); obtain instances through :func:`cyclotomic_field`."""

    __slots__ = ("order", "degree", "modulus", "_mod_nz", "__weakref__")

    def __init__(self, order: int):
        self.order = order
        self.modulus = cyclotomic_poly(order)
        self.degree = len(self.modulus) - 1
        self._mod_nz = [(j, c) for j, c in enumerate(self.modulus[:-1]) if c]

    def __repr__(self) -> str:
        return f"CycloField({self.order})"

    def __reduce__(self):
        return (cyclotomic_field, (self.order,))

    # constructors -------------------------------------------------------
    def zero(self) -> FieldElem:
        return FieldElem(self, (), 1)

    def one(self) -> FieldElem:
        return FieldElem(self, (1,), 1)

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            return value.embed(self)
        q = Fraction(value)
        return FieldElem(self, (q.numerator,), q.denominator)

    def zeta(self, k: int = 1, root_order: int | None = None) -> FieldElem:
        """zeta_M^k, or zeta_{root_order}^k when root_order divides M."""
        if root_order is not None:
            if self.order % root_order:
                raise ValueError(f"zeta_{root_order} is not in Q(zeta_{self.order})")
            k = k * (self.order // root_order)
        return self.from_exponents({k % self.order: 1})

    def from_exponents(self, terms: dict[int, int | Fraction]) -> FieldElem:
        """Element sum c_k zeta_M^k for arbitrary exponents k."""
        M = self.order
        den = 1
        for c in terms.values():
            den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
        dense: dict[int, int] = {}
        for k, c in terms.items():
            q = Fraction(c)
            dense[k % M] = dense.get(k % M, 0) + q.numerator * (den // q.denominator)
        if not dense:
            return self.zero()
        top = max(dense)
        vec = [0] * (top + 1)
        for k, v in dense.items():
            vec[k] = v
        return FieldElem(self, _reduce(self, vec), den)

    def from_coeffs(self, coeffs: Sequence) -> FieldElem:
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > self.degree:
            if any(fr[self.degree :]):
                raise ValueError("too many coefficients for this field")
            fr = fr[: self.degree]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return FieldElem(self, [c.numerator * (den // c.denominator) for c in fr], den)


@lru_cache(maxsize=None)
def cyclotomic_field(M: int) -> CycloField:
    return CycloField(M)


# reduction modulo Phi_M ------------------------------------------------------

_PY_THRESHOLD = 600


def _reduce(F: CycloField, vec: list[int]) -> list[int]:
    D = F.degree
    if len(vec) <= D:
        return vec
    if len(vec) > _PY_THRESHOLD:
        return [int(v) for v in _reduce_rec(np.array(vec, dtype=object), F.order)]
    vec = list(vec)
    nz = F._mod_nz
    for k in range(len(vec) - 1, D - 1, -1):
        c = vec[k]
        if c:
            base = k - D
            for j, m in nz:
                vec[base + j] -= c * m
    del vec[D:]
    return vec


def _fold(a: np.ndarray, period: int) -> np.ndarray:
    """Reduce modulo x^period - 1."""
    if len(a) <= period:
        return a
    out = np.zeros(period, dtype=a.dtype)
    for start in range(0, len(a), period):
        chunk = a[start : start + period]
        out[: len(chunk)] += chunk
    return out


def _longdiv(a: np.ndarray, M: int) -> np.ndarray:
    mod = np.array(cyclotomic_poly(M)[:-1], dtype=object)
    D = len(mod)
    a = a.copy()
    for k in range(len(a) - 1, D - 1, -1):
        c = a[k]
        if c:
            a[k - D : k] -= c * mod
    return a[:D]


def _reduce_rec(a: np.ndarray, M: int) -> np.ndarray:
    """Remainder of a (object int array, low -> high) modulo Phi_M.

    Uses Phi_M(x) = Phi_rad(x^s) for the non-squarefree part and
    Phi_{pr}(x) | Phi_r(x^p) to peel off one prime at a time, so that the
    only long divisions are by short quotients.
    """
    D = euler_phi(M)
    if len(a) <= D:
        return a
    a = _fold(a, M)
    primes = sorted(_factor(M))
    rad = math.prod(primes)
    if rad != M:
        s = M // rad
        out = np.zeros(s * euler_phi(rad), dtype=object)
        for i in range(s):
            part = _reduce_rec(a[i::s], rad)
            out[i : i + s * len(part) : s] = part
        return _longdiv(out, M) if len(out) > D else out[:D]
    if len(primes) <= 1 or len(a) <= 4 * D:
        return _longdiv(a, M)
    p = primes[-1]
    r = M // p
    out = np.zeros(p * euler_phi(r), dtype=object)
    for i in range(p):
        part = _reduce_rec(a[i::p], r)
        out[i : i + p * len(part) : p] = part
    return _longdiv(out, M)


def _fits_int64(a, b) -> bool:
    ma = max(abs(v) for v in a)
    mb = max(abs(v) for v in b)
    return ma * mb * min(len(a), len(b)) < (1 << 62)


def _strip(vec) -> tuple[int, ...]:
    n = len(vec)
    while n and not vec[n - 1]:
        n -= 1
    return tuple(vec[:n])


class FieldElem:
    """An exact element of Q(zeta_M).  Immutable."""

    __slots__ = ("field", "_num", "_den", "_hash")

    def __init__(self, field: CycloField, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-v for v in num]
            den = -den
        num = _strip(num)
        g = den
        for v in num:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g != 1 and num:
            num = tuple(v // g for v in num)
            den //= g
        elif not num:
            den = 1
        self.field = field
        self._num = num
        self._den = den
        self._hash = None

    # basic properties ---------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        out = [Fraction(v, self._den) for v in self._num]
        out.extend([Fraction(0)] * (self.field.degree - len(out)))
        return tuple(out)

    def is_zero(self) -> bool:
        return not self._num

    def is_rational(self) -> bool:
        return len(self._num) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den) if self._num else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._num)

    def __repr__(self) -> str:
        if not self._num:
            return "0"
        terms = []
        for k, v in enumerate(self._num):
            if not v:
                continue
            c = Fraction(v, self._den)
            terms.append(f"{c}" if k == 0 else f"{c}*z{self.field.order}^{k}")
        return " + ".join(terms)

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.field.order, self._num, self._den))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                if self.is_rational() and other.is_rational():
                    return self.to_fraction() == other.to_fraction()
                return False
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not self._num:
                return q == 0
            return len(self._num) == 1 and Fraction(self._num[0], self._den) == q
        return NotImplemented

    # coercion -----------------------------------------------------------
    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field is self.field:
                return other
            if other.is_rational():
                return self.field(other.to_fraction())
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o._num:
            return self
        if not self._num:
            return o
        d1, d2 = self._den, o._den
        g = math.gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        den = d1 * m1
        a, b = self._num, o._num
        if len(a) < len(b):
            a, b, m1, m2 = b, a, m2, m1
        out = [v * m1 for v in a]
        for k, v in enumerate(b):
            out[k] += v * m2
        return FieldElem(self.field, out, den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, [-v for v in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def _scale(self, q: Fraction) -> FieldElem:
        return FieldElem(self.field, [v * q.numerator for v in self._num], self._den * q.denominator)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self._num or not o._num:
            return self.field.zero()
        if len(o._num) == 1:
            return self._scale(Fraction(o._num[0], o._den))
        if len(self._num) == 1:
            return o._scale(Fraction(self._num[0], self._den))
        a, b = self._num, o._num
        if min(len(a), len(b)) > 32 and _fits_int64(a, b):
            # exact in int64: every partial sum is bounded by the check
            prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)).tolist()
        else:
            prod = [0] * (len(a) + len(b) - 1)
            for i, u in enumerate(a):
                if u:
                    for j, v in enumerate(b):
                        if v:
                            prod[i + j] += u * v
        return FieldElem(self.field, _reduce(self.field, prod), self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if not self._num:
            raise ZeroDivisionError("inverse of zero")
        if len(self._num) == 1:
            q = Fraction(self._den, self._num[0])
            return FieldElem(self.field, (q.numerator,), q.denominator)
        # extended Euclid in Q[x]: find s with s * a = 1 mod Phi_M
        a = [Fraction(v, self._den) for v in self._num]
        m = [Fraction(v) for v in self.field.modulus]
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        if not r1 or r1[0] == 0:
            raise ArithmeticError("element not invertible (modulus not irreducible?)")
        c = r1[0]
        return self.field.from_coeffs([v / c for v in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> FieldElem:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # field maps ---------------------------------------------------------
    def embed(self, target: CycloField) -> FieldElem:
        """Image under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N^(N/M), M | N."""
        if target is self.field:
            return self
        if target.order % self.field.order:
            raise FieldMismatch(f"cannot embed {self.field} into {target}")
        step = target.order // self.field.order
        terms = {k * step: Fraction(v, self._den) for k, v in enumerate(self._num) if v}
        return target.from_exponents(terms)

    def galois(self, a: int) -> FieldElem:
        """Image under the automorphism zeta_M -> zeta_M^a, gcd(a, M) = 1."""
        if math.gcd(a, self.field.order) != 1:
            raise ValueError("exponent must be a unit mod M")
        terms = {k * a: Fraction(v, self._den) for k, v in enumerate(self._num) if v}
        return self.field.from_exponents(terms)

    def conjugate(self) -> FieldElem:
        return self.galois(-1)

    def to_complex(self) -> complex:
        """Diagnostic evaluation under zeta_M -> exp(2 pi i / M)."""
        M = self.field.order
        k = np.arange(len(self._num))
        vals = np.array([v / self._den for v in self._num], dtype=float)
        return complex(np.sum(vals * np.exp(2j * np.pi * k / M)))

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "M": self.field.order,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @staticmethod
    def from_json(data: dict) -> FieldElem:
        F = cyclotomic_field(int(data["M"]))
        return F.from_coeffs([Fraction(int(n), int(d)) for n, d in data["coeffs"]])


# small dense Q[x] helpers for the extended Euclid ---------------------------

def _ptrim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _ptrim(out) or [Fraction(0)]


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _ptrim(out) or [Fraction(0)]


def _pdivmod(a, b):
    a = list(a)
    b = _ptrim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, v in enumerate(b):
                a[k + j] -= c * v
    return _ptrim(q) or [Fraction(0)], _ptrim(a[: len(b) - 1])


# operations ------------------------------------------------------------------

def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Apply ``op`` in {"add", "sub", "mul", "div"}; operands must share a field."""
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by zero field element")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def sqrt_conductor(p: int) -> int:
    """Smallest M with sqrt(p) in Q(zeta_M), for a prime p."""
    if p == 2:
        return 8
    return p if p % 4 == 1 else 4 * p


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=None)
def _sqrt_prime_cached(p: int, M: int) -> FieldElem:
    F = cyclotomic_field(M)
    if p == 2:
        e = F.from_exponents({M // 8: 1, 7 * M // 8: 1})
    else:
        # the quadratic Gauss sum is sqrt(p) or i*sqrt(p); divide by i as a shift
        shift = 0 if p % 4 == 1 else 3 * M // 4
        step = M // p
        e = F.from_exponents({a * step + shift: _legendre(a, p) for a in range(1, p)})
    if e.to_complex().real < 0:
        e = -e
    return e


def sqrt_prime(p: int, F: CycloField) -> FieldElem:
    """The positive square root of the prime ``p`` inside ``F``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    c = sqrt_conductor(p)
    if F.order % c:
        raise ValueError(f"sqrt({p}) needs conductor {c}, which does not divide {F.order}")
    return _sqrt_prime_cached(p, F.order)


def sqrt_rational(q, F: CycloField) -> FieldElem:
    """A square root of the rational ``q`` in ``F`` (positive or i*positive)."""
    q = Fraction(q)
    if q == 0:
        return F.zero()
    num = q.numerator * q.denominator
    out = F(Fraction(1, q.denominator))
    if num < 0:
        if F.order % 4:
            raise ValueError(f"sqrt(-1) is not in {F}")
        out = out * F.zeta(1, 4)
        num = -num
    for p, e in _factor(num).items():
        out = out * (p ** (e // 2))
        if e % 2:
            out = out * sqrt_prime(p, F)
    return out


def _int_rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix (fraction-free elimination)."""
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = max((len(r) for r in rows), default=0)
    col = 0
    while rows and col < ncols:
        piv = next((i for i, r in enumerate(rows) if r[col]), None)
        if piv is None:
            col += 1
            continue
        pr = rows.pop(piv)
        a = pr[col]
        nxt = []
        for r in rows:
            b = r[col]
            if b:
                r = [a * u - b * v for u, v in zip(r, pr)]
                g = 0
                for u in r:
                    g = math.gcd(g, u)
                if g > 1:
                    r = [u // g for u in r]
            if any(r):
                nxt.append(r)
        rows = nxt
        rank += 1
        col += 1
    return rank


def q_linear_rank(elems: Iterable[FieldElem]) -> int:
    """Dimension over Q of the span of ``elems``.

    ``{1, r_1, ..., r_l}`` having rank ``l + 1`` certifies that the r_i are
    Z-independent modulo Z.
    """
    elems = list(elems)
    if not elems:
        raise ValueError("empty sequence")
    F = elems[0].field
    rows = []
    for e in elems:
        e = e if isinstance(e, FieldElem) else F(e)
        if e.field is not F and not e.is_rational():
            raise FieldMismatch(f"{F} vs {e.field}")
        rows.append(list(e._num))
    width = max(len(r) for r in rows)
    cols = [k for k in range(width) if any(k < len(r) and r[k] for r in rows)]
    dense = [[r[k] if k < len(r) else 0 for k in cols] for r in rows]
    return _int_rank(dense)
