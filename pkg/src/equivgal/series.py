"""Truncated Laurent series over a cyclotomic field, and Puiseux matrices.

:class:`Laurent` is a scalar series sum_{k >= val} c_k t^k known up to
``O(t^prec)`` (``prec=None`` means the stored sum is exact).

:class:`PuiseuxMatrix` is a finite sum of matrices times rational powers
t^e with every e in (1/m)Z; an optional truncation order records that
terms of exponent above it were dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .cyclo import CycloField, FieldElem, cyclotomic_field

QQ = cyclotomic_field(1)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Laurent:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, F: CycloField, val: int, coeffs: Sequence, prec: int | None = None):
        coeffs = [F(c) for c in coeffs]
        # strip leading and trailing zeros
        lo = 0
        while lo < len(coeffs) and not coeffs[lo]:
            lo += 1
        hi = len(coeffs)
        while hi > lo and not coeffs[hi - 1]:
            hi -= 1
        coeffs = coeffs[lo:hi]
        val += lo
        if prec is not None:
            keep = max(0, prec - val)
            coeffs = coeffs[:keep]
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        if not coeffs:
            val = prec if prec is not None else 0
        self.field = F
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def const(cls, F: CycloField, c, prec: int | None = None) -> Laurent:
        return cls(F, 0, [c], prec)

    @classmethod
    def monomial(cls, F: CycloField, k: int, c=1, prec: int | None = None) -> Laurent:
        return cls(F, k, [c], prec)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int | None:
        return self.val if self.coeffs else None

    def coeff(self, k: int) -> FieldElem:
        if self.prec is not None and k >= self.prec:
            raise ValueError(f"coefficient of t^{k} is beyond the precision O(t^{self.prec})")
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def terms(self) -> dict[int, FieldElem]:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c}

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{k}" for k, c in self.terms().items()) or "0"
        return body + (f" + O(t^{self.prec})" if self.prec is not None else "")

    def __add__(self, other: Laurent) -> Laurent:
        prec = _min_prec(self.prec, other.prec)
        terms = dict(self.terms())
        for k, c in other.terms().items():
            terms[k] = terms.get(k, self.field.zero()) + c
        return Laurent._from_terms(self.field, terms, prec)

    def __neg__(self) -> Laurent:
        return Laurent(self.field, self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other: Laurent) -> Laurent:
        return self + (-other)

    def scale(self, c) -> Laurent:
        return Laurent(self.field, self.val, [c * x for x in self.coeffs], self.prec)

    @staticmethod
    def _from_terms(F, terms: dict, prec) -> Laurent:
        terms = {k: v for k, v in terms.items() if v and (prec is None or k < prec)}
        if not terms:
            return Laurent(F, 0, [], prec)
        lo, hi = min(terms), max(terms)
        return Laurent(F, lo, [terms.get(k, F.zero()) for k in range(lo, hi + 1)], prec)

    def __mul__(self, other: Laurent) -> Laurent:
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        F = self.field
        if (not self.coeffs and self.prec is None) or (not other.coeffs and other.prec is None):
            return Laurent(F, 0, [], None)
        # relative precisions
        cand = []
        if self.prec is not None:
            cand.append(self.prec + (other.val if other.coeffs else (other.prec or 0)))
        if other.prec is not None:
            cand.append(other.prec + (self.val if self.coeffs else (self.prec or 0)))
        prec = min(cand) if cand else None
        if not self.coeffs or not other.coeffs:
            return Laurent(F, 0, [], prec)
        val = self.val + other.val
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec is not None:
            n = min(n, max(0, prec - val))
        out = [None] * n
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if b:
                    out[i + j] = a * b if out[i + j] is None else out[i + j] + a * b
        return Laurent(F, val, [F.zero() if v is None else v for v in out], prec)

    __rmul__ = __mul__

    def truncate(self, prec: int) -> Laurent:
        return Laurent(self.field, self.val, self.coeffs, _min_prec(self.prec, prec))

    def inverse(self, prec: int) -> Laurent:
        """Multiplicative inverse known through O(t^prec)."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a zero series")
        v = self.val
        need = prec + v  # relative length needed
        if self.prec is not None and self.prec - v < need:
            raise ValueError("not enough precision for the requested inverse")
        a = self.coeffs
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, max(need, 1)):
            s = self.field.zero()
            for j in range(1, min(k, len(a) - 1) + 1):
                if a[j]:
                    s = s + a[j] * b[k - j]
            b.append(-s * inv0)
        return Laurent(self.field, -v, b[: max(need, 0)], prec)

    def derivative(self) -> Laurent:
        terms = {k - 1: c * k for k, c in self.terms().items() if k}
        return Laurent._from_terms(self.field, terms, None if self.prec is None else self.prec - 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.terms() == other.terms() and self.prec == other.prec


# ---------------------------------------------------------------------------

Mat = tuple[tuple[FieldElem, ...], ...]


def _freeze(m) -> Mat:
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True)
class PuiseuxMatrix:
    """Finite sum of matrix coefficients times t^e, e in (1/m) Z."""

    m: int
    terms: dict[Fraction, Mat]
    size: int
    truncation: Fraction | None = None

    def __post_init__(self):
        for e in self.terms:
            if (e * self.m).denominator != 1:
                raise ValueError(f"exponent {e} is not a multiple of 1/{self.m}")

    @staticmethod
    def build(terms: dict, size: int, truncation=None) -> PuiseuxMatrix:
        clean = {}
        for e, mat in terms.items():
            e = Fraction(e)
            if truncation is not None and e > truncation:
                continue
            if not la.is_zero_matrix(mat):
                clean[e] = _freeze(mat)
        m = 1
        for e in clean:
            m = math.lcm(m, e.denominator)
        return PuiseuxMatrix(m, dict(sorted(clean.items())), size,
                             None if truncation is None else Fraction(truncation))

    @staticmethod
    def constant(mat, truncation=None) -> PuiseuxMatrix:
        return PuiseuxMatrix.build({Fraction(0): mat}, len(mat), truncation)

    @property
    def field(self) -> CycloField:
        best = QQ
        for mat in self.terms.values():
            for r in mat:
                for x in r:
                    if x.field.order > best.order:
                        best = x.field
        return best

    def _zero(self):
        return la.zeros(self.size, self.size, self.field.zero())

    def __add__(self, other: PuiseuxMatrix) -> PuiseuxMatrix:
        terms = {e: [list(r) for r in mat] for e, mat in self.terms.items()}
        for e, mat in other.terms.items():
            terms[e] = la.mat_add(terms[e], mat) if e in terms else [list(r) for r in mat]
        return PuiseuxMatrix.build(terms, self.size, _min_prec(self.truncation, other.truncation))

    def __neg__(self) -> PuiseuxMatrix:
        return PuiseuxMatrix.build({e: la.mat_scale(-1, mat) for e, mat in self.terms.items()},
                                   self.size, self.truncation)

    def __sub__(self, other: PuiseuxMatrix) -> PuiseuxMatrix:
        return self + (-other)

    def __matmul__(self, other: PuiseuxMatrix) -> PuiseuxMatrix:
        if self.truncation is not None or other.truncation is not None:
            raise ValueError("products of truncated Puiseux matrices are not supported")
        terms: dict[Fraction, list] = {}
        for e1, a in self.terms.items():
            for e2, b in other.terms.items():
                p = la.matmul(a, b)
                e = e1 + e2
                terms[e] = la.mat_add(terms[e], p) if e in terms else p
        return PuiseuxMatrix.build(terms, self.size)

    def scale(self, c) -> PuiseuxMatrix:
        return PuiseuxMatrix.build({e: la.mat_scale(c, mat) for e, mat in self.terms.items()},
                                   self.size, self.truncation)

    def conjugate_by(self, g, g_inv) -> PuiseuxMatrix:
        """g^-1 X g applied termwise."""
        return PuiseuxMatrix.build({e: la.matmul(la.matmul(g_inv, mat), g) for e, mat in self.terms.items()},
                                   self.size, self.truncation)

    def derivative(self) -> PuiseuxMatrix:
        return PuiseuxMatrix.build({e - 1: la.mat_scale(e, mat) for e, mat in self.terms.items() if e},
                                   self.size, None if self.truncation is None else self.truncation - 1)

    def gamma(self, order: int, F: CycloField | None = None) -> PuiseuxMatrix:
        """Apply t^(1/order) -> zeta_order t^(1/order) to every coefficient."""
        F = F or self.field
        out = {}
        for e, mat in self.terms.items():
            k = e * order
            if k.denominator != 1:
                raise ValueError(f"exponent {e} is not in (1/{order})Z")
            z = F.zeta(int(k), order)
            out[e] = la.mat_scale(z, mat)
        return PuiseuxMatrix.build(out, self.size, self.truncation)

    def apply(self, fn) -> PuiseuxMatrix:
        return PuiseuxMatrix.build({e: fn(mat) for e, mat in self.terms.items()}, self.size, self.truncation)

    def truncated(self, order) -> PuiseuxMatrix:
        return PuiseuxMatrix.build(dict(self.terms), self.size, _min_prec(self.truncation, Fraction(order)))

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.terms)

    def coefficient(self, e) -> Mat:
        e = Fraction(e)
        if e in self.terms:
            return self.terms[e]
        return _freeze(self._zero())

    def min_exponent(self) -> Fraction | None:
        return min(self.terms) if self.terms else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxMatrix):
            return NotImplemented
        return self.size == other.size and self.terms == other.terms and self.truncation == other.truncation

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "size": self.size,
            "truncation": None if self.truncation is None else str(self.truncation),
            "terms": [
                {"exp_num": e.numerator, "exp_den": e.denominator,
                 "matrix": [[x.to_json() for x in r] for r in mat]}
                for e, mat in self.terms.items()
            ],
        }

    @staticmethod
    def from_json(data: dict) -> PuiseuxMatrix:
        terms = {
            Fraction(t["exp_num"], t["exp_den"]): [[FieldElem.from_json(x) for x in r] for r in t["matrix"]]
            for t in data["terms"]
        }
        trunc = data.get("truncation")
        return PuiseuxMatrix.build(terms, int(data["size"]), None if trunc is None else Fraction(trunc))
