"""Classical Lie algebras in their standard representations, and seed matrices.

Fixed forms: sp(2l) preserves J = [[0, I], [-I, 0]] and so(2l) preserves
Q = [[0, I], [I, 0]], so in both cases the diagonal matrices
diag(d, -d) form a Cartan subalgebra.  Kinds A, C, D map to sl(l+1),
sp(2l), so(2l).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .cyclo import CycloField, FieldElem, cyclotomic_field, q_linear_rank, sqrt_conductor, sqrt_prime

__all__ = [
    "AlgebraTag",
    "LieMatrix",
    "Seed",
    "TorusCertificate",
    "SlopeResult",
    "UnsupportedShape",
    "algebra_for",
    "standard_form",
    "in_algebra",
    "algebra_basis",
    "first_primes",
    "torus_field",
    "generic_torus_seed",
    "principal_nilpotent",
    "ad_kernel_dim",
    "irregular_seed",
    "unique_slope",
]

QQ = cyclotomic_field(1)


@dataclass(frozen=True)
class AlgebraTag:
    name: str  # "sl", "sp", "so" or "gl"
    n: int

    @property
    def rank(self) -> int:
        return self.n - 1 if self.name == "sl" else self.n // 2 if self.name in ("sp", "so") else self.n

    @property
    def kind(self) -> str:
        return {"sl": "A", "sp": "C", "so": "D", "gl": "GL"}[self.name]

    @property
    def dim(self) -> int:
        n, l = self.n, self.n // 2
        return {"sl": n * n - 1, "sp": l * (2 * l + 1), "so": l * (2 * l - 1), "gl": n * n}[self.name]

    def __str__(self) -> str:
        return f"{self.name}{self.n}"


def algebra_for(kind: str, rank: int) -> AlgebraTag:
    kind = kind.upper()
    if kind == "A":
        return AlgebraTag("sl", rank + 1)
    if kind == "C":
        return AlgebraTag("sp", 2 * rank)
    if kind == "D":
        return AlgebraTag("so", 2 * rank)
    raise ValueError(f"no matrix model for kind {kind!r}")


def parse_algebra(text: str) -> AlgebraTag:
    """Parse names like 'sl2', 'sp4', 'so8'."""
    text = text.strip().lower()
    for name in ("sl", "sp", "so", "gl"):
        if text.startswith(name) and text[len(name):].isdigit():
            n = int(text[len(name):])
            if name in ("sp", "so") and n % 2:
                raise ValueError(f"{text}: dimension must be even")
            if (name == "sl" and n < 2) or (name == "sp" and n < 4) or (name == "so" and n < 6):
                raise ValueError(f"{text}: unsupported size")
            return AlgebraTag(name, n)
    raise ValueError(f"unknown algebra {text!r}")


def _E(n: int, i: int, j: int, F: CycloField = QQ, c=1) -> list[list[FieldElem]]:
    m = la.zeros(n, n, F.zero())
    m[i][j] = F(c)
    return m


def standard_form(tag: AlgebraTag, F: CycloField = QQ):
    n, l = tag.n, tag.n // 2
    if tag.name == "sp":
        m = la.zeros(n, n, F.zero())
        for i in range(l):
            m[i][l + i] = F.one()
            m[l + i][i] = -F.one()
        return m
    if tag.name == "so":
        m = la.zeros(n, n, F.zero())
        for i in range(l):
            m[i][l + i] = F.one()
            m[l + i][i] = F.one()
        return m
    return None


def in_algebra(entries: Sequence[Sequence], tag: AlgebraTag) -> bool:
    """Exact membership test via trace or the defining bilinear identity."""
    n = tag.n
    if len(entries) != n or any(len(r) != n for r in entries):
        return False
    if tag.name == "gl":
        return True
    if tag.name == "sl":
        return not la.trace(entries)
    l = n // 2
    # X^T S + S X = 0 written out entrywise for S = J or Q
    sgn = -1 if tag.name == "sp" else 1
    for i in range(n):
        for j in range(n):
            # (S X)_{ij} and (X^T S)_{ij}
            if i < l:
                sx = entries[l + i][j]
            else:
                sx = sgn * entries[i - l][j]
            if j < l:
                xts = sgn * entries[l + j][i]
            else:
                xts = entries[j - l][i]
            if sx + xts:
                return False
    return True


def algebra_basis(tag: AlgebraTag, F: CycloField = QQ) -> list[list[list[FieldElem]]]:
    """A basis over F of the algebra, as n x n matrices."""
    n, l = tag.n, tag.n // 2
    out = []

    def E(i, j, c=1):
        return _E(n, i, j, F, c)

    if tag.name == "gl":
        return [E(i, j) for i in range(n) for j in range(n)]
    if tag.name == "sl":
        for i in range(n):
            for j in range(n):
                if i != j:
                    out.append(E(i, j))
        for i in range(n - 1):
            out.append(la.mat_sub(E(i, i), E(n - 1, n - 1)))
        return out
    sym = 1 if tag.name == "sp" else -1
    for i in range(l):
        for j in range(l):
            out.append(la.mat_sub(E(i, j), E(l + j, l + i)))
    for i in range(l):
        for j in range(i, l):
            if i == j:
                if sym == 1:
                    out.append(E(i, l + i))
                    out.append(E(l + i, i))
                continue
            out.append(la.mat_add(E(i, l + j), E(j, l + i, sym)))
            out.append(la.mat_add(E(l + i, j), E(l + j, i, sym)))
    assert len(out) == tag.dim
    return out


@dataclass(frozen=True)
class LieMatrix:
    entries: tuple[tuple[FieldElem, ...], ...]
    algebra: AlgebraTag

    def __post_init__(self):
        if not in_algebra(self.entries, self.algebra):
            raise ValueError(f"matrix is not in {self.algebra}")

    @classmethod
    def make(cls, rows, algebra: AlgebraTag, F: CycloField | None = None) -> LieMatrix:
        F = F or _field_of(rows)
        return cls(tuple(tuple(F(x) for x in r) for r in rows), algebra)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def field(self) -> CycloField:
        return _field_of(self.entries)

    def rows(self) -> list[list[FieldElem]]:
        return [list(r) for r in self.entries]

    def embed(self, F: CycloField) -> LieMatrix:
        return LieMatrix(tuple(tuple(F(x) for x in r) for r in self.entries), self.algebra)

    def scaled(self, c) -> LieMatrix:
        return LieMatrix(tuple(tuple(x * c for x in r) for r in self.entries), self.algebra)

    def __add__(self, other: LieMatrix) -> LieMatrix:
        return LieMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
                         self.algebra)

    def is_zero(self) -> bool:
        return la.is_zero_matrix(self.entries)


def _field_of(rows) -> CycloField:
    best = QQ
    for r in rows:
        for x in r:
            if isinstance(x, FieldElem) and x.field.order > best.order:
                best = x.field
    return best


@dataclass(frozen=True)
class Seed:
    """Laurent polynomial sum_k jets[k] t^k prescribed at a point."""

    label: str
    role: str  # torus, nilpotent, irregular or maximally-toric
    jets: dict[int, LieMatrix] = field(default_factory=dict)
    witness: tuple[int, ...] | None = None  # Weyl word for maximally toric seeds

    @property
    def pole_order(self) -> int:
        nz = [k for k, v in self.jets.items() if not v.is_zero()]
        return max(0, -min(nz)) if nz else 0

    @property
    def algebra(self) -> AlgebraTag:
        return next(iter(self.jets.values())).algebra


# seeds ---------------------------------------------------------------------------

def first_primes(k: int) -> list[int]:
    out: list[int] = []
    c = 2
    while len(out) < k:
        if all(c % p for p in out if p * p <= c):
            out.append(c)
        c += 1
    return out


def torus_field(rank: int) -> CycloField:
    """Smallest cyclotomic field holding sqrt(p) for the first ``rank`` primes."""
    M = 1
    for p in first_primes(rank):
        M = math.lcm(M, sqrt_conductor(p))
    return cyclotomic_field(M)


@dataclass(frozen=True)
class TorusCertificate:
    primes: tuple[int, ...]
    values: tuple[FieldElem, ...]
    rank: int

    @property
    def independent(self) -> bool:
        """{1, r_1, ..., r_l} independent over Q, hence Z-independent mod Z."""
        return self.rank == len(self.values) + 1


def generic_torus_seed(kind: str, rank: int, F: CycloField | None = None) -> tuple[LieMatrix, TorusCertificate]:
    tag = algebra_for(kind, rank)
    F = F or torus_field(rank)
    primes = first_primes(rank)
    try:
        r = [sqrt_prime(p, F) for p in primes]
    except ValueError as exc:
        raise ValueError(f"field too small for the torus seed: {exc}") from None
    if tag.name == "sl":
        total = F.zero()
        for v in r:
            total = total + v
        diag = r + [-total]
    else:
        diag = r + [-v for v in r]
    n = tag.n
    m = la.zeros(n, n, F.zero())
    for i, v in enumerate(diag):
        m[i][i] = v
    cert = TorusCertificate(tuple(primes), tuple(r), q_linear_rank([F.one()] + r))
    return LieMatrix.make(m, tag, F), cert


def principal_nilpotent(kind: str, rank: int, F: CycloField = QQ) -> LieMatrix:
    """Sum of root vectors for all positive roots."""
    tag = algebra_for(kind, rank)
    n, l = tag.n, rank
    m = la.zeros(n, n, F.zero())
    one = F.one()
    if tag.name == "sl":
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = one
        return LieMatrix.make(m, tag, F)
    sym = 1 if tag.name == "sp" else -1
    for i in range(l):
        for j in range(i + 1, l):
            # e_i - e_j
            m[i][j] += one
            m[l + j][l + i] -= one
            # e_i + e_j
            m[i][l + j] += one
            m[j][l + i] += sym * one
        if tag.name == "sp":
            m[i][l + i] += one  # 2 e_i
    return LieMatrix.make(m, tag, F)


def ad_kernel_dim(X: LieMatrix) -> int:
    """dim of the centralizer of X inside its algebra."""
    tag = X.algebra
    F = X.field
    basis = algebra_basis(tag, F)
    A = X.rows()
    cols = []
    for Y in basis:
        c = la.mat_sub(la.matmul(A, Y), la.matmul(Y, A))
        cols.append([x for r in c for x in r])
    mat = la.transpose(cols)
    return tag.dim - la.rank(mat)


def irregular_seed(kind: str, rank: int, F: CycloField = QQ, alt_sign: bool = False) -> Seed:
    """Jets A01 t^-2 + A02 t^-1 with A01 + A02 semisimple with char poly x^n - 1.

    For type C the blocks [[U, 0], [V, -U]] and [[0, s V], [0, 0]] are moved
    into sp(J) by reversing the second block of coordinates.  The sign
    s = (-1)^(l+1) gives x^(2l) - 1; ``alt_sign`` uses s = (-1)^l, which
    gives x^(2l) + 1 instead.
    """
    tag = algebra_for(kind, rank)
    n = tag.n
    one = F.one()
    A01 = la.zeros(n, n, F.zero())
    A02 = la.zeros(n, n, F.zero())
    if tag.name == "sl":
        for i in range(n - 1):
            A01[i + 1][i] = one
        A02[0][n - 1] = one
    elif tag.name == "sp":
        l = rank
        s = (-1) ** (l if alt_sign else l + 1)
        for i in range(l - 1):
            A01[i + 1][i] = one          # U
            A01[l + i][l + i + 1] = -one  # -U^T
        A01[2 * l - 1][l - 1] = one       # V after reversal
        A02[0][l] = s * one
    else:
        raise ValueError("irregular seeds exist only for kinds A and C")
    return Seed(
        label=f"irregular-{kind}{rank}",
        role="irregular",
        jets={-2: LieMatrix.make(A01, tag, F), -1: LieMatrix.make(A02, tag, F)},
    )


class UnsupportedShape(ValueError):
    """Seed is not of the weighted cyclic shape handled by unique_slope."""


@dataclass(frozen=True)
class SlopeResult:
    slope: Fraction
    irregular: bool
    n: int
    leading_exponent: Fraction | None = None
    shear: tuple[Fraction, ...] = ()
    leading: tuple[tuple[FieldElem, ...], ...] = ()
    charpoly: tuple[FieldElem, ...] = ()
    note: str = ""

    @property
    def coprime(self) -> bool:
        return math.gcd(self.slope.numerator, self.slope.denominator) == 1


def unique_slope(jets: dict[int, LieMatrix] | Seed) -> SlopeResult:
    """Slope at a pole given by finitely many jets, via diagonal shearing.

    The supported shape is a leading part sum_k jets[k] whose nonzero entries
    form one weighted n-cycle (one entry per row and column).  Shearing by
    diag(t^d_i) moves every entry of that cycle to a common exponent e;
    the reported slope is -e, so a double pole with one simple-pole link
    gives 2 - 1/n.
    """
    if isinstance(jets, Seed):
        jets = jets.jets
    nz = {k: v for k, v in jets.items() if not v.is_zero()}
    if not nz:
        return SlopeResult(Fraction(0), False, 1, note="regular")
    low = min(nz)
    n = next(iter(nz.values())).n
    if low >= -1:
        return SlopeResult(Fraction(0), False, n, note="not irregular")
    polar = {k: v for k, v in nz.items() if k < 0}
    # assemble the pattern of the polar part: entry (i, j) -> exponent
    edge: dict[int, tuple[int, int, FieldElem]] = {}
    for k in sorted(polar):
        for i, row in enumerate(polar[k].entries):
            for j, x in enumerate(row):
                if x:
                    if i in edge:
                        raise UnsupportedShape("more than one polar entry in a row")
                    edge[i] = (j, k, x)
    if sorted(edge) != list(range(n)) or sorted(e[0] for e in edge.values()) != list(range(n)):
        raise UnsupportedShape("polar part is not a weighted permutation")
    # walk the cycle containing row 0: entry (i, j) sends column j to row i
    inv = {j: (i, k) for i, (j, k, _) in edge.items()}
    order = [0]
    while True:
        i, _ = inv[order[-1]]
        if i == 0:
            break
        order.append(i)
    if len(order) != n:
        raise UnsupportedShape("polar part is not a single cycle")
    weight = sum(edge[i][1] for i in range(n))
    e = Fraction(weight, n)
    # d_i - d_j = e - k along each entry (i, j, k)
    d = {0: Fraction(0)}
    for j in order:
        i, k = inv[j]
        if i not in d:
            d[i] = d[j] + e - k
    dmin = min(d.values())
    shear = tuple(d[i] - dmin for i in range(n))
    for (i, (j, k, _)) in edge.items():
        assert k + shear[i] - shear[j] == e
    # every other jet must sit strictly above e after shearing
    for k, v in nz.items():
        for i, row in enumerate(v.entries):
            for j, x in enumerate(row):
                if x and k + shear[i] - shear[j] < e:
                    raise UnsupportedShape("a jet entry lies below the sheared leading term")
                if x and k + shear[i] - shear[j] == e and edge[i][0] != j:
                    raise UnsupportedShape("extra entry in the sheared leading term")
    F = next(iter(nz.values())).field
    lead = la.zeros(n, n, F.zero())
    for i, (j, k, x) in edge.items():
        lead[i][j] = x
    cp = la.charpoly(lead)
    # weighted n-cycle: char poly x^n - c with c != 0, hence distinct roots
    if any(cp[k] for k in range(1, n)) or not cp[0]:
        raise UnsupportedShape("sheared leading term is not semisimple")
    slope = -e
    return SlopeResult(
        slope=slope,
        irregular=True,
        n=slope.denominator,
        leading_exponent=e,
        shear=shear,
        leading=tuple(tuple(r) for r in lead),
        charpoly=tuple(cp),
    )
