"""Local models at maximally toric points.

Given a Weyl word, the lift g is a signed permutation matrix normalizing the
diagonal torus.  From it we build

* eta, a Puiseux matrix with eta^gamma' = eta g, where gamma' sends
  t^(1/m') to zeta_m' t^(1/m') and m' is the order of g;
* A~, a Puiseux matrix in the torus algebra with A~^gamma = g^-1 A~ g,
  where gamma sends t^(1/m) to zeta_m t^(1/m) and m is the order of the
  induced action on the torus;
* the glued model A_bar = eta' eta^-1 + eta A~ eta^-1, which has integral
  exponents only.

All eigenvectors are explicit finite Fourier sums over cycles of the
underlying permutation, so no general eigensolver is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .cyclo import CycloField, FieldElem, _factor, cyclotomic_field, sqrt_conductor, sqrt_rational
from .lie import AlgebraTag, algebra_for, in_algebra
from .series import PuiseuxMatrix

__all__ = [
    "ToricWitness",
    "HilbertEta",
    "weyl_lift",
    "hilbert90_eta",
    "toric_equation",
    "toric_model",
    "toric_field",
    "check_eta_identity",
    "check_toric_identity",
    "glue",
]


@dataclass(frozen=True)
class ToricWitness:
    kind: str
    rank: int
    word: tuple[int, ...]
    g: tuple[tuple[int, ...], ...]
    order: int
    perm: tuple[int, ...]   # g e_j = signs[j] e_perm[j]
    signs: tuple[int, ...]
    torus_order: int        # order of X -> g^-1 X g on the diagonal torus

    @property
    def algebra(self) -> AlgebraTag:
        return algebra_for(self.kind, self.rank)

    @property
    def torus_rank(self) -> int:
        return self.rank

    @property
    def n(self) -> int:
        return len(self.g)

    def matrix(self, F: CycloField) -> list[list[FieldElem]]:
        return [[F(x) for x in r] for r in self.g]

    def inverse_matrix(self, F: CycloField) -> list[list[FieldElem]]:
        # signed permutation matrices are orthogonal
        return [[F(self.g[j][i]) for j in range(self.n)] for i in range(self.n)]

    def torus_action(self, diag: Sequence) -> list:
        """Diagonal of g^-1 diag(x) g."""
        return [diag[self.perm[j]] for j in range(self.n)]

    def cycles(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            c = []
            i = s
            while not seen[i]:
                seen[i] = True
                c.append(i)
                i = self.perm[i]
            out.append(c)
        return out


def _simple_lift(kind: str, l: int, i: int) -> list[list[int]]:
    tag = algebra_for(kind, l)
    n = tag.n
    m = [[int(a == b) for b in range(n)] for a in range(n)]

    def rot(a, b):
        # e_a -> -e_b, e_b -> e_a
        m[a][a] = m[b][b] = 0
        m[a][b] = 1
        m[b][a] = -1

    def swap(a, b):
        m[a][a] = m[b][b] = 0
        m[a][b] = m[b][a] = 1

    if not 1 <= i <= l:
        raise ValueError(f"simple reflection {i} out of range")
    if tag.name == "sl":
        rot(i - 1, i)
    elif i < l:
        swap(i - 1, i)
        swap(l + i - 1, l + i)
    elif tag.name == "sp":
        rot(l - 1, 2 * l - 1)
    else:
        swap(l - 2, 2 * l - 1)
        swap(l - 1, 2 * l - 2)
    return m


def _perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for s in range(len(p)):
        if seen[s]:
            continue
        L = 0
        i = s
        while not seen[i]:
            seen[i] = True
            i = p[i]
            L += 1
        order = math.lcm(order, L)
    return order


def weyl_lift(kind: str, rank: int, word: Sequence[int]) -> ToricWitness:
    """Signed permutation lift of the Weyl element S_w1 S_w2 ... S_wk."""
    kind = kind.upper()
    if kind not in ("A", "C", "D"):
        raise ValueError(f"no matrix lift implemented for kind {kind}")
    tag = algebra_for(kind, rank)
    n = tag.n
    g = [[int(a == b) for b in range(n)] for a in range(n)]
    for i in word:
        g = [[sum(x * y for x, y in zip(row, col)) for col in zip(*_simple_lift(kind, rank, i))] for row in g]
    perm, signs = [0] * n, [0] * n
    for j in range(n):
        (i,) = [a for a in range(n) if g[a][j]]
        perm[j], signs[j] = i, g[i][j]
    # order by exact powering
    ident = [[int(a == b) for b in range(n)] for a in range(n)]
    power = g
    order = 1
    while power != ident:
        power = [[sum(x * y for x, y in zip(row, col)) for col in zip(*g)] for row in power]
        order += 1
        if order > 10_000:
            raise ArithmeticError("lift does not have finite order")
    # X -> g^-1 X g permutes diagonal entries by perm; on diag(d, -d) this is
    # a signed permutation of d with the same order
    torus_order = _perm_order(perm)
    return ToricWitness(kind, rank, tuple(word), tuple(tuple(r) for r in g), order,
                        tuple(perm), tuple(signs), torus_order)


# eigen data -------------------------------------------------------------------

def _cycle_data(w: ToricWitness):
    """Per cycle: coordinates c_0..c_{L-1} with g^j e_{c0} = mult_j e_{c_j}, and the sign product."""
    out = []
    for c in w.cycles():
        mult = [1]
        for j in range(len(c) - 1):
            mult.append(mult[-1] * w.signs[c[j]])
        S = mult[-1] * w.signs[c[-1]]
        out.append((c, mult, S))
    return out


def _eigenpairs(w: ToricWitness, F: CycloField):
    """Eigenvectors of g as (vector, k, cycle index) with eigenvalue zeta_m'^k, 0 <= k < m'."""
    mp = w.order
    pairs = []
    for ci, (c, mult, S) in enumerate(_cycle_data(w)):
        L = len(c)
        for a in range(L):
            # lambda^L = S; lambda = zeta_m'^k
            if S == 1:
                num = a * mp
                den = L
            else:
                num = (2 * a + 1) * mp
                den = 2 * L
            assert num % den == 0
            k = (num // den) % mp
            lam_inv = F.zeta(-k, mp)
            v = [F.zero()] * w.n
            coef = F.one()
            for j, idx in enumerate(c):
                v[idx] = coef * mult[j]
                coef = coef * lam_inv
            pairs.append((v, k, ci))
    return pairs


def toric_field(w: ToricWitness) -> CycloField:
    """A cyclotomic field holding every constant of the local model for ``w``."""
    M = math.lcm(w.order, w.torus_order, 1)
    if w.algebra.name == "so":
        for q in _so_sqrt_needs(w):
            M = math.lcm(M, _sqrt_order(q))
    return cyclotomic_field(M)


def _sqrt_order(q: Fraction) -> int:
    q = Fraction(q)
    num = q.numerator * q.denominator
    M = 4 if num < 0 else 1
    for p, e in _factor(abs(num)).items():
        if e % 2:
            M = math.lcm(M, sqrt_conductor(p))
    return M


def _pair(a: int, l: int) -> int:
    return (a + l) % (2 * l)


def _self_paired(c: list[int], l: int) -> bool:
    return _pair(c[0], l) in c


def _bilinear(u, v, tag: AlgebraTag):
    l = tag.n // 2
    s = u[0] * 0
    sgn = -1 if tag.name == "sp" else 1
    for a in range(l):
        if u[a] and v[l + a]:
            s = s + u[a] * v[l + a]
        if u[l + a] and v[a]:
            s = s + sgn * u[l + a] * v[a]
    return s


def _so_minus_one_vectors(w: ToricWitness, F: CycloField):
    cyc = _cycle_data(w)
    l = w.rank
    vecs = []
    for ci, (c, mult, S) in enumerate(cyc):
        if _self_paired(c, l) and (S == 1 and len(c) % 2 == 0 or S == -1 and len(c) % 2 == 1):
            v = [F.zero()] * w.n
            coef = 1
            for j, idx in enumerate(c):
                v[idx] = F(coef * mult[j])
                coef = -coef
            vecs.append((ci, v))
    return vecs


def _so_sqrt_needs(w: ToricWitness) -> list[Fraction]:
    QQ = cyclotomic_field(1)
    vecs = _so_minus_one_vectors(w, QQ)
    needs = []
    for a in range(0, len(vecs) - 1, 2):
        qa = _bilinear(vecs[a][1], vecs[a][1], w.algebra).to_fraction()
        qb = _bilinear(vecs[a + 1][1], vecs[a + 1][1], w.algebra).to_fraction()
        needs.append(-qa / qb)
    return needs


@dataclass(frozen=True)
class HilbertEta:
    eta: PuiseuxMatrix
    inverse: PuiseuxMatrix
    vectors: tuple[tuple[FieldElem, ...], ...]
    exponents: tuple[int, ...]   # eta = P diag(t^(k_i/m')) P^-1
    order: int


def hilbert90_eta(w: ToricWitness, F: CycloField | None = None, balanced: bool = False) -> HilbertEta:
    """eta = P diag(t^(k_i/m')) P^-1 with g = P diag(zeta_m'^k_i) P^-1.

    By default 0 <= k_i < m'.  With ``balanced`` the k_i are shifted by
    multiples of m' (and, for so, the -1 eigenvectors recombined) so that
    diag(k_i) lies in the Lie algebra; then eta' eta^-1 does as well.
    """
    F = F or toric_field(w)
    mp = w.order
    tag = w.algebra
    pairs = _eigenpairs(w, F)
    vecs = [p[0] for p in pairs]
    ks = [p[1] for p in pairs]
    if balanced:
        vecs, ks = _balance(w, F, pairs)
    P = la.transpose(vecs)
    Pinv = la.inverse(P)
    n = w.n
    terms: dict[Fraction, list] = {}
    inv_terms: dict[Fraction, list] = {}
    for i, k in enumerate(ks):
        col = [P[r][i] for r in range(n)]
        row = Pinv[i]
        proj = [[col[r] * row[s] if col[r] and row[s] else F.zero() for s in range(n)] for r in range(n)]
        for e, store in ((Fraction(k, mp), terms), (Fraction(-k, mp), inv_terms)):
            store[e] = la.mat_add(store[e], proj) if e in store else proj
    eta = PuiseuxMatrix.build(terms, n)
    inv = PuiseuxMatrix.build(inv_terms, n)
    return HilbertEta(eta, inv, tuple(tuple(v) for v in vecs), tuple(ks), mp)


def _balance(w: ToricWitness, F: CycloField, pairs):
    mp = w.order
    tag = w.algebra
    if tag.name == "sl":
        ks = [k for _, k, _ in pairs]
        total = sum(ks)
        assert total % mp == 0, "det g = 1 forces sum k = 0 mod m'"
        shift = total // mp
        order = sorted(range(len(ks)), key=lambda i: (-ks[i], i))
        for i in order[:shift]:
            ks[i] -= mp
        return [p[0] for p in pairs], ks
    l = w.rank
    cyc = _cycle_data(w)
    cycle_of = {}
    for ci, (c, _, _) in enumerate(cyc):
        for a in c:
            cycle_of[a] = ci
    vecs, ks = [], []
    minus_one = {ci: v for ci, v in (_so_minus_one_vectors(w, F) if tag.name == "so" else [])}
    for v, k, ci in pairs:
        c = cyc[ci][0]
        partner = cycle_of[_pair(c[0], l)]
        if partner != ci:
            # paired cycles: the lower-indexed one keeps k, its partner gets -k
            if ci < partner:
                ks.append(k)
            else:
                ks.append(k - mp if k else 0)
            vecs.append(v)
            continue
        if ci in minus_one and 2 * k == mp:
            continue  # recombined below
        ks.append(k if 2 * k < mp else k - mp)
        vecs.append(v)
    # recombine -1 eigenvectors of self-paired cycles into isotropic pairs
    items = sorted(minus_one.items())
    if len(items) % 2:
        raise ArithmeticError("odd number of self-paired -1 eigenvectors")
    for a in range(0, len(items), 2):
        va, vb = items[a][1], items[a + 1][1]
        qa, qb = _bilinear(va, va, tag), _bilinear(vb, vb, tag)
        c = sqrt_rational(-(qa.to_fraction()) / qb.to_fraction(), F)
        u = [x + c * y for x, y in zip(va, vb)]
        v = [x - c * y for x, y in zip(va, vb)]
        vecs += [u, v]
        ks += [mp // 2, -(mp // 2)]
    _check_pairing(ks, vecs, tag, w)
    return vecs, ks


def _check_pairing(ks, vecs, tag, w):
    # diag(k) must lie in the algebra: B(v_i, v_j) != 0 only if k_i + k_j = 0
    for i in range(len(vecs)):
        for j in range(i, len(vecs)):
            if ks[i] + ks[j] and _bilinear(vecs[i], vecs[j], tag):
                raise ArithmeticError("balancing failed: eigen exponents are not paired")


def check_eta_identity(eta: PuiseuxMatrix, g, order: int, F: CycloField | None = None) -> bool:
    """eta^gamma' == eta g, with gamma' of the given order."""
    F = F or eta.field
    lhs = eta.gamma(order, F)
    rhs = eta.apply(lambda m: la.matmul(m, g))
    return lhs == rhs


# torus equation ------------------------------------------------------------------

def _torus_eigenbasis(w: ToricWitness, F: CycloField):
    """Eigenvectors (diagonals) of X -> g^-1 X g on the Cartan subalgebra.

    Returns a list of (diagonal vector, q) where the eigenvalue is zeta_m^-q.
    """
    m = w.torus_order
    n = w.n
    tag = w.algebra
    # the action permutes diagonal entries: new_j = old_perm[j]
    seen = [False] * n
    cycles = []
    for s in range(n):
        if not seen[s]:
            c = []
            i = s
            while not seen[i]:
                seen[i] = True
                c.append(i)
                i = w.perm[i]
            cycles.append(c)
    raw = []
    for c in cycles:
        L = len(c)
        for a in range(L):
            # x_{c_j} = mu^j satisfies new_{c_j} = x_{c_{j+1}} = mu x_{c_j}
            mu_k = (a * m // L) % m  # mu = zeta_m^mu_k
            v = [F.zero()] * n
            for j, idx in enumerate(c):
                v[idx] = F.zeta(mu_k * j, m)
            raw.append((v, (-mu_k) % m, len(raw)))
    out = []
    if tag.name == "sl":
        ones = [(v, q) for v, q, _ in raw if q == 0]
        out = [(v, q) for v, q, _ in raw if q != 0]
        # cycle indicators have trace equal to the cycle length; weight them so differences are traceless
        size = [sum(1 for x in v if x) for v, _ in ones]
        for i in range(len(ones) - 1):
            out.append(([x * size[-1] - y * size[i] for x, y in zip(ones[i][0], ones[-1][0])], 0))
    else:
        l = w.rank
        for v, q, _ in raw:
            anti = [v[a] - v[_pair(a, l)] for a in range(n)]
            if any(anti):
                out.append((anti, q))
    # keep an independent subset per eigenvalue
    basis = []
    for q in sorted({q for _, q in out}):
        chosen = []
        for v, qq in out:
            if qq != q:
                continue
            if la.rank(chosen + [v]) > len(chosen):
                chosen.append(v)
        basis += [(v, q) for v in chosen]
    assert len(basis) == w.rank, "Cartan subalgebra dimension mismatch"
    return basis


def toric_equation(w: ToricWitness, F: CycloField | None = None) -> PuiseuxMatrix:
    """A~ = sum_q z^(-q/m) sum_{j=1}^{r_q} z^(-j-1) b_{j,q}."""
    F = F or toric_field(w)
    m = w.torus_order
    n = w.n
    basis = _torus_eigenbasis(w, F)
    terms: dict[Fraction, list] = {}
    count: dict[int, int] = {}
    for v, q in basis:
        j = count.get(q, 0) + 1
        count[q] = j
        e = Fraction(-q, m) - j - 1
        mat = la.zeros(n, n, F.zero())
        for a in range(n):
            mat[a][a] = v[a]
        terms[e] = la.mat_add(terms[e], mat) if e in terms else mat
    return PuiseuxMatrix.build(terms, n)


def check_toric_identity(at: PuiseuxMatrix, w: ToricWitness, F: CycloField | None = None) -> bool:
    """A~^gamma == g^-1 A~ g."""
    F = F or at.field
    lhs = at.gamma(w.torus_order, F)
    rhs = at.conjugate_by(w.matrix(F), w.inverse_matrix(F))
    return lhs == rhs


def glue(eta: PuiseuxMatrix, eta_inv: PuiseuxMatrix, at: PuiseuxMatrix) -> PuiseuxMatrix:
    """eta' eta^-1 + eta A~ eta^-1."""
    return eta.derivative() @ eta_inv + eta @ at @ eta_inv


def toric_model(
    w: ToricWitness,
    F: CycloField | None = None,
    q_trunc: int = 0,
    eta: HilbertEta | None = None,
    atilde: PuiseuxMatrix | None = None,
) -> PuiseuxMatrix:
    """The glued model truncated after t^q_trunc; exponents must be integral."""
    F = F or toric_field(w)
    eta = eta or hilbert90_eta(w, F, balanced=True)
    atilde = atilde if atilde is not None else toric_equation(w, F)
    full = glue(eta.eta, eta.inverse, atilde)
    if not full.is_integral():
        bad = [e for e in full.terms if e.denominator != 1]
        raise ArithmeticError(f"fractional exponents survived gluing: {bad}")
    out = full.truncated(q_trunc)
    for mat in out.terms.values():
        if not in_algebra(mat, w.algebra):
            raise ArithmeticError("glued model left the Lie algebra")
    return out
