"""Cartan data and minuscule weight orbits.

Weights are integer tuples in fundamental-weight coordinates, so
``lam[i] = <lam, alpha_i^vee>``.  Simple roots are numbered as in Bourbaki;
for E6/E7 the branch node 2 hangs off node 4 of the chain 1-3-4-5-6(-7).
Indices passed to :func:`reflect` are 1-based like the simple-root labels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

Weight = tuple[int, ...]

KINDS = ("A", "B", "C", "D", "E6", "E7")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]

    @property
    def name(self) -> str:
        return self.kind if self.kind.startswith("E") else f"{self.kind}{self.rank}"


def _eps_simple_roots(kind: str, l: int) -> list[list[Fraction]]:
    def e(i):
        v = [Fraction(0)] * l
        v[i] = Fraction(1)
        return v

    def diff(i, j, sign=-1):
        v = e(i)
        v[j] += sign
        return v

    roots = [diff(i, i + 1) for i in range(l - 1)]
    if kind == "B":
        roots.append(e(l - 1))
    elif kind == "C":
        roots.append([2 * x for x in e(l - 1)])
    elif kind == "D":
        roots.append(diff(l - 2, l - 1, sign=+1))
    return roots


def _cartan_from_roots(roots) -> tuple[tuple[int, ...], ...]:
    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    out = []
    for a in roots:
        row = []
        for b in roots:
            c = 2 * dot(a, b) / dot(a, a)
            assert c.denominator == 1
            row.append(int(c))
        out.append(tuple(row))
    return tuple(out)


def _simply_laced(n: int, edges) -> tuple[tuple[int, ...], ...]:
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        m[a - 1][b - 1] = m[b - 1][a - 1] = -1
    return tuple(tuple(r) for r in m)


def root_system(kind: str, rank: int | None = None) -> RootSystem:
    kind = kind.upper()
    if kind == "E" and rank in (6, 7):
        kind = f"E{rank}"
    if kind in ("E6", "E7"):
        n = int(kind[1])
        if rank not in (None, n):
            raise ValueError(f"{kind} has rank {n}")
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if n == 7:
            edges.append((6, 7))
        return RootSystem(kind, n, _simply_laced(n, edges))
    if kind not in _MIN_RANK:
        raise ValueError(f"unsupported kind {kind!r}")
    if rank is None or rank < _MIN_RANK[kind]:
        raise ValueError(f"{kind} needs rank >= {_MIN_RANK[kind]}")
    if kind == "A":
        # A_l lives in the sum-zero hyperplane of Q^(l+1)
        roots = []
        for i in range(rank):
            v = [Fraction(0)] * (rank + 1)
            v[i], v[i + 1] = Fraction(1), Fraction(-1)
            roots.append(v)
    else:
        roots = _eps_simple_roots(kind, rank)
    return RootSystem(kind, rank, _cartan_from_roots(roots))


def minuscule_weights(kind: str, rank: int | None = None) -> list[Weight]:
    rs = root_system(kind, rank)
    l = rs.rank

    def w(i):
        return tuple(1 if j == i - 1 else 0 for j in range(l))

    k = rs.kind
    if k == "A":
        idx = range(1, l + 1)
    elif k == "B":
        idx = [l]
    elif k == "C":
        idx = [1]
    elif k == "D":
        idx = [1, l - 1, l]
    elif k == "E6":
        idx = [1, 6]
    else:
        idx = [7]
    return [w(i) for i in idx]


def reflect(rs: RootSystem, i: int, lam: Weight) -> Weight:
    """Simple reflection s_i applied to ``lam`` (i is 1-based)."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"simple root index {i} out of range")
    c = lam[i - 1]
    if c == 0:
        return tuple(lam)
    return tuple(x - c * rs.cartan[j][i - 1] for j, x in enumerate(lam))


def weight_orbit(rs: RootSystem, highest: Weight, max_size: int = 1 << 16) -> list[Weight]:
    """Weyl orbit of a minuscule weight in breadth-first order."""
    highest = tuple(highest)
    if len(highest) != rs.rank:
        raise ValueError("weight has wrong length")
    seen = {highest: 0}
    order = [highest]
    queue = deque([highest])
    while queue:
        lam = queue.popleft()
        for i in range(1, rs.rank + 1):
            mu = reflect(rs, i, lam)
            if mu in seen:
                continue
            if any(abs(c) > 1 for c in mu) or len(order) >= max_size:
                raise ValueError(f"{highest} is not minuscule for {rs.name}")
            seen[mu] = len(order)
            order.append(mu)
            queue.append(mu)
    return order
