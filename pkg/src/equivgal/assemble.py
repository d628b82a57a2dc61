"""Global assembly of Y' = A Y from per-factor seeds, and system records.

A system record is a plain JSON-compatible dict:

    {"format": "equivgal-system/1",
     "field": {"M": ...}, "extension": {"n": ...},
     "group": {"factors": [{"kind", "rank", "offset"}]},
     "action": {"factors": [{"type", "order", "generator"}]},
     "bases": [...], "points": [{"x", "root", "role", "factor", "jets", "witness"}],
     "matrix": [[{"n", "coeffs": [{"num", "den"}]}]]}

Field elements serialize as {"M", "coeffs": [[num, den], ...]} in the power
basis of zeta_M (see FieldElem.to_json).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg as la
from .cyclo import CycloField, FieldElem, cyclotomic_field
from .equivariant import (
    Action,
    BadPoint,
    EquivariantBasis,
    JetPoint,
    JetSpec,
    basis_from_terms,
    equivariant_basis,
    interpolate_jets,
)
from .funcfield import KummerElem, RatFunc
from .lie import algebra_for, generic_torus_seed, irregular_seed, principal_nilpotent, torus_field
from .local import toric_field, toric_model, weyl_lift

FORMAT = "equivgal-system/1"
ROLES = ("torus", "nilpotent", "irregular", "maximally-toric")

__all__ = [
    "FORMAT",
    "ROLES",
    "PlannedPoint",
    "Factor",
    "SystemRecord",
    "make_action",
    "default_plan",
    "plan_field",
    "seed_jets",
    "assemble_group_equation",
    "build_record",
    "record_matrix",
]


@dataclass(frozen=True)
class PlannedPoint:
    x: object  # int, Fraction or FieldElem
    root: object
    role: str
    witness: tuple[int, ...] | None = None
    jets: dict | None = None  # explicit jets override the role seed


@dataclass(frozen=True)
class Factor:
    kind: str
    rank: int
    points: tuple[PlannedPoint, ...]
    basis_terms: tuple | None = None  # explicit equivariant basis (fixtures)

    @property
    def algebra(self):
        return algebra_for(self.kind, self.rank)


@dataclass
class SystemRecord:
    field: CycloField
    n: int
    factors: list[Factor]
    actions: list[Action]
    bases: list[EquivariantBasis]
    points: list[dict]
    matrix: list[list[KummerElem]]
    f: list[list[RatFunc]] = field(default_factory=list)

    def to_json(self) -> dict:
        return build_record(self)


def _integer_root(x: int, n: int) -> int | None:
    if x < 0 and n % 2 == 0:
        return None
    r = round(abs(x) ** (1.0 / n))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** n == abs(x):
            return c if x >= 0 else -c
    return None


def default_plan(kind: str, rank: int, xs: Sequence[int], n: int,
                 roots: Sequence | None = None) -> Factor:
    """Assign roles to points in order.

    Kinds A and C use irregular, torus, nilpotent.  Kind D replaces the
    irregular point by two maximally toric points whose Weyl classes
    (words 1..l and 1..l-1) form a strictly transitive set.
    """
    kind = kind.upper()
    if kind in ("A", "C"):
        roles = [("irregular", None), ("torus", None), ("nilpotent", None)]
    elif kind == "D":
        roles = [("maximally-toric", tuple(range(1, rank + 1))),
                 ("maximally-toric", tuple(range(1, rank))),
                 ("torus", None), ("nilpotent", None)]
    else:
        raise ValueError(f"no point plan for kind {kind}")
    if len(xs) != len(roles):
        raise BadPoint(f"kind {kind} needs {len(roles)} points, got {len(xs)}")
    pts = []
    for i, (x, (role, word)) in enumerate(zip(xs, roles)):
        if roots is not None:
            r = roots[i]
        else:
            r = _integer_root(int(x), n) if n > 1 else x
            if r is None:
                raise BadPoint(f"{x} has no rational {n}-th root; give the root explicitly")
        pts.append(PlannedPoint(x, r, role, word))
    return Factor(kind, rank, tuple(pts))


def make_action(name: str, kind: str, rank: int, n: int, F: CycloField) -> Action:
    tag = algebra_for(kind, rank)
    size = tag.n
    if name == "trivial" or n == 1:
        return Action.trivial(size, F)
    if name in ("transpose-inverse", "transpose-negate"):
        if n % 2:
            raise ValueError("the transpose-inverse action has order 2; n must be even")
        return Action.transpose_negate(size, F)
    if name == "inner-diag":
        # conjugation by diag(a, a^-1) on the first weight pair; a = zeta_2n
        # for sl2 (the roots see a^2) and a = zeta_n otherwise
        g = la.identity(size, F.zero())
        a = F.zeta(1, 2 * n) if size == 2 else F.zeta(1, n)
        j = 1 if tag.name == "sl" else rank
        g[0][0] = a
        g[j][j] = 1 / a
        return Action.inner(g, n, F)
    raise ValueError(f"unknown action {name!r}")


def plan_field(factors: Sequence[Factor], n: int, extra: int = 1) -> CycloField:
    M = math.lcm(n, extra, 1)
    for fac in factors:
        roles = {p.role for p in fac.points}
        if "torus" in roles:
            M = math.lcm(M, torus_field(fac.rank).order)
        if "maximally-toric" in roles:
            for p in fac.points:
                if p.role == "maximally-toric":
                    M = math.lcm(M, toric_field(weyl_lift(fac.kind, fac.rank, p.witness)).order)
        for p in fac.points:
            for v in (p.x, p.root):
                if isinstance(v, FieldElem):
                    M = math.lcm(M, v.field.order)
            if p.jets:
                for mat in p.jets.values():
                    for r in mat:
                        for v in r:
                            if isinstance(v, FieldElem):
                                M = math.lcm(M, v.field.order)
    return cyclotomic_field(M)


def seed_jets(kind: str, rank: int, role: str, F: CycloField, witness=None) -> dict[int, list]:
    """Prescribed principal part for a point of the given role."""
    if role == "torus":
        m, _ = generic_torus_seed(kind, rank, F)
        return {-1: m.rows()}
    if role == "nilpotent":
        return {-1: principal_nilpotent(kind, rank, F).rows()}
    if role == "irregular":
        seed = irregular_seed(kind, rank, F)
        return {k: v.rows() for k, v in seed.jets.items()}
    if role == "maximally-toric":
        if witness is None:
            raise ValueError("maximally toric points need a Weyl word")
        w = weyl_lift(kind, rank, witness)
        Fw = toric_field(w)
        ab = toric_model(w, Fw)
        return {int(e): [[v.embed(F) for v in r] for r in mat] for e, mat in ab.terms.items()}
    raise ValueError(f"unknown role {role!r}")


def _as_field(v, F: CycloField) -> FieldElem:
    if isinstance(v, FieldElem):
        return v.embed(F)
    return F(v)


def assemble_group_equation(factors: Sequence[Factor], action: str | Sequence[Action] = "trivial",
                            n: int = 1, F: CycloField | None = None) -> SystemRecord:
    """Interpolate each factor's seeds and put the blocks on the diagonal."""
    factors = list(factors)
    if not factors or not any(f.points for f in factors):
        raise BadPoint("empty point plan")
    F = F or plan_field(factors, n, 2 * n if action == "inner-diag" else 1)
    if isinstance(action, str):
        actions = [make_action(action, f.kind, f.rank, n, F) for f in factors]
    else:
        actions = [a.embed(F) for a in action]
    # all points must have distinct x across factors
    all_x = [_as_field(p.x, F) for f in factors for p in f.points]
    for i in range(len(all_x)):
        for j in range(i):
            if all_x[i] == all_x[j]:
                raise BadPoint(f"point plan collision at x = {all_x[i]}")
    bases, blocks, fs, points = [], [], [], []
    for fi, (fac, act) in enumerate(zip(factors, actions)):
        tag = fac.algebra
        if fac.basis_terms is not None:
            basis = basis_from_terms(tag, act, n, fac.basis_terms)
        else:
            basis = equivariant_basis(tag, act, n, F)
        # every point of the system must avoid this factor's exceptional set
        for p in (q for g in factors for q in g.points):
            if basis.bad_set.contains(_as_field(p.x, F), _as_field(p.root, F)):
                raise BadPoint(f"x = {p.x} lies in the exceptional set of factor {fi}")
        jps = []
        for p in fac.points:
            jets = p.jets if p.jets is not None else seed_jets(fac.kind, fac.rank, p.role, F, p.witness)
            jets = {int(k): [[_as_field(v, F) for v in r] for r in m] for k, m in jets.items()}
            jps.append(JetPoint(_as_field(p.x, F), _as_field(p.root, F), jets, p.role))
            points.append({"x": _as_field(p.x, F), "root": _as_field(p.root, F), "role": p.role,
                           "factor": fi, "jets": jets, "witness": p.witness})
        interp = interpolate_jets(basis, JetSpec(tuple(jps)))
        bases.append(basis)
        blocks.append(interp.matrix)
        fs.append(interp.f)
    size = sum(len(b) for b in blocks)
    zero = KummerElem.zero(F, n)
    A = [[zero] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, v in enumerate(r):
                A[off + i][off + j] = v
        off += len(b)
    return SystemRecord(F, n, factors, actions, bases, points, A, fs)


def _mat_json(m):
    return [[v.to_json() for v in r] for r in m]


def build_record(sys: SystemRecord) -> dict:
    offsets, off = [], 0
    for fac in sys.factors:
        offsets.append(off)
        off += fac.algebra.n
    return {
        "format": FORMAT,
        "field": {"M": sys.field.order},
        "extension": {"n": sys.n},
        "group": {"factors": [{"kind": f.kind, "rank": f.rank, "offset": o}
                              for f, o in zip(sys.factors, offsets)]},
        "action": {"factors": [a.to_json() for a in sys.actions]},
        "bases": [b.to_json() for b in sys.bases],
        "points": [
            {
                "x": p["x"].to_json(),
                "root": p["root"].to_json(),
                "role": p["role"],
                "factor": p["factor"],
                "witness": list(p["witness"]) if p["witness"] else None,
                "jets": [{"order": k, "matrix": _mat_json(m)} for k, m in sorted(p["jets"].items())],
            }
            for p in sys.points
        ],
        "coefficients": [[f.to_json() for f in fs] for fs in sys.f],
        "matrix": [[v.to_json() for v in r] for r in sys.matrix],
    }


def record_matrix(record: dict) -> tuple[CycloField, list[list[KummerElem]]]:
    F = cyclotomic_field(int(record["field"]["M"]))
    return F, [[KummerElem.from_json(F, v) for v in r] for r in record["matrix"]]
