"""Reproducible worked examples, each emitting data and a pass/fail check log.

Fixture ids: sl2-sqrtx, sl2-toric, e6-weyl, e7-weyl, b-ell-table, section5.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import linalg as la
from .alternate import alternate_sl2_check, check_section5_equation
from .assemble import Factor, PlannedPoint, assemble_group_equation
from .cyclo import CycloField, cyclotomic_field, sqrt_prime
from .equivariant import Action, JetPoint, JetSpec, assemble_matrix, basis_from_terms, interpolate_jets, kummer_matrix_expand
from .funcfield import Poly, RatFunc
from .lie import algebra_for
from .local import check_eta_identity, check_toric_identity, glue, toric_equation, weyl_lift
from .series import PuiseuxMatrix
from .verify import check_system
from .weyl import enumerate_cycle_types, find_strictly_transitive, is_strictly_transitive, orbit_generators, word_perm, cycle_type

__all__ = ["FIXTURES", "FixtureResult", "run_fixture", "sl2_sqrtx_factor", "sl2_sqrtx_field", "printed_f"]


@dataclass
class FixtureResult:
    fixture: str
    data: dict[str, Any] = field(default_factory=dict)
    log: list[dict[str, Any]] = field(default_factory=list)

    def check(self, name: str, ok: bool, **detail) -> bool:
        self.log.append({"check": name, "status": "pass" if ok else "fail", **detail})
        return ok

    @property
    def passed(self) -> bool:
        return all(e["status"] == "pass" for e in self.log)

    def to_json(self) -> dict:
        return {"fixture": self.fixture, "passed": self.passed, "data": self.data, "log": self.log}


def _s(m) -> list:
    return [[str(v) for v in r] for r in m]


# sl2 over C(x, sqrt(x)) ------------------------------------------------------

def sl2_sqrtx_field() -> CycloField:
    # sqrt(2) lives in Q(zeta_8)
    return cyclotomic_field(8)


def _sl2_parts(F: CycloField):
    o, z = F.one(), F.zero()
    H = [[o, z], [z, -o]]
    E = [[z, o], [z, z]]
    Fm = [[z, z], [o, z]]
    Z = [[z, z], [z, z]]
    return H, E, Fm, Z


def sl2_sqrtx_terms(F: CycloField):
    """e1 = y H, e2 = y (E + F), e3 = (F - E) + y (E + F), as [C_0, C_1]."""
    H, E, Fm, Z = _sl2_parts(F)
    EF = la.mat_add(E, Fm)
    return [[Z, H], [Z, EF], [la.mat_sub(Fm, E), EF]]


def sl2_sqrtx_jets(F: CycloField) -> list[tuple[int, int, dict]]:
    H, E, Fm, Z = _sl2_parts(F)
    s2 = sqrt_prime(2, F)
    return [
        (4, 2, {-2: Fm, -1: E}),
        (9, 3, {-1: [[s2, F.zero()], [F.zero(), -s2]]}),
        (16, 4, {-1: Fm}),
    ]


def sl2_sqrtx_factor(F: CycloField | None = None) -> Factor:
    """The sl2 example as an assembly factor with its basis and jets fixed."""
    F = F or sl2_sqrtx_field()
    roles = ("irregular", "torus", "nilpotent")
    pts = tuple(PlannedPoint(x, r, role, None, jets) for (x, r, jets), role in zip(sl2_sqrtx_jets(F), roles))
    return Factor("A", 1, pts, tuple(sl2_sqrtx_terms(F)))


def printed_f(F: CycloField) -> list[RatFunc]:
    x = RatFunc.x(F)
    s2 = sqrt_prime(2, F)

    def L(p):
        return x - F(p)

    f1 = (L(4) * L(16) / L(9)) * (-s2 / 105)
    f2 = (L(9) * L(16) / L(4) ** 2 * Fraction(-1, 240)
          + L(9) * L(16) / L(4) * Fraction(311, 28800)
          - L(9) * L(4) / L(16) * Fraction(3, 672))
    f3 = (L(9) * L(16) / L(4) ** 2 * Fraction(1, 120)
          - L(9) * L(16) / L(4) * Fraction(43, 7200)
          + L(9) * L(4) / L(16) * Fraction(1, 168))
    return [f1, f2, f3]


def _principal_matches(A, x0, y0, jets, F) -> tuple[bool, dict]:
    got = kummer_matrix_expand(A, F(x0), 0, F(y0))
    got = {k: m for k, m in got.items() if not la.is_zero_matrix(m)}
    want = {k: [list(r) for r in m] for k, m in jets.items() if not la.is_zero_matrix(m)}
    return got == want, {str(k): _s(m) for k, m in sorted(got.items())}


def fixture_sl2_sqrtx() -> FixtureResult:
    res = FixtureResult("sl2-sqrtx")
    F = sl2_sqrtx_field()
    tag = algebra_for("A", 1)
    act = Action.transpose_negate(2, F)
    basis = basis_from_terms(tag, act, 2, sl2_sqrtx_terms(F), check=False)
    res.check("basis equivariant (tau(C_k) = (-1)^k C_k)", basis.check_equivariance())
    res.check("basis equivariant over K (sigma(e_i) = -e_i^T)", basis.check_equivariance_kummer())
    two_y2 = Poly(F, [0, 0, 2])
    res.check("basis spans sl2(K): det B = 2y^2", basis.bad_set.det_poly == two_y2,
              det=basis.bad_set.det_poly.to_json())
    fs = printed_f(F)
    res.data["printed_f"] = [str(f) for f in fs]
    A_printed = assemble_matrix(basis, fs)
    for x0, y0, jets in sl2_sqrtx_jets(F):
        ok, got = _principal_matches(A_printed, x0, y0, jets, F)
        res.check(f"printed f reproduce the principal part at ({x0},{y0})", ok, principal=got)
    spec = JetSpec(tuple(JetPoint(F(x0), F(y0), jets) for x0, y0, jets in sl2_sqrtx_jets(F)))
    interp = interpolate_jets(basis, spec)
    res.data["interpolated_f"] = [str(f) for f in interp.f]
    for x0, y0, jets in sl2_sqrtx_jets(F):
        ok, _ = _principal_matches(interp.matrix, x0, y0, jets, F)
        res.check(f"interpolated A has the prescribed principal part at ({x0},{y0})", ok)
    record = assemble_group_equation([sl2_sqrtx_factor(F)], "transpose-inverse", 2, F).to_json()
    bundle = check_system(record)
    res.check("verifier accepts the system", bundle.passed, failed=bundle.failed_ids)
    return res


# sl2 toric example --------------------------------------------------------------

def printed_eta(F: CycloField) -> tuple[PuiseuxMatrix, PuiseuxMatrix]:
    """eta = 1/2 [[a+b, i(b-a)], [i(a-b), a+b]] with a = t^(1/4), b = t^(-1/4), and its inverse."""
    i = F.zeta(1, 4)
    h = Fraction(1, 2)
    # coefficient of t^(1/4) and of t^(-1/4)
    up = [[F(h), -i * h], [i * h, F(h)]]
    down = [[F(h), i * h], [-i * h, F(h)]]
    eta = PuiseuxMatrix.build({Fraction(1, 4): up, Fraction(-1, 4): down}, 2)
    # det eta = 1, so eta^-1 is the adjugate
    up_inv = [[F(h), i * h], [-i * h, F(h)]]
    down_inv = [[F(h), -i * h], [i * h, F(h)]]
    inv = PuiseuxMatrix.build({Fraction(1, 4): up_inv, Fraction(-1, 4): down_inv}, 2)
    return eta, inv


def fixture_sl2_toric() -> FixtureResult:
    res = FixtureResult("sl2-toric")
    F = cyclotomic_field(4)
    i = F.zeta(1, 4)
    o, z = F.one(), F.zero()
    g = [[z, o], [-o, z]]
    ginv = [[z, -o], [o, z]]
    eta, inv = printed_eta(F)
    res.check("eta eta^-1 = 1", (eta @ inv) == PuiseuxMatrix.constant(la.identity(2, z)))
    res.check("eta^gamma' = eta g (gamma' of order 4)", check_eta_identity(eta, g, 4, F))
    h = Fraction(1, 2)
    at = PuiseuxMatrix.build({Fraction(-3, 2): [[F(-h), z], [z, F(h)]]}, 2)
    res.check("printed A~ satisfies A~^gamma = g^-1 A~ g", at.gamma(2, F) == at.conjugate_by(g, ginv))
    abar = glue(eta, inv, at)
    q = Fraction(1, 4)
    printed = PuiseuxMatrix.build({
        Fraction(-2): [[F(-q), i * q], [i * q, F(q)]],
        Fraction(-1): [[F(-q), -i * h], [z, F(q)]],
    }, 2)
    res.data["A_bar"] = abar.to_json()
    res.check("eta' eta^-1 + eta A~ eta^-1 equals the printed A_bar", abar == printed)
    w = weyl_lift("A", 1, (1,))
    formula = toric_equation(w, F)
    res.data["formula_A_tilde"] = formula.to_json()
    res.check("formula A~ satisfies A~^gamma = dphi(A~)", check_toric_identity(formula, w, F))
    return res


# Weyl group fixtures -------------------------------------------------------------

def _weyl_fixture(name: str, kind: str, highest: int, order: int, wanted: list[tuple[int, ...]],
                  notes: dict | None = None) -> FixtureResult:
    res = FixtureResult(name)
    t0 = time.perf_counter()
    orbit, gens = orbit_generators(kind, None, highest)
    enum = enumerate_cycle_types(gens)
    res.data.update({
        "orbit_size": len(orbit),
        "group_order": enum.group_order,
        "cycle_types": [{"parts": list(ct), "witness_word": list(enum.cycle_types[ct])} for ct in enum.sorted_types()],
        "seconds": round(time.perf_counter() - t0, 2),
    })
    if notes:
        res.data["notes"] = notes
    res.check(f"group order {order}", enum.group_order == order, got=enum.group_order)
    for ct in wanted:
        present = ct in enum.cycle_types
        ok = present and cycle_type(word_perm(gens, enum.cycle_types[ct])) == ct
        res.check(f"cycle type {list(ct)} occurs", ok,
                  witness=list(enum.cycle_types[ct]) if present else None)
    verdict, cert = is_strictly_transitive(wanted, len(orbit))
    res.check("pair is strictly transitive", verdict and cert.replay(), witnesses=cert.witnesses)
    return res


def fixture_e6() -> FixtureResult:
    return _weyl_fixture("e6-weyl", "E6", 1, 51840, [(12, 12, 3), (9, 9, 9)])


def fixture_e7() -> FixtureResult:
    return _weyl_fixture(
        "e7-weyl", "E7", 7, 2903040, [(18, 18, 18, 2), (14, 14, 14, 14)],
        notes={"14-cycles": "a 14-cycle type on 56 points must be [14,14,14,14]; [14,14,14] covers only 42"},
    )


def fixture_b_table(ranks=(2, 3, 4, 5, 7)) -> FixtureResult:
    res = FixtureResult("b-ell-table")
    expected = {2: True, 3: True, 4: False, 5: True, 7: True}
    rows = []
    for l in ranks:
        t0 = time.perf_counter()
        r = find_strictly_transitive("B", l, l)
        sets = [[list(r.types[k]) for k in s] for s in r.minimal_sets]
        rows.append({"rank": l, "orbit_size": r.enumeration.degree, "group_order": r.enumeration.group_order,
                     "types": len(r.types), "minimal_sets": sets, "exhaustive": r.exhaustive,
                     "seconds": round(time.perf_counter() - t0, 2)})
        if l in expected:
            exists = bool(r.minimal_sets)
            res.check(f"B{l}: strictly transitive set {'exists' if expected[l] else 'does not exist'}",
                      exists == expected[l] and (exists or r.exhaustive))
        for s in r.minimal_sets:
            ok, cert = is_strictly_transitive([r.types[k] for k in s], r.enumeration.degree)
            res.check(f"B{l}: set {[list(r.types[k]) for k in s]} replays", ok and cert.replay())
    res.data["rows"] = rows
    return res


def fixture_alternate_sl2(ns=(1, 2, 3), m_max: int = 10, eq_ns=(1, 2, 3, 4)) -> FixtureResult:
    res = FixtureResult("section5")
    reports = []
    for n in ns:
        rep = alternate_sl2_check(n, m_max)
        reports.append(rep.to_json())
        res.check(f"n={n}: only w = 0 for m <= {m_max}", rep.passed)
        degs = {r["m"]: r["deg_q_if_c_leading_one"] for r in rep.rows if r["branch"] == 1}
        res.check(f"n={n}: deg q = m - 2n + 1", all(d is None or d == m - 2 * n + 1 for m, d in degs.items()))
    eqs = []
    for n in eq_ns:
        e = check_section5_equation(n)
        eqs.append(e)
        res.check(f"n={n}: x = z^n gives n(z^(n-2) e + z^n f + z^(3n-1) h)", e["substitution_holds"])
        res.check(f"n={n}: A~ equivariant", all(x["holds"] for x in e["equivariance"]))
    res.data["alternate"] = reports
    res.data["equation"] = eqs
    return res


FIXTURES: dict[str, Callable[[], FixtureResult]] = {
    "sl2-sqrtx": fixture_sl2_sqrtx,
    "sl2-toric": fixture_sl2_toric,
    "e6-weyl": fixture_e6,
    "e7-weyl": fixture_e7,
    "b-ell-table": fixture_b_table,
    "section5": fixture_alternate_sl2,
}


def run_fixture(name: str) -> FixtureResult:
    try:
        fn = FIXTURES[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
    return fn()
