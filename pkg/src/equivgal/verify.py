"""Replayable certificates for the hypotheses a constructed system must meet.

``check_system`` reads a system record (see :mod:`equivgal.assemble`) and
returns a :class:`VerificationBundle`.  Each check has an id, a status in
{pass, fail, skipped} and JSON evidence.  Checks at points that lie in the
exceptional set are skipped, since no local parameter x - x0 is available
there; the set-membership check itself fails instead.

The bundle certifies hypotheses only.  That the Galois group is then the
target group is a theorem taken as given, not something computed here.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Any

from . import linalg as la
from .cyclo import CycloField, FieldElem, cyclotomic_field, q_linear_rank
from .equivariant import Action, basis_from_terms, kummer_matrix_expand
from .funcfield import KummerElem
from .lie import LieMatrix, UnsupportedShape, ad_kernel_dim, algebra_for, standard_form, unique_slope
from .local import (
    check_eta_identity,
    check_toric_identity,
    hilbert90_eta,
    toric_equation,
    toric_field,
    toric_model,
    weyl_lift,
)
from .weyl import cycle_type, is_strictly_transitive, orbit_generators, word_perm

HEADER = (
    "Certifies the machine-checkable local and global hypotheses of the construction "
    "(equivariance, Lie-algebra membership, prescribed jets, residue and slope certificates, "
    "strict transitivity). It does not compute the differential Galois group."
)

__all__ = ["Check", "VerificationBundle", "MalformedRecord", "check_system", "MUTATIONS", "mutate", "HEADER"]


class MalformedRecord(ValueError):
    """The input does not conform to the system record format."""


@dataclass
class Check:
    id: str
    status: str  # pass, fail or skipped
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "evidence": self.evidence}


@dataclass
class VerificationBundle:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failed_ids(self) -> list[str]:
        return [c.id for c in self.checks if c.status == "fail"]

    def get(self, cid: str) -> Check:
        for c in self.checks:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def to_json(self) -> dict:
        return {"header": HEADER, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _s(v) -> str:
    return repr(v)


def _fe(data, F: CycloField) -> FieldElem:
    return FieldElem.from_json(data).embed(F)


def _parse(record: dict):
    try:
        F = cyclotomic_field(int(record["field"]["M"]))
        n = int(record["extension"]["n"])
        factors = record["group"]["factors"]
        actions = [Action.from_json(F, a) for a in record["action"]["factors"]]
        A = [[KummerElem.from_json(F, v) for v in r] for r in record["matrix"]]
        points = []
        for p in record["points"]:
            jets = {int(j["order"]): [[_fe(v, F) for v in r] for r in j["matrix"]] for j in p["jets"]}
            points.append({
                "x": _fe(p["x"], F), "root": _fe(p["root"], F), "role": p["role"],
                "factor": int(p["factor"]), "jets": jets,
                "witness": tuple(p["witness"]) if p.get("witness") else None,
            })
        bases = []
        for fac, act, b in zip(factors, actions, record.get("bases", [])):
            tag = algebra_for(fac["kind"], int(fac["rank"]))
            terms = [[[[_fe(v, F) for v in r] for r in C] for C in el] for el in b["elements"]]
            bases.append(basis_from_terms(tag, act, n, terms, check=False))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecord(f"malformed system record: {exc}") from exc
    if len(actions) != len(factors):
        raise MalformedRecord("one action per factor is required")
    size = sum(algebra_for(f["kind"], int(f["rank"])).n for f in factors)
    if len(A) != size or any(len(r) != size for r in A):
        raise MalformedRecord("matrix size does not match the group factors")
    return F, n, factors, actions, A, points, bases


def _block(A, off: int, size: int):
    return [r[off:off + size] for r in A[off:off + size]]


def _label(p) -> str:
    return f"x={p['x']}"


def _pts_json(points) -> list:
    return [{"x": _s(p["x"]), "root": _s(p["root"]), "role": p["role"]} for p in points]


def check_system(record: dict) -> VerificationBundle:
    F, n, factors, actions, A, points, bases = _parse(record)
    checks: list[Check] = []
    tags = [algebra_for(f["kind"], int(f["rank"])) for f in factors]
    offs = [int(f.get("offset", sum(t.n for t in tags[:i]))) for i, f in enumerate(factors)]

    # distinct x-coordinates
    xs = [p["x"] for p in points]
    dup = [(i, j) for i in range(len(xs)) for j in range(i) if xs[i] == xs[j]]
    checks.append(Check("points-distinct", _status(not dup and bool(points)),
                        {"points": _pts_json(points), "collisions": dup}))

    # exceptional set: x = 0, n-th root consistency and det B for every factor basis
    bad = []
    for i, p in enumerate(points):
        reason = None
        if not p["x"]:
            reason = "ramification point x = 0"
        elif p["root"] ** n != p["x"]:
            reason = "root is not an n-th root of x"
        else:
            for fi, b in enumerate(bases):
                if b.bad_set.contains(p["x"], p["root"]):
                    reason = f"det B of factor {fi} vanishes over x"
                    break
        if reason:
            bad.append(i)
            p["bad_reason"] = reason
    checks.append(Check("points-avoid-bad-set", _status(not bad),
                        {"bad_points": [{"index": i, "x": _s(points[i]["x"]), "reason": points[i]["bad_reason"]}
                                        for i in bad],
                         "det_B_in_y": [_s(b.bad_set.det_poly) for b in bases]}))

    # equivariance sigma(A) = tau(A), blockwise, plus the basis identity
    eq_ok = True
    ev: dict[str, Any] = {"n": n, "blocks": []}
    for fi, (tag, off, act) in enumerate(zip(tags, offs, actions)):
        B = _block(A, off, tag.n)
        lhs = [[v.galois(1) for v in r] for r in B]
        rhs = act.apply(B)
        ok = lhs == rhs
        tau_order_ok = _action_order_ok(act, tag, n, F)
        basis_ok = bases[fi].check_equivariance() if fi < len(bases) else True
        ev["blocks"].append({"factor": fi, "sigma_equals_tau": ok, "tau_order_divides_n": tau_order_ok,
                             "basis_equivariant": basis_ok})
        eq_ok = eq_ok and ok and tau_order_ok and basis_ok
    # off-diagonal blocks must vanish for the block structure to be equivariant
    off_ok = _off_blocks_zero(A, tags, offs)
    ev["off_block_zero"] = off_ok
    checks.append(Check("equivariance", _status(eq_ok and off_ok), ev))

    # Lie algebra membership over K
    mem = []
    for tag, off in zip(tags, offs):
        mem.append(_in_algebra_over_K(_block(A, off, tag.n), tag, F, n))
    checks.append(Check("lie-membership", _status(all(mem) and off_ok),
                        {"blocks": [{"algebra": str(t), "member": m} for t, m in zip(tags, mem)]}))

    # per point: jets and role certificates
    toric_words: dict[int, list] = {}
    for i, p in enumerate(points):
        fi = p["factor"]
        tag, off = tags[fi], offs[fi]
        lab = _label(p)
        role = p["role"]
        rid = {"torus": "torus", "nilpotent": "nilpotent", "irregular": "irregular",
               "maximally-toric": "toric"}.get(role, role)
        if i in bad:
            checks.append(Check(f"jets:{lab}", "skipped", {"reason": p["bad_reason"]}))
            checks.append(Check(f"{rid}:{lab}", "skipped", {"reason": p["bad_reason"]}))
            continue
        high = max(p["jets"]) if p["jets"] else -1
        exp = kummer_matrix_expand(_block(A, off, tag.n), p["x"], max(high, 0) + 1, p["root"])
        checks.append(_check_jets(lab, p, exp, tag, F))
        if role == "torus":
            checks.append(_check_torus(lab, exp, tag, F))
        elif role == "nilpotent":
            checks.append(_check_nilpotent(lab, exp, tag, F))
        elif role == "irregular":
            checks.append(_check_irregular(lab, exp, tag, F))
        elif role == "maximally-toric":
            checks.append(_check_toric(lab, p, exp, factors[fi], F))
            toric_words.setdefault(fi, []).append(p["witness"])
        else:
            checks.append(Check(f"{rid}:{lab}", "fail", {"reason": f"unknown role {role!r}"}))

    # strict transitivity of the Weyl classes at maximally toric points
    for fi, words in sorted(toric_words.items()):
        checks.append(_check_transitivity(factors[fi], words))

    # each block regular at the other factors' points
    if len(factors) > 1:
        rows = []
        ok = True
        for i, p in enumerate(points):
            if i in bad:
                continue
            for fj, (tag, off) in enumerate(zip(tags, offs)):
                if fj == p["factor"]:
                    continue
                exp = kummer_matrix_expand(_block(A, off, tag.n), p["x"], 0, p["root"])
                neg = [k for k in exp if k < 0]
                rows.append({"x": _s(p["x"]), "factor": fj, "negative_orders": neg})
                ok = ok and not neg
        checks.append(Check("product-regularity", _status(ok), {"rows": rows}))
    return VerificationBundle(checks)


def _action_order_ok(act: Action, tag, n: int, F: CycloField) -> bool:
    from .lie import algebra_basis

    for e in algebra_basis(tag, F):
        X = e
        for _ in range(n):
            X = act.apply(X)
        if [list(r) for r in X] != [list(r) for r in e]:
            return False
    return True


def _off_blocks_zero(A, tags, offs) -> bool:
    owner = []
    for fi, (t, o) in enumerate(zip(tags, offs)):
        owner.extend([fi] * t.n)
    for i, r in enumerate(A):
        for j, v in enumerate(r):
            if owner[i] != owner[j] and not v.is_zero():
                return False
    return True


def _in_algebra_over_K(B, tag, F: CycloField, n: int) -> bool:
    size = tag.n
    if tag.name == "sl":
        tr = KummerElem.zero(F, n)
        for i in range(size):
            tr = tr + B[i][i]
        return tr.is_zero()
    S = standard_form(tag, F)
    # X^T S + S X = 0
    for i in range(size):
        for j in range(size):
            acc = KummerElem.zero(F, n)
            for k in range(size):
                if S[k][j]:
                    acc = acc + B[k][i] * S[k][j]
                if S[i][k]:
                    acc = acc + B[k][j] * S[i][k]
            if not acc.is_zero():
                return False
    return True


def _mat_s(m) -> list:
    return [[_s(v) for v in r] for r in m]


def _check_jets(lab, p, exp, tag, F) -> Check:
    size = tag.n
    zero = la.zeros(size, size, F.zero())
    lo = min(min(p["jets"]), min(exp) if exp else 0)
    hi = max(p["jets"])
    diffs = []
    for k in range(lo, hi + 1):
        want = p["jets"].get(k, zero)
        have = exp.get(k, zero)
        if [list(r) for r in want] != [list(r) for r in have]:
            diffs.append({"order": k, "prescribed": _mat_s(want), "found": _mat_s(have)})
    return Check(f"jets:{lab}", _status(not diffs), {"orders": [lo, hi], "differences": diffs})


def _principal(exp) -> dict[int, list]:
    return {k: v for k, v in exp.items() if k < 0 and not la.is_zero_matrix(v)}


def _check_torus(lab, exp, tag, F) -> Check:
    pp = _principal(exp)
    cid = f"torus:{lab}"
    if set(pp) != {-1}:
        return Check(cid, "fail", {"reason": "pole order is not exactly 1", "orders": sorted(pp)})
    R = pp[-1]
    size = tag.n
    if any(R[i][j] for i in range(size) for j in range(size) if i != j):
        return Check(cid, "fail", {"reason": "residue is not diagonal; no eigenvalue certificate",
                                   "residue": _mat_s(R)})
    l = tag.rank
    values = [R[i][i] for i in range(l)]
    rank = q_linear_rank([F.one()] + values)
    ok = rank == l + 1
    return Check(cid, _status(ok), {
        "residue_diagonal": [_s(R[i][i]) for i in range(size)],
        "certificate_values": [_s(v) for v in values],
        "q_rank_with_one": rank, "required": l + 1,
    })


def _check_nilpotent(lab, exp, tag, F) -> Check:
    pp = _principal(exp)
    cid = f"nilpotent:{lab}"
    R = pp.get(-1, la.zeros(tag.n, tag.n, F.zero()))
    if set(pp) - {-1}:
        return Check(cid, "fail", {"reason": "pole order exceeds 1", "orders": sorted(pp)})
    nil = la.is_zero_matrix(la.matpow(R, tag.n))
    kdim = ad_kernel_dim(LieMatrix.make(R, tag, F))
    ok = nil and kdim == tag.rank
    return Check(cid, _status(ok), {"residue": _mat_s(R), "nilpotent": nil,
                                    "ad_kernel_dim": kdim, "required": tag.rank})


def _check_irregular(lab, exp, tag, F) -> Check:
    pp = _principal(exp)
    cid = f"irregular:{lab}"
    jets = {k: LieMatrix.make(v, tag, F) for k, v in pp.items()}
    try:
        res = unique_slope(jets)
    except UnsupportedShape as exc:
        return Check(cid, "fail", {"reason": str(exc)})
    ok = res.irregular and res.coprime and res.slope.denominator == tag.n
    return Check(cid, _status(ok), {
        "slope": str(res.slope), "n": res.n, "shear": [str(d) for d in res.shear],
        "charpoly_low_to_high": [_s(c) for c in res.charpoly], "gcd_is_one": res.coprime,
    })


def _check_toric(lab, p, exp, factor, F) -> Check:
    cid = f"toric:{lab}"
    word = p["witness"]
    if word is None:
        return Check(cid, "fail", {"reason": "no Weyl word recorded"})
    w = weyl_lift(factor["kind"], int(factor["rank"]), word)
    Fw = toric_field(w)
    h = hilbert90_eta(w, Fw, balanced=True)
    g = w.matrix(Fw)
    eta_ok = check_eta_identity(h.eta, g, w.order, Fw)
    at = toric_equation(w, Fw)
    at_ok = check_toric_identity(at, w, Fw)
    ab = toric_model(w, Fw)
    size = len(g)
    zero = la.zeros(size, size, F.zero())
    diffs = []
    for e, mat in ab.terms.items():
        k = int(e)
        have = exp.get(k, zero)
        want = [[v.embed(F) for v in r] for r in mat]
        if [list(r) for r in have] != want:
            diffs.append(k)
    low = min(int(e) for e in ab.terms)
    extra = [k for k in exp if k < low and not la.is_zero_matrix(exp[k])]
    ok = eta_ok and at_ok and not diffs and not extra
    return Check(cid, _status(ok), {
        "word": list(word), "g_order": w.order, "eta_identity": eta_ok, "torus_identity": at_ok,
        "model_orders": sorted(int(e) for e in ab.terms), "mismatched_orders": diffs,
        "unexpected_orders": extra,
    })


def _check_transitivity(factor, words) -> Check:
    kind, rank = factor["kind"], int(factor["rank"])
    orbit, gens = orbit_generators(kind, rank, 1)
    types = [cycle_type(word_perm(gens, w)) for w in words]
    ok, cert = is_strictly_transitive(types, len(orbit))
    return Check(f"strict-transitivity:{kind}{rank}", _status(ok and cert.replay()), {
        "degree": len(orbit), "words": [list(w) for w in words],
        "cycle_types": [list(t) for t in types],
        "witnesses": {str(k): v for k, v in cert.witnesses.items()}, "blocking": cert.blocking,
    })


# mutations -------------------------------------------------------------------

MUTATIONS = {
    "rationalize-eigenvalue": "torus",
    "zero-nilpotent": "nilpotent",
    "point-into-bad-set": "points-avoid-bad-set",
    "flip-action-sign": "equivariance",
}


def mutate(name: str, factors, action, n: int, F=None):
    """Rebuild a system with one documented defect; returns (record, targeted check prefix).

    The first two mutations change the prescribed residue and re-run the
    construction, so the system really has the defect.  The last two edit
    the finished record: a point is moved onto x = 0, or one sign of the
    action generator is flipped.
    """
    from .assemble import PlannedPoint, Factor, assemble_group_equation

    if name not in MUTATIONS:
        raise ValueError(f"unknown mutation {name!r}")
    factors = list(factors)
    if name in ("rationalize-eigenvalue", "zero-nilpotent"):
        role = "torus" if name == "rationalize-eigenvalue" else "nilpotent"
        fac = factors[0]
        tag = fac.algebra
        pts = []
        done = False
        for p in fac.points:
            if p.role == role and not done:
                size = tag.n
                if role == "torus":
                    m = [[0] * size for _ in range(size)]
                    m[0][0] = 1
                    m[1 if tag.name == "sl" else tag.rank][1 if tag.name == "sl" else tag.rank] = -1
                else:
                    m = [[0] * size for _ in range(size)]
                pts.append(PlannedPoint(p.x, p.root, p.role, p.witness, {-1: m}))
                done = True
            else:
                pts.append(p)
        factors[0] = Factor(fac.kind, fac.rank, tuple(pts), fac.basis_terms)
        return assemble_group_equation(factors, action, n, F).to_json(), MUTATIONS[name]
    if name == "flip-action-sign" and (n == 1 or action == "trivial"):
        raise ValueError("flipping the action needs a nontrivial action")
    record = assemble_group_equation(factors, action, n, F).to_json()
    record = copy.deepcopy(record)
    if name == "point-into-bad-set":
        Fr = cyclotomic_field(int(record["field"]["M"]))
        idx = next(i for i, p in enumerate(record["points"]) if p["role"] == "torus")
        record["points"][idx]["x"] = Fr.zero().to_json()
        record["points"][idx]["root"] = Fr.zero().to_json()
    else:
        gen = record["action"]["factors"][0]["generator"]
        Fr = cyclotomic_field(int(record["field"]["M"]))
        last = len(gen) - 1
        gen[last][last] = (-FieldElem.from_json(gen[last][last]).embed(Fr)).to_json()
    return record, MUTATIONS[name]
