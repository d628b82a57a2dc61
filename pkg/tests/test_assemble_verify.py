from __future__ import annotations

import copy
import json

import pytest

from equivgal.assemble import assemble_group_equation, default_plan
from equivgal.equivariant import BadPoint
from equivgal.fixtures import sl2_sqrtx_factor, sl2_sqrtx_field
from equivgal.verify import HEADER, MUTATIONS, MalformedRecord, check_system, mutate

SYSTEMS = {
    "A1": ([("A", 1, [2, 3, 5])], "trivial", 1),
    "A1-outer": ([("A", 1, [4, 9, 25])], "transpose-inverse", 2),
    "A1-inner": ([("A", 1, [4, 9, 25])], "inner-diag", 2),
    "A2-outer": ([("A", 2, [4, 9, 25])], "transpose-inverse", 2),
    "C2-inner": ([("C", 2, [4, 9, 16])], "inner-diag", 2),
    "D3": ([("D", 3, [2, 3, 5, 7])], "trivial", 1),
    "A1xA2": ([("A", 1, [2, 3, 5]), ("A", 2, [7, 11, 13])], "trivial", 1),
}


def build(name):
    facs, action, n = SYSTEMS[name]
    factors = [default_plan(k, r, xs, n) for k, r, xs in facs]
    return factors, action, n


def record_of(name):
    factors, action, n = build(name)
    return json.loads(json.dumps(assemble_group_equation(factors, action, n).to_json()))


@pytest.fixture(scope="module")
def records():
    return {name: record_of(name) for name in SYSTEMS}


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_system_passes(records, name):
    bundle = check_system(records[name])
    assert bundle.passed, bundle.failed_ids
    ids = [c.id for c in bundle.checks]
    for needed in ("lie-membership", "equivariance", "points-distinct", "points-avoid-bad-set"):
        assert needed in ids
    factors = records[name]["group"]["factors"]
    assert ("product-regularity" in ids) == (len(factors) > 1)
    # only the toric (D) plan relies on a strictly transitive set of Weyl classes
    assert any(i.startswith("strict-transitivity:") for i in ids) == any(f["kind"] == "D" for f in factors)


def test_bundle_has_one_torus_and_nilpotent_check_per_point(records):
    bundle = check_system(records["A1xA2"])
    ids = [c.id for c in bundle.checks]
    assert ids.count("torus:x=3") == 1 and ids.count("torus:x=11") == 1
    assert "nilpotent:x=5" in ids and "irregular:x=7" in ids


def test_d_kind_uses_toric_points(records):
    bundle = check_system(records["D3"])
    assert [c.id for c in bundle.checks if c.id.startswith("toric:")] == ["toric:x=2", "toric:x=3"]


def test_bundle_json_is_stable(records):
    a = check_system(records["A1-inner"]).to_json()
    b = check_system(copy.deepcopy(records["A1-inner"])).to_json()
    assert a["header"] == HEADER
    strip = lambda d: json.dumps(d, sort_keys=True)
    assert strip(a) == strip(b)


@pytest.mark.parametrize("name", ["A1-outer", "A1-inner", "C2-inner"])
@pytest.mark.parametrize("mutation", sorted(MUTATIONS))
def test_mutation_fails_its_target(name, mutation):
    factors, action, n = build(name)
    record, target = mutate(mutation, factors, action, n)
    bundle = check_system(json.loads(json.dumps(record)))
    assert not bundle.passed
    assert any(i.startswith(target) for i in bundle.failed_ids), bundle.failed_ids


def test_flip_needs_a_nontrivial_action():
    factors, action, n = build("A1")
    with pytest.raises(ValueError):
        mutate("flip-action-sign", factors, action, n)
    with pytest.raises(ValueError):
        mutate("no-such-mutation", factors, action, n)


def test_explicit_basis_factor():
    F = sl2_sqrtx_field()
    rec = assemble_group_equation([sl2_sqrtx_factor(F)], "transpose-inverse", 2, F).to_json()
    assert check_system(rec).passed


def test_bad_point_plans():
    with pytest.raises(BadPoint):
        assemble_group_equation([default_plan("A", 1, [2, 2, 5], 1)])
    with pytest.raises(BadPoint):
        assemble_group_equation([default_plan("A", 1, [0, 3, 5], 1)])
    with pytest.raises(BadPoint):
        default_plan("A", 1, [2, 3], 1)
    with pytest.raises(BadPoint):
        default_plan("A", 1, [2, 9, 25], 2)  # 2 has no rational square root
    with pytest.raises(BadPoint):
        assemble_group_equation([default_plan("A", 1, [2, 3, 5], 1), default_plan("A", 1, [7, 3, 11], 1)])
    with pytest.raises(ValueError):
        assemble_group_equation([default_plan("A", 1, [1, 8, 27], 3)], "transpose-inverse", 3)


def test_malformed_records(records):
    rec = copy.deepcopy(records["A1"])
    del rec["matrix"]
    with pytest.raises(MalformedRecord):
        check_system(rec)
    rec = copy.deepcopy(records["A1"])
    rec["matrix"] = rec["matrix"][:1]
    with pytest.raises(MalformedRecord):
        check_system(rec)


def test_tampered_matrix_fails(records):
    # swapping in another system's irregular residue breaks the jet checks
    rec = copy.deepcopy(records["A1"])
    rec["matrix"][0][1], rec["matrix"][1][0] = rec["matrix"][1][0], rec["matrix"][0][1]
    bundle = check_system(rec)
    assert not bundle.passed
