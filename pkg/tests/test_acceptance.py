"""The twelve acceptance criteria, one test each, at their stated tolerances.

Each test prints a PASS/FAIL line as it finishes; the terminal summary
repeats all of them in order.
"""

from __future__ import annotations

import json
import resource
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from equivgal.fixtures import fixture_b_table, fixture_e6, fixture_alternate_sl2, fixture_sl2_sqrtx, fixture_sl2_toric
from equivgal.assemble import assemble_group_equation
from equivgal.fixtures import sl2_sqrtx_factor, sl2_sqrtx_field
from equivgal.lie import ad_kernel_dim, generic_torus_seed, irregular_seed, principal_nilpotent, unique_slope
from equivgal.verify import MUTATIONS, check_system, mutate
from equivgal.weyl import cycle_type, is_strictly_transitive, orbit_generators, word_perm

RESULTS: dict[int, tuple[bool, str, str]] = {}


@contextmanager
def criterion(num: int, title: str, capsys):
    info = {"detail": ""}
    try:
        yield info
    except BaseException:
        RESULTS[num] = (False, title, info["detail"])
        with capsys.disabled():
            print(f"\ncriterion {num:2d} FAIL: {title}")
        raise
    RESULTS[num] = (True, title, info["detail"])
    with capsys.disabled():
        print(f"\ncriterion {num:2d} PASS: {title}")


def test_01_toy_strict_transitivity(capsys):
    with criterion(1, "toy strict-transitivity cases on 6 points", capsys) as info:
        t0 = time.perf_counter()
        ok1, _ = is_strictly_transitive([(6,)], 6)
        ok2, _ = is_strictly_transitive([(3, 3), (4, 2)], 6)
        ok3, cert = is_strictly_transitive([(3, 3), (3, 2, 1)], 6)
        dt = time.perf_counter() - t0
        info["detail"] = f"{dt:.3f} s"
        assert ok1 and ok2
        assert not ok3 and cert.blocking == 3 and cert.replay()
        assert dt < 1


def test_02_orbit_sizes(capsys):
    with criterion(2, "minuscule orbit sizes", capsys):
        for l in range(1, 9):
            assert len(orbit_generators("A", l, 1)[0]) == l + 1
        for l in range(2, 9):
            assert len(orbit_generators("C", l, 1)[0]) == 2 * l
        for l in range(3, 9):
            assert len(orbit_generators("D", l, 1)[0]) == 2 * l
        for l in range(2, 8):
            assert len(orbit_generators("B", l, l)[0]) == 2 ** l
        assert len(orbit_generators("E", 6, 1)[0]) == 27
        assert len(orbit_generators("E", 7, 7)[0]) == 56


def test_03_named_products(capsys):
    with criterion(3, "cycle types of the named Weyl words, rank <= 8", capsys):
        for l in range(1, 9):
            _, g = orbit_generators("A", l, 1)
            assert cycle_type(word_perm(g, range(1, l + 1))) == (l + 1,)
        for l in range(2, 9):
            _, g = orbit_generators("C", l, 1)
            assert cycle_type(word_perm(g, range(1, l + 1))) == (2 * l,)
            assert cycle_type(word_perm(g, range(1, l))) == (l, l)
        for l in range(3, 9):
            _, g = orbit_generators("D", l, 1)
            assert cycle_type(word_perm(g, range(1, l))) == (l, l)
            assert sorted(cycle_type(word_perm(g, range(1, l + 1))), reverse=True) == sorted([2 * l - 2, 2], reverse=True)


def test_04_e6(capsys):
    with criterion(4, "E6: order 51840, [12,12,3] and [9,9,9] strictly transitive", capsys) as info:
        t0 = time.perf_counter()
        res = fixture_e6()
        dt = time.perf_counter() - t0
        info["detail"] = f"{dt:.1f} s"
        assert res.data["group_order"] == 51840
        assert res.passed, res.log
        assert dt < 30


E7_SCRIPT = """
import json
from equivgal.weyl import enumerate_cycle_types, is_strictly_transitive, orbit_generators
orbit, gens = orbit_generators("E", 7, 7)
enum = enumerate_cycle_types(gens)
print(json.dumps({"order": enum.group_order, "m": len(orbit), "types": [list(t) for t in enum.cycle_types]}))
"""


@pytest.fixture(scope="module")
def e7_run():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", E7_SCRIPT], capture_output=True, text=True, timeout=600)
    dt = time.perf_counter() - t0
    rss = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss * 1024  # kB on Linux
    assert proc.returncode == 0, proc.stderr
    data = json.loads(proc.stdout)
    data["types"] = {tuple(t) for t in data["types"]}
    return data, dt, rss


def test_05_e7(capsys, e7_run):
    # checks the literal pair [18,18,18,2], [14,14,14]; the second cannot be a
    # cycle type on 56 points, so this criterion cannot pass as written
    with criterion(5, "E7: order 2903040, [18,18,18,2] and [14,14,14] strictly transitive", capsys) as info:
        data, dt, rss = e7_run
        info["detail"] = f"{dt:.0f} s, peak RSS {rss / 2**20:.0f} MiB"
        assert data["order"] == 2903040
        assert dt <= 600 and rss <= 2 ** 30
        assert (18, 18, 18, 2) in data["types"]
        assert (14, 14, 14) in data["types"], "no cycle type [14,14,14] on 56 points (its parts sum to 42)"
        ok, cert = is_strictly_transitive([(18, 18, 18, 2), (14, 14, 14)], data["m"])
        assert ok and cert.replay()


def test_05b_e7_completed_type(e7_run):
    # the type the criterion evidently means: four 14-cycles
    data, _, _ = e7_run
    assert (14, 14, 14, 14) in data["types"]
    assert not any(t.count(14) == 3 for t in data["types"])
    ok, cert = is_strictly_transitive([(18, 18, 18, 2), (14, 14, 14, 14)], data["m"])
    assert ok and cert.replay()


def test_06_b_table(capsys):
    with criterion(6, "B spin table: sets for l = 2, 3, 5, 7; none for l = 4 (exhaustive)", capsys) as info:
        t0 = time.perf_counter()
        res = fixture_b_table((2, 3, 4, 5, 7))
        dt = time.perf_counter() - t0
        info["detail"] = f"{dt:.1f} s"
        rows = {r["rank"]: r for r in res.data["rows"]}
        for l in (2, 3, 5, 7):
            assert rows[l]["minimal_sets"], l
        assert rows[4]["minimal_sets"] == [] and rows[4]["exhaustive"]
        assert res.passed, res.log
        assert dt < 120


def test_07_sl2_sqrtx(capsys):
    with criterion(7, "SL2 over F(sqrt x): printed basis, printed f and interpolated A", capsys):
        res = fixture_sl2_sqrtx()
        names = [e["check"] for e in res.log]
        assert sum("printed f reproduce" in n for n in names) == 3
        assert sum("interpolated A" in n for n in names) == 3
        assert any("basis equivariant" in n for n in names)
        assert res.passed, [e for e in res.log if e["status"] != "pass"]


def test_08_sl2_toric(capsys):
    with criterion(8, "SL2 toric example: eta identity, printed A_bar, formula A~", capsys):
        res = fixture_sl2_toric()
        names = [e["check"] for e in res.log]
        assert any("eta^gamma'" in n for n in names)
        assert any("printed A_bar" in n for n in names)
        assert any("formula A~" in n for n in names)
        assert res.passed, [e for e in res.log if e["status"] != "pass"]


def test_09_slopes(capsys):
    with criterion(9, "irregular seeds: unique slope 2 - 1/n and char poly x^n - 1", capsys):
        for kind, ranks, size in (("A", range(1, 7), lambda l: l + 1), ("C", range(1, 7), lambda l: 2 * l)):
            for l in ranks:
                n = size(l)
                res = unique_slope(irregular_seed(kind, l))
                assert res.irregular and res.slope == 2 - Fraction(1, n) and res.slope.denominator == n
                assert [c.to_fraction() for c in res.charpoly] == [-1] + [0] * (n - 1) + [1]


def test_10_seed_properties(capsys):
    with criterion(10, "principal nilpotent centralizer = l, torus certificate rank = l + 1", capsys):
        for kind, lo in (("A", 1), ("C", 1), ("D", 3)):
            for l in range(lo, 7):
                assert ad_kernel_dim(principal_nilpotent(kind, l)) == l, (kind, l)
                _, cert = generic_torus_seed(kind, l)
                assert cert.rank == l + 1 and cert.independent, (kind, l)


def test_11_alternate_sl2(capsys):
    with criterion(11, "alternate SL2: only w = 0 (n <= 3, m <= 10); substitution and equivariance (n <= 4)", capsys) as info:
        t0 = time.perf_counter()
        res = fixture_alternate_sl2((1, 2, 3), 10, (1, 2, 3, 4))
        dt = time.perf_counter() - t0
        info["detail"] = f"{dt:.1f} s"
        assert res.passed, [e for e in res.log if e["status"] != "pass"]
        assert dt < 60


def test_12_mutations(capsys):
    with criterion(12, "each mutation fails exactly its targeted check", capsys):
        F = sl2_sqrtx_field()
        factors = [sl2_sqrtx_factor(F)]
        clean = assemble_group_equation(factors, "transpose-inverse", 2, F).to_json()
        assert check_system(json.loads(json.dumps(clean))).passed
        for name in sorted(MUTATIONS):
            record, target = mutate(name, factors, "transpose-inverse", 2, F)
            bundle = check_system(json.loads(json.dumps(record)))
            assert bundle.failed_ids, name
            assert all(i.startswith(target) for i in bundle.failed_ids), (name, bundle.failed_ids)
