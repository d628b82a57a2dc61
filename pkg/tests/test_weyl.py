from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from equivgal.roots import minuscule_weights, root_system, weight_orbit
from equivgal.weyl import (
    EnumerationCapExceeded,
    compose,
    cycle_type,
    enumerate_cycle_types,
    find_strictly_transitive,
    invariant_sums,
    is_perm,
    is_strictly_transitive,
    orbit_generators,
    word_perm,
)


def weyl_order(kind: str, l: int) -> int:
    return {
        "A": math.factorial(l + 1),
        "B": 2 ** l * math.factorial(l),
        "C": 2 ** l * math.factorial(l),
        "D": 2 ** (l - 1) * math.factorial(l),
    }[kind]


def brute_invariant_sums(ct):
    sums = set()
    for mask in range(1 << len(ct)):
        sums.add(sum(p for k, p in enumerate(ct) if mask >> k & 1))
    return sums


def test_cartan_matrices_have_the_right_shape():
    assert root_system("A", 3).cartan == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    # cartan[i][j] = <alpha_j, alpha_i^vee>; in B2 the short root is the second one
    assert root_system("B", 2).cartan == ((2, -1), (-2, 2))
    assert root_system("C", 2).cartan == ((2, -2), (-1, 2))
    assert root_system("E7").rank == 7


@pytest.mark.parametrize("kind,rank,hw,size", [
    ("A", 4, 1, 5), ("A", 4, 2, 10), ("B", 3, 3, 8), ("C", 3, 1, 6),
    ("D", 4, 1, 8), ("D", 5, 5, 16), ("E6", None, 1, 27), ("E6", None, 6, 27), ("E7", None, 7, 56),
])
def test_orbit_sizes(kind, rank, hw, size):
    orbit, gens = orbit_generators(kind, rank, hw)
    assert len(orbit) == size
    for g in gens:
        assert is_perm(g)
        assert compose(g, g) == tuple(range(size))


def test_non_minuscule_weight_is_rejected():
    rs = root_system("B", 3)
    with pytest.raises(ValueError):
        weight_orbit(rs, (1, 0, 0))


def test_minuscule_table():
    assert minuscule_weights("D", 4) == [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    assert minuscule_weights("E7") == [(0, 0, 0, 0, 0, 0, 1)]


@pytest.mark.parametrize("kind,rank,hw", [("A", 1, 1), ("A", 3, 1), ("A", 4, 2), ("B", 3, 3), ("B", 4, 4),
                                          ("C", 3, 1), ("C", 4, 1), ("D", 4, 1), ("D", 5, 1), ("D", 4, 4)])
def test_group_orders_against_sympy(kind, rank, hw):
    _, gens = orbit_generators(kind, rank, hw)
    enum = enumerate_cycle_types(gens)
    G = PermutationGroup([Permutation(list(g)) for g in gens])
    assert enum.group_order == G.order() == weyl_order(kind, rank)


@pytest.mark.parametrize("kind,rank,hw", [("A", 3, 1), ("C", 3, 1), ("D", 4, 1), ("B", 3, 3)])
def test_cycle_types_against_sympy_elements(kind, rank, hw):
    _, gens = orbit_generators(kind, rank, hw)
    enum = enumerate_cycle_types(gens)
    G = PermutationGroup([Permutation(list(g)) for g in gens])
    want = set()
    for el in G.elements:
        want.add(cycle_type(tuple(el.array_form)))
    assert set(enum.cycle_types) == want


@pytest.mark.parametrize("kind,rank,hw", [("A", 5, 1), ("C", 4, 1), ("D", 5, 1), ("B", 5, 5), ("E6", None, 1)])
def test_witness_words_replay(kind, rank, hw):
    _, gens = orbit_generators(kind, rank, hw)
    enum = enumerate_cycle_types(gens)
    for ct, word in enum.cycle_types.items():
        assert cycle_type(word_perm(gens, word)) == ct


def test_enumeration_cap():
    _, gens = orbit_generators("D", 5, 1)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_cycle_types(gens, cap=100)


def test_named_products():
    for l in range(1, 9):
        _, g = orbit_generators("A", l, 1)
        assert cycle_type(word_perm(g, range(1, l + 1))) == (l + 1,)
    for l in range(2, 9):
        _, g = orbit_generators("C", l, 1)
        assert cycle_type(word_perm(g, range(1, l + 1))) == (2 * l,)
        assert cycle_type(word_perm(g, range(1, l))) == (l, l)
    for l in range(4, 9):
        _, g = orbit_generators("D", l, 1)
        assert cycle_type(word_perm(g, range(1, l + 1))) == (2 * l - 2, 2)
        assert cycle_type(word_perm(g, range(1, l))) == (l, l)


def test_word_convention():
    # S_1 S_2 on three points: apply S_2 first
    _, g = orbit_generators("A", 2, 1)
    p = word_perm(g, (1, 2))
    assert p == compose(g[0], g[1])
    assert word_perm(g, ()) == (0, 1, 2)


@pytest.mark.parametrize("ct,want", [((4, 2), {0, 2, 4, 6}), ((6,), {0, 6}), ((3, 2, 1), set(range(7)))])
def test_invariant_sums_examples(ct, want):
    assert invariant_sums(ct) == want


@given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
def test_invariant_sums_brute_force(parts):
    assert invariant_sums(parts) == brute_invariant_sums(parts)


def test_strict_transitivity_toy_cases():
    ok, cert = is_strictly_transitive([(6,)], 6)
    assert ok and cert.replay()
    ok, cert = is_strictly_transitive([(3, 3), (4, 2)], 6)
    assert ok and cert.replay()
    ok, cert = is_strictly_transitive([(3, 3), (3, 2, 1)], 6)
    assert not ok and cert.blocking == 3 and cert.replay()


def partitions(m):
    if m == 0:
        yield ()
        return

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail
    yield from rec(m, m)


@given(st.integers(2, 9).flatmap(lambda m: st.tuples(
    st.just(m), st.lists(st.sampled_from(list(partitions(m))), min_size=1, max_size=4),
    st.sampled_from(list(partitions(m))))))
def test_strict_transitivity_is_monotone(args):
    m, cts, extra = args
    before, c1 = is_strictly_transitive(cts, m)
    after, c2 = is_strictly_transitive(cts + [extra], m)
    assert c1.replay() and c2.replay()
    assert not before or after


def _random_element(gens, rng, length=40):
    return word_perm(gens, [rng.randrange(1, len(gens) + 1) for _ in range(length)])


@pytest.mark.parametrize("kind,rank,hw", [("A", 4, 1), ("C", 3, 1), ("D", 4, 1), ("B", 3, 3), ("B", 5, 5),
                                          ("E6", None, 1)])
def test_found_sets_generate_transitive_groups(kind, rank, hw):
    rng = random.Random(20240611)
    res = find_strictly_transitive(kind, rank, hw, max_set_size=3)
    assert res.minimal_sets
    _, gens = orbit_generators(kind, rank, hw)
    for s in res.minimal_sets[:3]:
        words = [res.enumeration.cycle_types[res.types[k]] for k in s]
        for _ in range(100):
            reps = []
            for w in words:
                h = _random_element(gens, rng)
                hinv = tuple(sorted(range(len(h)), key=lambda i: h[i]))
                reps.append(compose(compose(h, word_perm(gens, w)), hinv))
            G = PermutationGroup([Permutation(list(p)) for p in reps])
            assert G.is_transitive()


def test_a_series_contains_the_coxeter_singleton():
    for l in range(1, 6):
        res = find_strictly_transitive("A", l, 1)
        singles = [s for s in res.minimal_sets if len(s) == 1]
        assert (l + 1,) in [res.types[s[0]] for s in singles]
