"""Weyl groups acting on minuscule orbits.

Prints the cycle types of the named Coxeter-type words, the E6 table and
a small search for strictly transitive sets in the spin orbit of B_l.

    python3 demos/weyl_tables.py
"""

from __future__ import annotations

from equivgal.weyl import (
    cycle_type,
    enumerate_cycle_types,
    find_strictly_transitive,
    is_strictly_transitive,
    orbit_generators,
    word_perm,
)


def named_words(l: int = 5) -> None:
    for kind in "ACD":
        orbit, gens = orbit_generators(kind, l, 1)
        full = cycle_type(word_perm(gens, range(1, l + 1)))
        short = cycle_type(word_perm(gens, range(1, l)))
        print(f"{kind}{l} on {len(orbit)} weights: 1..{l} -> {list(full)}, 1..{l - 1} -> {list(short)}")


def e6() -> None:
    orbit, gens = orbit_generators("E", 6, 1)
    enum = enumerate_cycle_types(gens)
    print(f"\nE6 on {len(orbit)} weights, |W| = {enum.group_order}, {len(enum.cycle_types)} cycle types")
    pair = [(12, 12, 3), (9, 9, 9)]
    for ct in pair:
        print(f"  {list(ct)} from word {list(enum.cycle_types[ct])}")
    ok, cert = is_strictly_transitive(pair, len(orbit))
    print(f"  strictly transitive: {ok}")


def spin(ranks=(2, 3, 4, 5)) -> None:
    print()
    for l in ranks:
        r = find_strictly_transitive("B", l, l)
        sets = [[list(r.types[k]) for k in s] for s in r.minimal_sets]
        print(f"B{l} spin orbit ({r.enumeration.degree} weights): {sets or 'none'}"
              f"{' (exhaustive)' if r.exhaustive else ''}")


if __name__ == "__main__":
    named_words()
    e6()
    spin()
