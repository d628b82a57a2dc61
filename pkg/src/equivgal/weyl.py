"""The Weyl group acting on a minuscule orbit by permutations.

Permutations are tuples of 0-based images, ``p[i]`` being the image of
point i.  A word ``(i1, ..., ik)`` of 1-based simple-reflection labels
denotes the product ``S_i1 S_i2 ... S_ik`` acting on points as ordinary
composition of maps (rightmost factor first), which is the convention under
which ``S_1 S_2 ... S_l`` is the cycle ``(1, 2, ..., l+1)`` for type A.
"""

from __future__ import annotations

import itertools
from array import array
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .roots import RootSystem, Weight, reflect, root_system, weight_orbit

Perm = tuple[int, ...]
CycleType = tuple[int, ...]

DEFAULT_ENUM_CAP = 5_000_000
ENUM_CAP_ENV = "EQUIVGAL_ENUM_CAP"


class EnumerationCapExceeded(RuntimeError):
    """The generated group is larger than the configured element cap."""


def default_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


# basic permutation helpers ------------------------------------------------

def compose(p: Perm, q: Perm) -> Perm:
    """The map x -> p(q(x))."""
    return tuple(p[i] for i in q)


def identity_perm(m: int) -> Perm:
    return tuple(range(m))


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> CycleType:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


# generators -----------------------------------------------------------------

def reflection_perms(rs: RootSystem, orbit: Sequence[Weight]) -> list[Perm]:
    index = {tuple(w): k for k, w in enumerate(orbit)}
    gens = []
    for i in range(1, rs.rank + 1):
        images = []
        for w in orbit:
            v = reflect(rs, i, w)
            if v not in index:
                raise ValueError(f"reflection {i} leaves the orbit at {w}")
            images.append(index[v])
        gens.append(tuple(images))
    return gens


def orbit_generators(kind: str, rank: int | None, highest: Weight | int) -> tuple[list[Weight], list[Perm]]:
    """Orbit and simple-reflection permutations; ``highest`` may be an index k for omega_k."""
    rs = root_system(kind, rank)
    if isinstance(highest, int):
        highest = tuple(1 if j == highest - 1 else 0 for j in range(rs.rank))
    orbit = weight_orbit(rs, highest)
    return orbit, reflection_perms(rs, orbit)


def word_perm(gens: Sequence[Perm], word: Iterable[int]) -> Perm:
    """Product S_w1 S_w2 ... of 1-based generator labels."""
    word = list(word)
    m = len(gens[0])
    p = identity_perm(m)
    for i in reversed(word):
        if not 1 <= i <= len(gens):
            raise ValueError(f"generator label {i} out of range")
        p = compose(gens[i - 1], p)
    return p


# enumeration ----------------------------------------------------------------

@dataclass
class Enumeration:
    degree: int
    group_order: int
    cycle_types: dict[CycleType, tuple[int, ...]] = field(default_factory=dict)

    def sorted_types(self) -> list[CycleType]:
        return sorted(self.cycle_types, reverse=True)


def _row_cycle_types(block: np.ndarray) -> np.ndarray:
    """For each row permutation, the sorted vector of per-point cycle lengths."""
    n, m = block.shape
    ident = np.broadcast_to(np.arange(m, dtype=block.dtype), (n, m))
    cur = block.copy()
    lens = np.zeros((n, m), dtype=np.int16)
    step = 1
    while True:
        fresh = (cur == ident) & (lens == 0)
        lens[fresh] = step
        if lens.all():
            break
        cur = np.take_along_axis(block, cur.astype(np.intp), axis=1)
        step += 1
    lens.sort(axis=1)
    return lens


def _lens_to_type(lens: Sequence[int]) -> CycleType:
    out = []
    counts: dict[int, int] = {}
    for v in lens:
        counts[int(v)] = counts.get(int(v), 0) + 1
    for L in sorted(counts, reverse=True):
        out.extend([L] * (counts[L] // L))
    return tuple(out)


def enumerate_cycle_types(gens: Sequence[Perm], cap: int | None = None) -> Enumeration:
    """Breadth-first closure of the generated group, recording cycle types.

    For every cycle type the witness is the first element in BFS order, the
    BFS visiting generators in label order and forming ``S_k * parent``.
    """
    cap = default_cap() if cap is None else cap
    m = len(gens[0])
    if m > 256:
        raise ValueError("byte packing supports at most 256 points")
    tables = [bytes(g) + bytes(256 - m) for g in gens]
    # translate(t) maps byte v to t[v], so the result is S_k o p
    start = bytes(range(m))
    seen = {start}
    elems = [start]
    parent = array("l", [-1])
    gen = bytearray([0])
    idx = 0
    while idx < len(elems):
        p = elems[idx]
        for k, t in enumerate(tables):
            q = p.translate(t)
            if q not in seen:
                seen.add(q)
                elems.append(q)
                parent.append(idx)
                gen.append(k + 1)
                if len(elems) > cap:
                    raise EnumerationCapExceeded(f"more than {cap} group elements")
        idx += 1
    del seen
    order = len(elems)

    first: dict[bytes, int] = {}
    chunk = max(1, 4_000_000 // m)
    for lo in range(0, order, chunk):
        hi = min(order, lo + chunk)
        block = np.frombuffer(b"".join(elems[lo:hi]), dtype=np.uint8).reshape(hi - lo, m)
        lens = _row_cycle_types(block)
        uniq, where = np.unique(lens, axis=0, return_index=True)
        for row, w in zip(uniq, where):
            key = row.tobytes()
            if key not in first:
                first[key] = lo + int(w)
    del elems

    result = Enumeration(degree=m, group_order=order)
    for key, at in sorted(first.items(), key=lambda kv: kv[1]):
        lens = np.frombuffer(key, dtype=np.int16)
        word = []
        i = at
        while parent[i] >= 0:
            word.append(gen[i])
            i = parent[i]
        result.cycle_types[_lens_to_type(lens)] = tuple(word)
    return result


# strict transitivity ----------------------------------------------------------

def invariant_sums(ct: Sequence[int]) -> set[int]:
    """All sums of sub-multisets of the cycle lengths, including 0 and m."""
    bits = 1
    for part in ct:
        bits |= bits << part
    return {i for i in range(sum(ct) + 1) if bits >> i & 1}


def _missing_mask(ct: Sequence[int], m: int) -> int:
    bits = 1
    for part in ct:
        bits |= bits << part
    full = (1 << m) - 2  # bits 1..m-1
    return full & ~bits


@dataclass(frozen=True)
class TransitivityCertificate:
    """Replayable evidence for a strict-transitivity verdict.

    ``witnesses[i]`` is the position (in the input order) of a cycle type
    leaving no i-set invariant; ``blocking`` is the smallest i left without
    a witness, or None.
    """

    m: int
    cycle_types: tuple[CycleType, ...]
    witnesses: dict[int, int]
    blocking: int | None

    @property
    def verdict(self) -> bool:
        return self.blocking is None

    def replay(self) -> bool:
        """True when the evidence supports the stated verdict."""
        for i, k in self.witnesses.items():
            if i in invariant_sums(self.cycle_types[k]):
                return False
        if self.blocking is not None:
            return all(self.blocking in invariant_sums(ct) for ct in self.cycle_types)
        return set(self.witnesses) == set(range(1, self.m))


def is_strictly_transitive(cts: Iterable[Sequence[int]], m: int) -> tuple[bool, TransitivityCertificate]:
    cts = tuple(tuple(sorted(ct, reverse=True)) for ct in cts)
    for ct in cts:
        if sum(ct) != m:
            raise ValueError(f"cycle type {ct} does not sum to {m}")
    sums = [invariant_sums(ct) for ct in cts]
    witnesses: dict[int, int] = {}
    blocking = None
    for i in range(1, m):
        k = next((k for k, s in enumerate(sums) if i not in s), None)
        if k is None:
            if blocking is None:
                blocking = i
        else:
            witnesses[i] = k
    cert = TransitivityCertificate(m, cts, witnesses, blocking)
    return blocking is None, cert


@dataclass
class TransitiveSearch:
    kind: str
    rank: int
    highest: Weight
    enumeration: Enumeration
    types: list[CycleType]
    minimal_sets: list[tuple[int, ...]]
    max_set_size: int
    exhaustive: bool


def search_strictly_transitive(
    types: Sequence[CycleType], m: int, max_set_size: int | None = None, combo_cap: int = 50_000_000
) -> tuple[list[tuple[int, ...]], bool]:
    """All minimal strictly transitive subsets (as index tuples) up to a size bound.

    Returns the sets and whether the search was unconditional (bound at
    least the number of useful types, or no set can exist at all).
    """
    masks = [_missing_mask(ct, m) for ct in types]
    full = (1 << m) - 2
    union = 0
    for mk in masks:
        union |= mk
    if m == 1:
        return [()], True
    if union != full:
        return [], True
    useful = [k for k, mk in enumerate(masks) if mk]
    bound = len(useful) if max_set_size is None else min(max_set_size, len(useful))
    found: list[tuple[int, ...]] = []
    examined = 0
    for size in range(1, bound + 1):
        for combo in itertools.combinations(useful, size):
            examined += 1
            if examined > combo_cap:
                raise EnumerationCapExceeded(f"more than {combo_cap} candidate sets")
            acc = 0
            for k in combo:
                acc |= masks[k]
            if acc != full:
                continue
            cs = set(combo)
            if any(cs.issuperset(f) for f in found):
                continue
            found.append(combo)
    return found, bound >= len(useful)


def find_strictly_transitive(
    kind: str,
    rank: int | None,
    highest: Weight | int,
    max_set_size: int | None = None,
    cap: int | None = None,
) -> TransitiveSearch:
    """Enumerate the group on the orbit and search minimal strictly transitive sets."""
    orbit, gens = orbit_generators(kind, rank, highest)
    enum = enumerate_cycle_types(gens, cap=cap)
    types = sorted(enum.cycle_types, reverse=True)
    sets, exhaustive = search_strictly_transitive(types, enum.degree, max_set_size)
    rs = root_system(kind, rank)
    hw = orbit[0]
    return TransitiveSearch(rs.kind, rs.rank, hw, enum, types, sets,
                            max_set_size if max_set_size is not None else len(types), exhaustive)
