"""Exact tools for building and checking equivariant linear differential systems.

Modules, bottom up: ``cyclo`` (cyclotomic fields), ``linalg``, ``roots`` and
``weyl`` (Weyl groups on minuscule orbits), ``lie`` (seed matrices),
``series`` and ``local`` (local models), ``funcfield`` and ``equivariant``
(the Kummer field and interpolation), ``assemble``, ``verify``,
``alternate``, ``fixtures`` and ``cli``.
"""

from __future__ import annotations

from .assemble import Factor, PlannedPoint, assemble_group_equation, default_plan
from .cyclo import CycloField, FieldElem, cyclotomic_field
from .verify import VerificationBundle, check_system
from .weyl import enumerate_cycle_types, find_strictly_transitive, is_strictly_transitive, orbit_generators, word_perm

__version__ = "0.1.0"

__all__ = [
    "CycloField",
    "FieldElem",
    "cyclotomic_field",
    "orbit_generators",
    "word_perm",
    "enumerate_cycle_types",
    "is_strictly_transitive",
    "find_strictly_transitive",
    "Factor",
    "PlannedPoint",
    "default_plan",
    "assemble_group_equation",
    "check_system",
    "VerificationBundle",
]
