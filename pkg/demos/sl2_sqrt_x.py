"""An sl2 system over F(x, sqrt x) with prescribed poles at x = 4, 9, 16.

The basis elements are equivariant for sigma(y) = -y acting on sl2 by
X -> -X^T.  The poles carry an irregular, a torus and a nilpotent residue;
the script interpolates A, re-expands it and runs the verifier.

    python3 demos/sl2_sqrt_x.py
"""

from __future__ import annotations

from equivgal.assemble import assemble_group_equation
from equivgal.equivariant import kummer_matrix_expand
from equivgal.fixtures import printed_f, sl2_sqrtx_factor, sl2_sqrtx_field
from equivgal.verify import check_system


def main() -> None:
    F = sl2_sqrtx_field()
    system = assemble_group_equation([sl2_sqrtx_factor(F)], "transpose-inverse", 2, F)
    print("A = sum f_j e_j with")
    for j, f in enumerate(system.f[0], 1):
        print(f"  f{j} = {f}")
    print("\nclosed forms for comparison:")
    for j, f in enumerate(printed_f(F), 1):
        print(f"  f{j} = {f}")

    for p in system.points:
        exp = kummer_matrix_expand(system.matrix, p["x"], 0, p["root"])
        polar = {k: [[str(v) for v in r] for r in m] for k, m in exp.items() if k < 0}
        print(f"\n{p['role']} point x = {p['x']}, y = {p['root']}: {polar}")

    bundle = check_system(system.to_json())
    print()
    for c in bundle.checks:
        print(f"  {c.status:4s} {c.id}")
    print("verified" if bundle.passed else "NOT verified")


if __name__ == "__main__":
    main()
