"""Build a C2 system over F(x, sqrt x), verify it, then break it four ways.

Each mutation should trip only the check it targets.

    python3 demos/mutations.py
"""

from __future__ import annotations

from equivgal.assemble import assemble_group_equation, default_plan
from equivgal.verify import MUTATIONS, check_system, mutate


def main() -> None:
    factors = [default_plan("C", 2, [4, 9, 16], 2)]
    bundle = check_system(assemble_group_equation(factors, "inner-diag", 2).to_json())
    print(f"clean C2 system: {'pass' if bundle.passed else 'fail'} ({len(bundle.checks)} checks)")
    for name in sorted(MUTATIONS):
        record, target = mutate(name, factors, "inner-diag", 2)
        failed = check_system(record).failed_ids
        print(f"  {name:24s} targets {target:22s} failed: {failed}")


if __name__ == "__main__":
    main()
