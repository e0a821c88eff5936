"""Bounded exhaustive verification over all trees up to a size."""
from preinforce.verifier import CLAIMS, run_theorem_suite, structural_property_checks
from preinforce.family import build_block

for claim, p, n_max in [("thm-1.2", 2, 10), ("thm-2.2", 2, 8), ("thm-4.4", 3, 12)]:
    report = run_theorem_suite(claim, p, n_max)
    print(f"{claim} p={p} n<={n_max}: {report.checked} checked, passed = {report.passed}")
    if report.census:
        print("  extremal trees per n:", {n: c for n, c in report.census.items() if c})

print("available claims:", ", ".join(sorted(CLAIMS)))

# Structural statements about an extremal tree.
T = build_block("Ft", 3, 3)[0]
for claim, status, detail in structural_property_checks(T, 3):
    print(f"  {claim}: {status} {detail}")
