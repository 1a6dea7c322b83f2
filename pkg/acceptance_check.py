# acceptance_check.py - Reproduction checks for the published counts
import argparse
import os
import sys

from bounds import asymptotic_estimate, bound_report, log10_int, loopless_map_count
from classify import CASE_ORDER, case_counts, class_report
from enumerator import enumerate_irreducible_classes

EXPECTED_CASES = dict(zip(CASE_ORDER, (20, 25, 1, 4, 2, 13, 5, 29, 12)))


def check_small_counts() -> bool:
    """Square and hexagon class counts"""
    ok = True
    for k, expected in ((2, 0), (3, 6)):
        found = len(enumerate_irreducible_classes(k))
        if found != expected:
            print(f"⚠️  k={k}: {found} classes, expected {expected}")
            ok = False
    return ok


def check_bounds() -> bool:
    """Edge bound, small map counts and the theorem bound for the octagon"""
    report = bound_report(4)
    ok = True
    if report.N != 553:
        print(f"⚠️  N(4) = {report.N}, expected 553")
        ok = False
    small = [loopless_map_count(n) for n in (1, 2, 3)]
    if small != [1, 3, 13]:
        print(f"⚠️  t_1..t_3 = {small}, expected [1, 3, 13]")
        ok = False
    if report.theorem_bound < 111:
        print("⚠️  theorem bound is below the class count")
        ok = False
    return ok


def check_asymptotic() -> bool:
    """Asymptotic form against the exact product at N=200"""
    n = 200
    gap = abs(log10_int(n * loopless_map_count(n)) - asymptotic_estimate(n))
    if gap >= 0.01:
        print(f"⚠️  log10 gap at N={n} is {float(gap):.5f}")
        return False
    return True


def check_octagon(jobs: int) -> bool:
    """Full octagon run with the per-case breakdown"""
    classes = enumerate_irreducible_classes(4, jobs=jobs)
    ok = True
    if len(classes) != 111:
        print(f"⚠️  k=4: {len(classes)} classes, expected 111")
        ok = False
    counts = case_counts(class_report(c, code) for code, c in classes.items())
    if counts != EXPECTED_CASES:
        print(f"⚠️  case counts {counts}, expected {EXPECTED_CASES}")
        ok = False
    return ok


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Reproduction checks")
    parser.add_argument("--full", action="store_true", help="include the octagon run")
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()
    checks = [check_small_counts(), check_bounds(), check_asymptotic()]
    if args.full or os.getenv("ZONOTILE_RUN_SLOW") == "1":
        checks.append(check_octagon(args.jobs))
    if all(checks):
        print("✅ All acceptance checks passed")
    else:
        sys.exit(1)
