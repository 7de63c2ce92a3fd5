#!/usr/bin/env python3
"""
Run every verification suite with its default degree and instance count.

This demonstrates how to:
1. List the registered suites
2. Run one suite through the library API
3. Inspect the report (cases, failures, stage log)
"""

import sys

from ncfree.verify.suites import SUITES, run_suite


def main():
    print("=" * 60)
    print("ncfree - running every verification suite")
    print("=" * 60)

    failed = []
    total_cases = 0
    for name, spec in SUITES.items():
        report = run_suite(name, seed=0)
        total_cases += report.cases_run
        status = "PASS" if report.passed else "FAIL"
        print(f"{name:10s} degree {spec.degree:2d}  {report.cases_run:5d} cases  "
              f"{report.wall_time:7.2f}s  {status}")
        if not report.passed:
            failed.append(name)
            print(report.to_text())

    print("=" * 60)
    print(f"{len(SUITES)} suites, {total_cases} cases")
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return 1
    print("ALL SUITES PASSED")
    return 0


if __name__ == '__main__':
    sys.exit(main())
