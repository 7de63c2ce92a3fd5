"""
Case runner for verification suites.

Cases are independent closures; they can be sharded over a thread pool.
The report lists them by canonical key, never by completion order.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Mapping, Optional

from ncfree.errors import ConsistencyError
from ncfree.verify.report import CaseKey, CaseResult, StageRecord, VerificationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Case:
    """A deferred check.

    Attributes:
        key: Canonical key of the case
        check: Zero-argument callable producing the CaseResult
    """

    key: CaseKey
    check: Callable[[], CaseResult]


def _run_one(case: Case) -> CaseResult:
    try:
        return case.check()
    except ConsistencyError as e:
        # two computation routes disagreed inside the case itself
        return CaseResult(key=case.key, inputs={}, left="", right="", passed=False, note=str(e))


def _sort_key(result: CaseResult):
    return tuple(str(part) for part in result.key)


def run_cases(
    suite: str,
    parameters: Mapping[str, Any],
    cases: Iterable[Case],
    workers: int = 1,
    stage: Optional[str] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """
    Run every case and aggregate a report.

    Args:
        suite: Suite name recorded in the report
        parameters: Parameters recorded in the report
        cases: Cases to run
        workers: Thread count (1 runs inline)
        stage: Stage name for the stage log (defaults to the suite name)
        seed: Seed recorded with the stage

    Returns:
        VerificationReport with failures sorted by case key
    """
    stage = stage or suite
    case_list = list(cases)
    started = time.perf_counter_ns()
    logger.info("stage %s: %d cases, %d worker(s)", stage, len(case_list), workers)

    if workers <= 1:
        results: List[CaseResult] = [_run_one(case) for case in case_list]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, case_list))

    results.sort(key=_sort_key)
    failures = tuple(r for r in results if not r.passed)
    for failure in failures:
        logger.warning(
            "%s: case %s failed: %s vs %s", stage, failure.key, failure.left, failure.right
        )

    elapsed = time.perf_counter_ns() - started
    return VerificationReport(
        suite=suite,
        parameters=dict(parameters),
        cases_run=len(results),
        failures=failures,
        wall_time=elapsed / 1e9,
        stages=(
            StageRecord("begin", stage, seed, 0),
            StageRecord("end", stage, seed, elapsed),
        ),
    )
