"""
Verification reports.

A suite run produces one VerificationReport: the parameters it ran with,
how many cases it checked, every failing case with its inputs and both
computed sides, and a stage log. All values are strings or integers so
that the JSON form is byte-identical for identical runs; wall time and
stage timings are only written when asked for.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

CaseKey = Tuple[Any, ...]


@dataclass(frozen=True)
class CaseResult:
    """Outcome of a single verification case.

    Attributes:
        key: Sortable canonical key (ordering of cases in a report)
        inputs: Case inputs as text (partition literals, eps strings, seeds)
        left: One side of the checked identity, as text
        right: The other side, as text
        passed: Whether the two sides agree
        note: Free-form detail for failures
    """

    key: CaseKey
    inputs: Mapping[str, str]
    left: str
    right: str
    passed: bool
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "key": [str(part) for part in self.key],
            "inputs": dict(self.inputs),
            "left": self.left,
            "right": self.right,
            "passed": self.passed,
        }
        if self.note:
            data["note"] = self.note
        return data


def agreement(
    key: CaseKey, inputs: Mapping[str, Any], left: Any, right: Any, note: str = ""
) -> CaseResult:
    """CaseResult comparing two exact values."""
    return CaseResult(
        key=key,
        inputs={name: str(value) for name, value in inputs.items()},
        left=str(left),
        right=str(right),
        passed=left == right,
        note=note,
    )


def predicate(
    key: CaseKey, inputs: Mapping[str, Any], holds: bool, note: str = ""
) -> CaseResult:
    """CaseResult for a yes/no property (left is the observed value, right is True)."""
    return CaseResult(
        key=key,
        inputs={name: str(value) for name, value in inputs.items()},
        left=str(bool(holds)),
        right="True",
        passed=bool(holds),
        note=note,
    )


@dataclass(frozen=True)
class StageRecord:
    """One begin/end event of a suite stage.

    Attributes:
        event: "begin" or "end"
        stage: Stage name
        seed: Seed the stage ran with (None for exhaustive stages)
        elapsed_ns: Nanoseconds since the run started
    """

    event: str
    stage: str
    seed: Optional[int]
    elapsed_ns: int

    def to_dict(self, include_timing: bool) -> Dict[str, Any]:
        data: Dict[str, Any] = {"event": self.event, "stage": self.stage, "seed": self.seed}
        if include_timing:
            data["elapsed_ns"] = self.elapsed_ns
        return data


@dataclass(frozen=True)
class VerificationReport:
    """Aggregated result of a suite.

    Attributes:
        suite: Suite name
        parameters: Degree cap, sizes, instance count, seed
        cases_run: Number of cases checked
        failures: Failing cases, sorted by key
        wall_time: Seconds spent
        stages: Stage log in the order the stages ran
    """

    suite: str
    parameters: Mapping[str, Any]
    cases_run: int
    failures: Tuple[CaseResult, ...] = ()
    wall_time: float = 0.0
    stages: Tuple[StageRecord, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "suite": self.suite,
            "parameters": dict(self.parameters),
            "cases_run": self.cases_run,
            "passed": self.passed,
            "failures": [case.to_dict() for case in self.failures],
            "stages": [record.to_dict(include_timing) for record in self.stages],
        }
        if include_timing:
            data["wall_time"] = round(self.wall_time, 6)
        return data

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2) + "\n"

    def to_text(self, show_stages: bool = False, include_timing: bool = False) -> str:
        """Human-readable summary, with every failure spelled out."""
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        lines = ["=" * 60, f"Suite {self.suite}: {status}", "=" * 60]
        lines.append(f"parameters: {params}")
        lines.append(f"cases run:  {self.cases_run}")
        lines.append(f"failures:   {len(self.failures)}")
        if include_timing:
            lines.append(f"wall time:  {self.wall_time:.3f}s")

        for case in self.failures:
            lines.append("-" * 60)
            lines.append(f"case {' '.join(str(part) for part in case.key)}")
            for name, value in sorted(case.inputs.items()):
                lines.append(f"  {name}: {value}")
            lines.append(f"  left:  {case.left}")
            lines.append(f"  right: {case.right}")
            if case.note:
                lines.append(f"  note:  {case.note}")

        if show_stages and self.stages:
            lines.append("-" * 60)
            for record in self.stages:
                timing = f" +{record.elapsed_ns / 1e6:.1f}ms" if include_timing else ""
                seed = "" if record.seed is None else f" seed={record.seed}"
                lines.append(f"  {record.event:5s} {record.stage}{seed}{timing}")
        lines.append("=" * 60)
        return "\n".join(lines)


def combine(
    suite: str, parameters: Mapping[str, Any], parts: List[VerificationReport]
) -> VerificationReport:
    """Merge the reports of several stages into one."""
    failures = sorted(
        (case for part in parts for case in part.failures),
        key=lambda case: tuple(str(p) for p in case.key),
    )
    return VerificationReport(
        suite=suite,
        parameters=dict(parameters),
        cases_run=sum(part.cases_run for part in parts),
        failures=tuple(failures),
        wall_time=sum(part.wall_time for part in parts),
        stages=tuple(record for part in parts for record in part.stages),
    )
