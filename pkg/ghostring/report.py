"""
Verification reports shared by every command.
"""

import json
import platform
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

import numpy as np

from . import __version__

REPORT_SCHEMA = "ghostring/report@1"


def to_jsonable(value: Any) -> Any:
    """Convert report payloads (ring elements, vectors, numpy scalars) to JSON types."""
    if hasattr(value, "to_json"):
        return value.to_json()
    if hasattr(value, "triple"):
        return list(value.triple)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


@dataclass
class Report:
    """Named checks, counterexamples and data gathered by one command."""
    command: str
    checks: Dict[str, Any] = field(default_factory=dict)
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    seeds: Dict[str, Any] = field(default_factory=dict)
    data: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    budget_exhausted: bool = False

    @property
    def passed(self) -> bool:
        return not self.counterexamples and all(v is not False for v in self.checks.values())

    def check(self, name: str, ok: bool, counterexample: Optional[Any] = None) -> bool:
        self.checks[name] = bool(ok)
        if not ok:
            self.counterexamples.append({"check": name, "counterexample": to_jsonable(counterexample)})
        return bool(ok)

    def record(self, name: str, value: Any) -> None:
        """Record a check whose outcome is a value rather than a flag."""
        self.checks[name] = to_jsonable(value)

    def fail(self, name: str, counterexample: Any) -> None:
        self.check(name, False, counterexample)

    def merge(self, other: 'Report', prefix: str = "") -> None:
        for name, value in other.checks.items():
            self.checks[prefix + name] = value
        for item in other.counterexamples:
            self.counterexamples.append(dict(item, check=prefix + item["check"]))
        for name, value in other.data.items():
            self.data[prefix + name] = value
        self.seeds.update(other.seeds)
        self.budget_exhausted = self.budget_exhausted or other.budget_exhausted
        for name, seconds in other.timings.items():
            self.timings[prefix + name] = seconds

    @contextmanager
    def timed(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - start, 6)

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "passed": self.passed,
            "budget_exhausted": self.budget_exhausted,
            "checks": to_jsonable(self.checks),
            "counterexamples": self.counterexamples,
            "seeds": to_jsonable(self.seeds),
            "data": to_jsonable(self.data),
            "versions": versions(),
        }
        if include_timings:
            out["timings"] = self.timings
        return out

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2, sort_keys=True)

    def summary_lines(self) -> List[str]:
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'}"]
        for name, value in self.checks.items():
            if value is True:
                mark = "ok"
            elif value is False:
                mark = "FAILED"
            else:
                mark = json.dumps(value, sort_keys=True)
            lines.append(f"  {name}: {mark}")
        for item in self.counterexamples:
            lines.append(f"  counterexample [{item['check']}]: {json.dumps(item['counterexample'], sort_keys=True)}")
        if self.budget_exhausted:
            lines.append("  budget exhausted before a definitive verdict")
        return lines


def versions() -> Dict[str, str]:
    return {
        "ghostring": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }
