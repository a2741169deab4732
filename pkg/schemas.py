"""
COLOR ALGEBRA ENGINE - VERIFICATION REPORT SCHEMAS
==================================================
Structured, deterministic JSON output for every validator.

No timestamps or host data are recorded: identical input gives
byte-identical reports.
"""

from enum import Enum
from typing import Any, Dict, List, Optional
from dataclasses import dataclass, field, asdict
import json

_limits = {"max_counterexamples": 1}


def set_counterexample_limit(n: int) -> None:
    """Counterexamples kept per identity by reports created afterwards"""
    _limits["max_counterexamples"] = max(1, int(n))


class CheckStatus(Enum):
    """Outcome of one report section"""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class Counterexample:
    """First tuple on which an identity failed"""
    identity: str
    witness: List[str]  # basis labels or group elements, rendered
    lhs: Any  # JSON-ready rendering
    rhs: Any

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class VerificationReport:
    """
    Result of one validator.

    `parts` counts checks per identity; `total` is the size of the tuple
    space, which differs from `checks_run` only for sampled sweeps.
    """
    name: str
    checks_run: int = 0
    total: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)
    sampled: bool = False
    seed: Optional[int] = None
    parts: Dict[str, int] = field(default_factory=dict)
    skipped_reason: Optional[str] = None
    max_counterexamples: int = field(default_factory=lambda: _limits["max_counterexamples"])

    @property
    def status(self) -> CheckStatus:
        if self.skipped_reason is not None:
            return CheckStatus.SKIPPED
        return CheckStatus.FAIL if self.counterexamples else CheckStatus.PASS

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def count(self, identity: str, n: int = 1) -> None:
        self.checks_run += n
        self.parts[identity] = self.parts.get(identity, 0) + n

    def note_space(self, total: int, sampled: bool, seed: Optional[int]) -> None:
        self.total += total
        if sampled:
            self.sampled = True
            self.seed = seed

    def record(self, identity: str, witness: List[Any], lhs: Any, rhs: Any) -> None:
        """Keep the first counterexamples per identity in sweep order"""
        seen = sum(1 for c in self.counterexamples if c.identity == identity)
        if seen < self.max_counterexamples:
            self.counterexamples.append(
                Counterexample(identity, [str(w) for w in witness], lhs, rhs)
            )

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checks_run += other.checks_run
        self.total += other.total
        for key, n in other.parts.items():
            self.parts[key] = self.parts.get(key, 0) + n
        self.counterexamples.extend(other.counterexamples)
        if other.sampled:
            self.sampled = True
            self.seed = other.seed
        return self

    def failures(self, identity: str) -> List[Counterexample]:
        return [c for c in self.counterexamples if c.identity == identity]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        payload = {
            "name": self.name,
            "status": self.status.value,
            "checks_run": self.checks_run,
            "total": self.total,
            "sampled": self.sampled,
            "seed": self.seed,
            "parts": dict(sorted(self.parts.items())),
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }
        if self.skipped_reason is not None:
            payload["skipped_reason"] = self.skipped_reason
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


@dataclass
class ReportDocument:
    """
    Machine-readable output of `verify` and `realize`.
    One section per check; multi-identity checks are split per identity.
    """
    source: str
    sections: List[VerificationReport] = field(default_factory=list)
    version: int = 1

    def add(self, report: VerificationReport, split: bool = False) -> None:
        if not split or len(report.parts) <= 1:
            self.sections.append(report)
            return
        for identity in sorted(report.parts):
            self.sections.append(VerificationReport(
                name=f"{report.name}.{identity}",
                checks_run=report.parts[identity],
                total=report.parts[identity] if not report.sampled else report.total,
                counterexamples=report.failures(identity),
                sampled=report.sampled,
                seed=report.seed,
                parts={identity: report.parts[identity]},
            ))

    def skip(self, name: str, reason: str) -> None:
        self.sections.append(VerificationReport(name=name, skipped_reason=reason))

    @property
    def status(self) -> CheckStatus:
        if any(s.status == CheckStatus.FAIL for s in self.sections):
            return CheckStatus.FAIL
        return CheckStatus.PASS

    @property
    def exit_code(self) -> int:
        return 1 if self.status == CheckStatus.FAIL else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "source": self.source,
            "status": self.status.value,
            "sections": [s.to_dict() for s in self.sections],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent, sort_keys=True) + "\n"
