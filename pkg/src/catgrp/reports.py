"""Check reports and the scan helpers that produce deterministic witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one exhaustive check.

    A failed report always carries a witness: the element indices of the
    first violation in row-major scan order. Composite checks keep their
    legs in ``parts``; the top-level witness is that of the first failing leg.
    """

    check_name: str
    passed: bool
    witness: Optional[tuple[int, ...]] = None
    detail: str = ""
    parts: tuple["CheckReport", ...] = ()
    data: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failed check {self.check_name!r} needs a witness")
        if self.witness is not None:
            object.__setattr__(self, "witness", tuple(int(w) for w in self.witness))

    def __bool__(self) -> bool:
        return self.passed

    @property
    def failed_leg(self) -> Optional[str]:
        """Name of the first failing leg, or None when everything passed."""
        if self.passed:
            return None
        for part in self.parts:
            if not part.passed:
                return part.failed_leg or part.check_name
        return self.check_name

    def part(self, name: str) -> "CheckReport":
        for p in self.parts:
            if p.check_name == name:
                return p
        raise KeyError(name)

    def to_json(self, target: str) -> dict:
        return {
            "target": target,
            "check": self.check_name,
            "passed": self.passed,
            "witness": None if self.witness is None else list(self.witness),
            "detail": self.detail,
        }


def passed(name: str, detail: str = "", data=None) -> CheckReport:
    return CheckReport(name, True, None, detail, data=data)


def failed(name: str, witness: Sequence[int], detail: str, data=None) -> CheckReport:
    return CheckReport(name, False, tuple(witness), detail, data=data)


def combine(name: str, parts: Sequence[CheckReport], ok_detail: str = "", data=None) -> CheckReport:
    """Fold leg reports into one; the first failing leg supplies witness and detail."""
    parts = tuple(parts)
    for p in parts:
        if not p.passed:
            return CheckReport(name, False, p.witness, f"{p.check_name}: {p.detail}", parts, data)
    return CheckReport(name, True, None, ok_detail or "all legs passed", parts, data)


def first_violation(ok: np.ndarray) -> Optional[tuple[int, ...]]:
    """Index of the first False entry of ``ok`` in row-major order."""
    bad = np.flatnonzero(~np.asarray(ok, dtype=bool))
    if bad.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(bad[0], ok.shape))


def first_violation_chunked(evaluate, n_outer: int) -> Optional[tuple[int, ...]]:
    """Scan ``evaluate(i)`` for i in range(n_outer) and return the first failure.

    ``evaluate(i)`` returns a boolean array for the slice with leading index i;
    chunking keeps quartic scans within memory.
    """
    for i in range(n_outer):
        hit = first_violation(evaluate(i))
        if hit is not None:
            return (i, *hit)
    return None
