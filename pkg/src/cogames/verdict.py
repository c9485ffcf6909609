"""Check outcomes with machine-checkable evidence.

Every decision procedure in this package returns a :class:`Verdict` rather
than a bare boolean, so a caller (or the CLI report) can inspect *why*
something holds or fails.  Certificates are plain JSON-able structures:
paths and cycles for the walk-based predicates, relation sets for the
coinductive ones, deviation descriptions for the equilibrium checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate check plus its evidence.

    ``certificate`` carries the supporting structure for either outcome:
    a witness path/cycle when the check fails, a closed relation or
    per-item table when it holds.  ``note`` is a short human-readable
    reason string.
    """

    holds: bool
    certificate: Any = None
    note: str = ""

    @property
    def outcome(self) -> str:
        return "holds" if self.holds else "fails"

    def to_json(self) -> dict[str, Any]:
        return {"outcome": self.outcome, "certificate": self.certificate, "note": self.note}
