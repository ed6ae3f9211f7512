"""Deterministic experiment reports with JSON and CSV emission.

Numbers are stored as shortest round-trip decimal strings (``repr``), so a
report re-run with identical parameters and seed is byte-identical; runtime
is deliberately excluded from the files (it goes to the progress log) for
the same reason.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

CODE_VERSION = "0.1.0"


def fmt_number(x) -> str:
    """Shortest decimal string that round-trips the value."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, str)):
        return str(x)
    return repr(float(x))


@dataclass
class ExperimentReport:
    """Rows of one experiment plus enough metadata to reproduce them."""

    name: str
    columns: tuple
    rows: list  # list of tuples aligned with columns
    params: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    passed: bool = True

    def formatted_rows(self) -> list:
        return [tuple(fmt_number(v) for v in row) for row in self.rows]

    def to_json(self) -> str:
        obj = {
            "name": self.name,
            "params": {k: fmt_number(v) for k, v in sorted(self.params.items())},
            "columns": list(self.columns),
            "rows": self.formatted_rows(),
            "metadata": {k: fmt_number(v) for k, v in sorted(self.metadata.items())},
            "passed": self.passed,
        }
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.formatted_rows():
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def config_hash(config: dict) -> str:
    """Stable short hash of a configuration mapping."""
    doc = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(doc.encode()).hexdigest()[:16]
