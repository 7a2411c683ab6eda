"""Run reports: deterministic JSON (timings aside) with per-assertion labels."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import metadata

SCHEMA_VERSION = 1


def artifact_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


@dataclass
class RunReport:
    command: str
    parameters: dict
    seed: int | None = None
    results: list[dict] = field(default_factory=list)
    assertions: dict[str, bool] = field(default_factory=dict)
    indeterminate: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def record(self, label: str, ok: bool) -> None:
        """AND ``ok`` into the assertion under ``label``."""
        self.assertions[label] = self.assertions.get(label, True) and bool(ok)

    @property
    def status(self) -> str:
        if not all(self.assertions.values()):
            return "fail"
        if self.indeterminate:
            return "indeterminate"
        return "pass"

    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "indeterminate": 3}[self.status]

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "artifact_version": artifact_version(),
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "status": self.status,
            "assertions": self.assertions,
            "indeterminate": self.indeterminate,
            "results": self.results,
        }
        if timings:
            out["timings"] = self.timings
        return out

    def dumps(self, fmt: str = "json", timings: bool = True) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(timings), indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            return rows_to_csv(self.results)
        raise ValueError(f"unknown format {fmt!r}")


def rows_to_csv(rows: list[dict]) -> str:
    """Flat CSV of result rows; nested values are JSON-encoded."""
    names: list[str] = []
    for row in rows:
        for key in row:
            if key not in names:
                names.append(key)
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=names, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in row.items()})
    return out.getvalue()
