"""Run manifests: structured, line-oriented records of pipeline runs.

A manifest is written as JSON lines: one header record, one record per
completed stage (with counts, the expected values they were checked
against, and timings), and one footer record with the final verdict.
Expected values live in a data file shipped with the package; a count
mismatch marks the stage (and the whole run) as discrepant but never
aborts the run, so partial reproductions stay inspectable.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from importlib import resources

MANIFEST_VERSION = 1

_EXPECTED = None


def expected_counts() -> dict:
    """The shipped table of expected per-stage counts."""
    global _EXPECTED
    if _EXPECTED is None:
        with resources.files("sdcodes.data").joinpath("expected_counts.json").open() as fh:
            _EXPECTED = json.load(fh)
    return _EXPECTED


def default_outdir() -> str:
    return os.environ.get("SDCODES_OUTDIR", os.path.join(os.getcwd(), "sdcodes-out"))


class RunManifest:
    """Collects per-stage results of one pipeline run."""

    def __init__(self, pipeline: str, config: dict | None = None):
        self.pipeline = pipeline
        self.config = dict(config or {})
        blob = json.dumps(self.config, sort_keys=True).encode()
        self.config_hash = hashlib.sha256(blob).hexdigest()[:16]
        self.started = time.time()
        self.stages: list[dict] = []
        self.verdict: str | None = None

    def add_stage(self, name: str, counts: dict, expected: dict | None = None,
                  seconds: float | None = None, checkpoint: str | None = None,
                  notes: str | None = None) -> bool:
        """Record a completed stage; returns whether every expected count
        matched.  Expected keys missing from ``counts`` count as mismatches."""
        expected = expected or {}
        mismatches = {k: [counts.get(k), v] for k, v in expected.items()
                      if counts.get(k) != v}
        rec = {
            "record": "stage",
            "stage": name,
            "counts": counts,
            "expected": expected,
            "ok": not mismatches,
            "seconds": None if seconds is None else round(seconds, 2),
        }
        if mismatches:
            rec["mismatches"] = mismatches
        if checkpoint:
            rec["checkpoint"] = checkpoint
        if notes:
            rec["notes"] = notes
        self.stages.append(rec)
        return not mismatches

    @property
    def all_ok(self) -> bool:
        return all(s["ok"] for s in self.stages)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_ok else 2

    def finish(self, verdict: str) -> None:
        self.verdict = verdict

    def records(self) -> list[dict]:
        header = {
            "record": "header",
            "manifest_version": MANIFEST_VERSION,
            "pipeline": self.pipeline,
            "config": self.config,
            "config_hash": self.config_hash,
        }
        footer = {
            "record": "verdict",
            "verdict": self.verdict,
            "all_counts_ok": self.all_ok,
            "seconds_total": round(time.time() - self.started, 2),
        }
        return [header, *self.stages, footer]

    def write(self, path: str) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(path)) or ".", exist_ok=True)
        with open(path, "w") as fh:
            for rec in self.records():
                fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def summary(self) -> str:
        lines = [f"pipeline {self.pipeline} (config {self.config_hash})"]
        for s in self.stages:
            flag = "ok" if s["ok"] else "MISMATCH"
            lines.append(f"  {s['stage']}: {flag} counts={s['counts']}"
                         + (f" expected={s['expected']}" if s["expected"] else ""))
        lines.append(f"  verdict: {self.verdict}")
        return "\n".join(lines)
