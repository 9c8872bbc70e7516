"""Machine-readable run reports.

A report body is a pure function of the run configuration: no timestamps,
no host data, and no worker count, so replays with different ``--threads``
produce byte-identical output.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from typing import Iterable, Sequence

import mpmath

from . import __version__
from .numerics.ball import Ball

__all__ = ["config_hash", "build_report", "dumps", "csv_text", "ball_json", "VERDICT_EXIT"]

VERDICT_EXIT = {"no-certified-violation": 0, "certified-violation": 1, "undecided": 2}


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def ball_json(b: Ball, digits: int) -> dict:
    return {"center": mpmath.nstr(b.mid, digits), "radius": mpmath.nstr(b.rad, 6)}


def build_report(command: str, config: dict, subject, results, verdict: str) -> dict:
    return {
        "command": command,
        "config": config,
        "config_hash": config_hash({"command": command, **config}),
        "version": __version__,
        "subject": subject,
        "results": results,
        "verdict": verdict,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
