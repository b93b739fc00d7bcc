"""Row/manifest containers and the JSON, CSV and text writers.

Output is byte-stable: rows are sorted by their parameter tuple, floats are
written with 17 significant digits in CSV, and everything that varies between
reruns (wall time, creation stamp) lives in a single ``run_info`` block that
is excluded from the content hash.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterable, Optional

from . import __version__
from .numerics import SparsePolynomial, format_rational

FORMATS = ("json", "csv", "text")


@dataclass
class ScanRow:
    params: dict
    values: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    def key(self) -> tuple:
        return tuple(self.params.values())

    def record(self) -> dict:
        out = {}
        out.update(self.params)
        out.update(self.values)
        out.update(self.flags)
        return out


@dataclass
class RunManifest:
    command: str
    params: dict
    seed: Optional[int] = None
    version: str = __version__
    notes: dict = field(default_factory=dict)
    wall_time_s: float = 0.0
    created_utc: str = ""

    def stable(self) -> dict:
        d = {
            "command": self.command,
            "params": _plain(self.params),
            "seed": self.seed,
            "version": self.version,
        }
        if self.notes:
            d["notes"] = _plain(self.notes)
        return d

    def run_info(self, content_hash: str) -> dict:
        return {
            "wall_time_s": round(self.wall_time_s, 6),
            "created_utc": self.created_utc
            or datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
            "content_sha256": content_hash,
        }


def _plain(x):
    """Convert values to JSON-ready primitives; rationals become "num/den"."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(x, complex):
        return {"re": _plain(x.real), "im": _plain(x.imag)}
    if isinstance(x, SparsePolynomial):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if not math.isfinite(x):
            return _plain(x)
        return format(x, ".17g")
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (list, dict, tuple, complex, SparsePolynomial)):
        return json.dumps(_plain(x), separators=(",", ":"))
    return str(x)


def _columns(records: list) -> list:
    cols: list = []
    for r in records:
        for k in r:
            if k not in cols:
                cols.append(k)
    return cols


def _hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def render(rows: Iterable[ScanRow], manifest: RunManifest, fmt: str = "json") -> str:
    rows = sorted(rows, key=ScanRow.key)
    records = [r.record() for r in rows]
    stable = manifest.stable()
    if fmt == "json":
        body = {"manifest": stable, "rows": [_plain(r) for r in records]}
        digest = _hash(json.dumps(body, sort_keys=True))
        body["manifest"] = dict(stable, run_info=manifest.run_info(digest))
        return json.dumps(body, indent=1) + "\n"
    if fmt == "csv":
        cols = _columns(records)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in records:
            w.writerow([_cell(r.get(c)) for c in cols])
        table = buf.getvalue()
        head = "# manifest: " + json.dumps(stable, sort_keys=True) + "\n"
        info = manifest.run_info(_hash(head + table))
        return head + "# run_info: " + json.dumps(info, sort_keys=True) + "\n" + table
    if fmt == "text":
        cols = _columns(records)
        cells = [[_text_cell(r.get(c)) for c in cols] for r in records]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(wd) for c, wd in zip(cols, widths)).rstrip()]
        lines += ["  ".join(v.ljust(wd) for v, wd in zip(row, widths)).rstrip() for row in cells]
        table = "\n".join(lines) + "\n"
        head = "# manifest: " + json.dumps(stable, sort_keys=True) + "\n"
        info = manifest.run_info(_hash(head + table))
        return head + "# run_info: " + json.dumps(info, sort_keys=True) + "\n" + table
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _text_cell(x) -> str:
    if isinstance(x, float) and math.isfinite(x):
        return format(x, ".6g")
    return _cell(x)


def stable_view(text: str, fmt: str) -> str:
    """``text`` with the ``run_info`` block removed, for rerun comparisons."""
    if fmt == "json":
        doc = json.loads(text)
        doc["manifest"].pop("run_info", None)
        return json.dumps(doc, indent=1, sort_keys=True)
    return "".join(l for l in text.splitlines(True) if not l.startswith("# run_info:"))


def write_output(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        import sys

        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
