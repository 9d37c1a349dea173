"""Check records, verification reports, and their JSON/CSV/SVG renderings.

A report is a flat list of named checks, each carrying the ASCII statement
it certifies, a three-way status, and every measured number that went into
the verdict.  Serialization is canonical (sorted keys, fixed float repr) so
identical runs produce identical bytes; only the timestamp varies, and the
comparison helper strips it.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from dataclasses import dataclass, field

SCHEMA = "ultranorm/1"
STATUSES = ("pass", "fail", "inconclusive")


def _jsonsafe(obj):
    """Recursively make a value JSON-serializable with strict float policy."""
    if isinstance(obj, dict):
        return {str(k): _jsonsafe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonsafe(v) for v in obj]
    if isinstance(obj, float):
        if obj != obj:
            return "NaN"
        if obj in (float("inf"), float("-inf")):
            return "Infinity" if obj > 0 else "-Infinity"
        return obj
    if isinstance(obj, complex):
        return {"re": _jsonsafe(obj.real), "im": _jsonsafe(obj.imag)}
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if hasattr(obj, "tolist"):  # numpy scalar or array, either tolists
        return _jsonsafe(obj.tolist())
    return str(obj)


def canonical_json(payload):
    """Deterministic JSON bytes: sorted keys, 2-space indent, ASCII only."""
    return json.dumps(_jsonsafe(payload), sort_keys=True, indent=2,
                      ensure_ascii=True, allow_nan=False).encode()


def config_digest(config):
    return hashlib.sha256(canonical_json(config)).hexdigest()


@dataclass
class CheckRecord:
    """One verified statement with its evidence."""

    name: str
    statement: str
    status: str
    constants: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    notes: str = ""
    table: dict = field(default_factory=dict)   # column name -> list, for CSV

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}")

    def as_dict(self):
        out = {"name": self.name, "statement": self.statement,
               "status": self.status, "constants": self.constants,
               "tolerances": self.tolerances, "grid": self.grid,
               "notes": self.notes}
        if self.table:
            out["table"] = self.table
        return out

    @classmethod
    def from_dict(cls, d):
        return cls(name=d["name"], statement=d["statement"],
                   status=d["status"], constants=d.get("constants", {}),
                   tolerances=d.get("tolerances", {}), grid=d.get("grid", {}),
                   notes=d.get("notes", ""), table=d.get("table", {}))


@dataclass
class VerificationReport:
    """A full run: resolved config, seed, and the ordered check list."""

    config: dict
    checks: list
    seed: int | None = None
    tool_version: str = ""
    generated_at: str = ""

    def __post_init__(self):
        if not self.tool_version:
            from . import __version__
            self.tool_version = __version__
        if not self.generated_at:
            self.generated_at = time.strftime("%Y-%m-%dT%H:%M:%SZ",
                                              time.gmtime())

    @property
    def summary(self):
        counts = {s: 0 for s in STATUSES}
        for c in self.checks:
            counts[c.status] += 1
        if counts["fail"]:
            overall = "fail"
        elif counts["inconclusive"]:
            overall = "inconclusive"
        else:
            overall = "pass"
        counts["total"] = len(self.checks)
        counts["overall"] = overall
        return counts

    @property
    def exit_code(self):
        s = self.summary
        if s["fail"]:
            return 1
        if s["inconclusive"]:
            return 3
        return 0

    def as_dict(self, include_timestamp=True):
        out = {
            "schema": SCHEMA,
            "tool_version": self.tool_version,
            "config": self.config,
            "config_digest": config_digest(self.config),
            "seed": self.seed,
            "checks": [c.as_dict() for c in self.checks],
            "summary": self.summary,
        }
        if include_timestamp:
            out["generated_at"] = self.generated_at
        return out

    def to_json(self):
        return canonical_json(self.as_dict()) + b"\n"

    def canonical_bytes(self):
        """Serialization with the timestamp stripped, for byte comparison."""
        return canonical_json(self.as_dict(include_timestamp=False)) + b"\n"

    @classmethod
    def from_json(cls, data):
        d = json.loads(data)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        rep = cls(config=d["config"],
                  checks=[CheckRecord.from_dict(c) for c in d["checks"]],
                  seed=d.get("seed"), tool_version=d.get("tool_version", ""),
                  generated_at=d.get("generated_at", "epoch"))
        return rep


# -- renderings -------------------------------------------------------------


def summary_csv(report):
    """One row per check: name, status, key constants flattened."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "status", "statement", "constants", "tolerances",
                "notes"])
    for c in report.checks:
        consts = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(c.constants.items()))
        tols = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(c.tolerances.items()))
        w.writerow([c.name, c.status, c.statement, consts, tols, c.notes])
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def table_csv(record):
    """The per-check numeric table (e.g. (t, M(t)) columns), if any."""
    if not record.table:
        return ""
    cols = list(record.table)
    rows = zip(*[record.table[c] for c in cols])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_report(report, outdir, fmt="json", plot=False):
    """Emit report.json / report.csv (+ per-check tables) and optional SVGs.

    Returns the list of written paths.
    """
    import os

    os.makedirs(outdir, exist_ok=True)
    written = []
    if fmt == "json":
        path = os.path.join(outdir, "report.json")
        with open(path, "wb") as fh:
            fh.write(report.to_json())
        written.append(path)
    elif fmt == "csv":
        path = os.path.join(outdir, "report.csv")
        with open(path, "w") as fh:
            fh.write(summary_csv(report))
        written.append(path)
        for c in report.checks:
            if c.table:
                path = os.path.join(outdir, f"{_slug(c.name)}.csv")
                with open(path, "w") as fh:
                    fh.write(table_csv(c))
                written.append(path)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if plot:
        written.extend(render_plots(report, outdir))
    return written


def _slug(name):
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in name)


def render_plots(report, outdir):
    """Line SVGs for every check that carries a 2-column numeric table."""
    import os

    import matplotlib
    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "ultranorm"
    import matplotlib.pyplot as plt

    written = []
    for c in report.checks:
        cols = [k for k, v in c.table.items()
                if v and isinstance(v[0], (int, float))]
        if len(cols) < 2:
            continue
        x = c.table[cols[0]]
        fig, ax = plt.subplots(figsize=(6, 4))
        for ycol in cols[1:]:
            ax.plot(x, c.table[ycol], label=ycol)
        ax.set_xlabel(cols[0])
        ax.legend(loc="best", fontsize=8)
        ax.set_title(c.name, fontsize=9)
        path = os.path.join(outdir, f"{_slug(c.name)}.svg")
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(path)
    return written
