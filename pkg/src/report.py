"""CSV output and aligned summary tables for experiment runs."""

import csv
from collections import defaultdict

from .results import KEY_FIELDS
from .solve import CSV_FIELDS, OPTIMAL

RUN_FIELDS = KEY_FIELDS + CSV_FIELDS + ["error"]
CELL_FIELDS = ["n", "f", "c", "mode", "preset"]

# Averaged columns: (summary name, run field, scale)
AVERAGED = [
    ("init_gap", "init_gap", 1.0),
    ("gap_imp", "gap_imp", 1.0),
    ("cuts", "cuts_added", 1.0),
    ("nodes", "nodes_explored", 1.0),
    ("time", "wall_time", 1.0),
    ("end_gap", "end_gap", 100.0),
]

_INT_FIELDS = {"n", "f", "c", "seed", "cuts_added", "root_rounds", "nodes_explored"}
_FLOAT_FIELDS = {"z_init", "z_root", "z_ub", "z_lb", "init_gap", "root_gap", "gap_imp", "end_gap",
                 "root_time", "wall_time"}


def write_csv(runs, path):
    """Write one row per run; an empty run list still gets the header."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=RUN_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for run in runs:
            writer.writerow({name: ("" if run.get(name) is None else run.get(name)) for name in RUN_FIELDS})


def read_csv(path):
    """Read runs written by write_csv, restoring numbers and None."""
    runs = []
    with open(path, "r", newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            run = {}
            for name, raw in row.items():
                if raw == "" or raw is None:
                    run[name] = None
                elif name in _INT_FIELDS:
                    run[name] = int(float(raw))
                elif name in _FLOAT_FIELDS:
                    run[name] = float(raw)
                else:
                    run[name] = raw
            runs.append(run)
    return runs


def _mean(values):
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else None


def summarize(runs):
    """
    Per-cell averages, sorted by cell.

    A cell is (n, f, c, mode, preset). Averages skip missing values; a run
    counts as unsolved when it failed or stopped before proving optimality.
    The end gap is reported in percent.
    """
    cells = defaultdict(list)
    for run in runs:
        cells[tuple(run[name] for name in CELL_FIELDS)].append(run)

    summary = []
    for key in sorted(cells, key=lambda k: tuple(str(v) if isinstance(v, str) else v for v in k)):
        group = cells[key]
        row = dict(zip(CELL_FIELDS, key))
        row["runs"] = len(group)
        ok = [r for r in group if not r.get("error")]
        for name, source, scale in AVERAGED:
            mean = _mean(r.get(source) for r in ok)
            row[name] = None if mean is None else mean * scale
        row["unsolved"] = sum(1 for r in group if r.get("error") or r.get("status") != OPTIMAL)
        summary.append(row)
    return summary


def _fmt(name, value):
    if value is None:
        return "-"
    if name == "time":
        return f"{value:.1f}"
    if isinstance(value, float):
        return str(int(round(value)))
    return str(value)


def format_table(summary):
    """Aligned plain-text table of summarize() rows (numbers rounded to integers, time to 0.1 s)."""
    columns = CELL_FIELDS + ["runs"] + [name for name, _, _ in AVERAGED] + ["unsolved"]
    cells = [[_fmt(col, row.get(col)) for col in columns] for row in summary]
    widths = [max([len(col)] + [len(r[i]) for r in cells]) for i, col in enumerate(columns)]
    lines = ["  ".join(col.rjust(w) for col, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    return "\n".join(lines)
