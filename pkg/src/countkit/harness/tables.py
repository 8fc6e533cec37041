"""Leaderboard and runtime-distribution tables.

The leaderboard follows the standings layout: position, solver, number of
instances solved within 10 percent (#), within 1 percent (#1), exactly
(#0), number of runs that reported an answer (n), timeouts, average runtime
in seconds over answered runs, and total runtime in hours.  CSV output
rounds the average to whole seconds and the total to tenths of an hour;
JSON keeps raw values.

The CDF table lists, per solver, the k-th smallest runtime among its
answered runs, one row per k, which plots directly as a
solved-instances-over-time curve.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .runner import STATUS_SOLVED
from .scoring import Leaderboard

LEADERBOARD_COLUMNS = (
    "POS",
    "solver",
    "#",
    "#1",
    "#0",
    "n",
    "TLE",
    "t_avg[s]",
    "t_sum[h]",
)


def leaderboard_csv(board: Leaderboard) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(LEADERBOARD_COLUMNS)
    for e in board.entries:
        writer.writerow(
            [
                e.position,
                e.solver,
                e.solved,
                e.within_1pct,
                e.exact,
                e.reported,
                e.tle,
                round(e.t_avg_seconds),
                "%.1f" % e.t_sum_hours,
            ]
        )
    return buf.getvalue()


def leaderboard_json(board: Leaderboard) -> str:
    rows = [
        {
            "position": e.position,
            "solver": e.solver,
            "solved": e.solved,
            "within_1pct": e.within_1pct,
            "exact": e.exact,
            "reported": e.reported,
            "tle": e.tle,
            "t_avg_seconds": e.t_avg_seconds,
            "t_sum_hours": e.t_sum_hours,
        }
        for e in board.entries
    ]
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def cdf_rows(runs):
    """(solver, k, runtime) triples: k-th fastest answered run per solver."""
    per = {}
    for run in runs:
        if run.status == STATUS_SOLVED:
            per.setdefault(run.solver, []).append(run.wall_time)
    rows = []
    for solver in sorted(per):
        for k, wall in enumerate(sorted(per[solver]), start=1):
            rows.append((solver, k, wall))
    return rows


def cdf_csv(runs) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("solver", "k", "runtime[s]"))
    for solver, k, wall in cdf_rows(runs):
        writer.writerow((solver, k, "%.3f" % wall))
    return buf.getvalue()


def write_tables(out_dir, board: Leaderboard, runs=None) -> dict:
    """Write leaderboard.csv, leaderboard.json and (with runs) cdf.csv.

    Returns the mapping of table name to written path.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    csv_path = out / "leaderboard.csv"
    csv_path.write_text(leaderboard_csv(board))
    paths["leaderboard.csv"] = csv_path
    json_path = out / "leaderboard.json"
    json_path.write_text(leaderboard_json(board))
    paths["leaderboard.json"] = json_path
    if runs is not None:
        cdf_path = out / "cdf.csv"
        cdf_path.write_text(cdf_csv(runs))
        paths["cdf.csv"] = cdf_path
    return paths
