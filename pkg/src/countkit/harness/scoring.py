"""Accuracy scoring, unknown-reference resolution, and solver ranking.

A solver answer is judged against the precomputed reference count c_pre by
interval membership: it scores within 10 percent iff

    c_pre - c_pre/10 <= c_solver <= c_pre + c_pre/10

and within 1 percent with c_pre/100 in place of c_pre/10.  Both bounds are
inclusive and evaluated in exact rational arithmetic.  Exact equality is its
own class, and the tightest class earned is the one recorded.  A reference
of zero degenerates the interval to the single point zero.  Answers outside
the interval are recorded as OUTSIDE, which never disqualifies a solver
from the remaining instances; it only fails to score.

When no reference exists for an instance, records start as UNKNOWN_REF and
may be settled by consensus among the reporting solvers afterwards (see
resolve_unknown_refs).

Ranking orders solvers by the number of within-10-percent instances,
descending.  Solvers with equal counts share a position, and the next
distinct count takes the position its first occupant would have had in a
strict ordering: counts 69, 69, 38 rank 1, 1, 3.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from statistics import median

from ..formats import SolutionLine


class AccuracyClass(enum.Enum):
    EXACT = "EXACT"
    WITHIN_1PCT = "WITHIN_1PCT"
    WITHIN_10PCT = "WITHIN_10PCT"
    OUTSIDE = "OUTSIDE"
    UNKNOWN_REF = "UNKNOWN_REF"

    def __str__(self):
        return self.value

    @property
    def credited(self):
        """True when the record counts toward the solved tally."""
        return self in _CREDITED


_CREDITED = {
    AccuracyClass.EXACT,
    AccuracyClass.WITHIN_1PCT,
    AccuracyClass.WITHIN_10PCT,
}


def score(c_pre, c_solver) -> AccuracyClass:
    """Classify a plain reported value against a reference value.

    A reference of None yields UNKNOWN_REF.  Values may be ints or
    Fractions; the comparison is exact.
    """
    if c_pre is None:
        return AccuracyClass.UNKNOWN_REF
    pre = Fraction(c_pre)
    got = Fraction(c_solver)
    if pre < 0 or got < 0:
        raise ValueError("counts are non-negative")
    if got == pre:
        return AccuracyClass.EXACT
    delta = abs(got - pre)
    if delta * 100 <= pre:
        return AccuracyClass.WITHIN_1PCT
    if delta * 10 <= pre:
        return AccuracyClass.WITHIN_10PCT
    return AccuracyClass.OUTSIDE


_LOG_PRECISION = 50


def _log10(value: Fraction, ctx) -> Decimal:
    return Decimal(value.numerator).log10() - Decimal(value.denominator).log10()


def _score_log10(c_pre, log_value: Fraction) -> AccuracyClass:
    """Classify a base-10 logarithm report against a plain reference.

    The accuracy interval is mapped to log10 bounds and compared at 50
    significant digits; exactness that precise is beyond any solver's
    output resolution.  EXACT is granted only when the reported logarithm
    reconstructs the reference exactly, which requires an integer exponent.
    """
    pre = Fraction(c_pre)
    if pre < 0:
        raise ValueError("counts are non-negative")
    if pre == 0:
        # a finite logarithm means a positive count; zero never matches
        return AccuracyClass.OUTSIDE
    if log_value.denominator == 1:
        exponent = log_value.numerator
        power = (
            Fraction(10) ** exponent if exponent >= 0 else Fraction(1, 10**-exponent)
        )
        if power == pre:
            return AccuracyClass.EXACT
    with localcontext() as ctx:
        ctx.prec = _LOG_PRECISION
        log = Decimal(log_value.numerator) / Decimal(log_value.denominator)
        if _log10(pre * Fraction(99, 100), ctx) <= log <= _log10(
            pre * Fraction(101, 100), ctx
        ):
            return AccuracyClass.WITHIN_1PCT
        if _log10(pre * Fraction(9, 10), ctx) <= log <= _log10(
            pre * Fraction(11, 10), ctx
        ):
            return AccuracyClass.WITHIN_10PCT
    return AccuracyClass.OUTSIDE


def score_solution(c_pre, solution: SolutionLine) -> AccuracyClass:
    """Classify a parsed solution line, handling log10 reports."""
    if solution.is_log10:
        if c_pre is None:
            return AccuracyClass.UNKNOWN_REF
        return _score_log10(c_pre, solution.value)
    return score(c_pre, solution.value)


@dataclass(frozen=True)
class ScoreRecord:
    instance: str
    solver: str
    reference: int | Fraction | None
    reported: int | Fraction
    accuracy: AccuracyClass
    reported_log10: bool = False


def _approx_value(record: ScoreRecord) -> Fraction:
    """Comparable plain value for consensus math.

    Log reports are exponentiated at 50 significant digits; their tiny
    conversion error is far below the 10 percent consensus band.
    """
    if not record.reported_log10:
        return Fraction(record.reported)
    log_value = Fraction(record.reported)
    if log_value.denominator == 1 and log_value.numerator >= 0:
        return Fraction(10) ** log_value.numerator
    with localcontext() as ctx:
        ctx.prec = _LOG_PRECISION
        raw = Decimal(log_value.numerator) / Decimal(log_value.denominator)
        return Fraction(Decimal(10) ** raw)


def resolve_unknown_refs(records, exact_solvers=frozenset()):
    """Settle UNKNOWN_REF records per instance by consensus.

    Per instance with unknown reference:

    * one reporting solver: credited as solved (WITHIN_10PCT);
    * several reporters and at least one solver designated exact: the
      consensus is the exact solvers' value (median if they disagree), and
      each report is credited when it lies within 10 percent of it,
      OUTSIDE otherwise;
    * several reporters, none exact: consensus is the median report; with
      three or more reports, in-band reports are credited and the rest are
      OUTSIDE; with exactly two discordant reports no side is trusted, so
      both stay UNKNOWN_REF and score nothing.

    Credit from consensus is capped at WITHIN_10PCT; without a true
    reference no tighter claim is defensible.  Records whose reference was
    known are passed through untouched.
    """
    exact_solvers = frozenset(exact_solvers)
    by_instance = {}
    order = []
    for rec in records:
        by_instance.setdefault(rec.instance, []).append(rec)
        order.append(rec)

    resolved = {}
    for instance, group in by_instance.items():
        unknown = [r for r in group if r.accuracy is AccuracyClass.UNKNOWN_REF]
        if not unknown:
            continue
        values = {id(r): _approx_value(r) for r in unknown}
        if len(unknown) == 1:
            rec = unknown[0]
            resolved[id(rec)] = replace(rec, accuracy=AccuracyClass.WITHIN_10PCT)
            continue
        anchored = [r for r in unknown if r.solver in exact_solvers]
        if anchored:
            consensus = median(values[id(r)] for r in anchored)
        else:
            consensus = median(values[id(r)] for r in unknown)
        in_band = {
            id(r): score(consensus, values[id(r)]).credited for r in unknown
        }
        if not anchored and len(unknown) == 2 and not all(in_band.values()):
            continue  # two discordant reports, nobody to trust
        for rec in unknown:
            accuracy = (
                AccuracyClass.WITHIN_10PCT
                if in_band[id(rec)]
                else AccuracyClass.OUTSIDE
            )
            resolved[id(rec)] = replace(rec, accuracy=accuracy)

    return [resolved.get(id(rec), rec) for rec in order]


@dataclass(frozen=True)
class LeaderboardEntry:
    position: int
    solver: str
    solved: int
    within_1pct: int
    exact: int
    reported: int
    tle: int
    t_avg_seconds: float
    t_sum_hours: float


@dataclass(frozen=True)
class Leaderboard:
    entries: tuple[LeaderboardEntry, ...]

    def positions(self):
        return tuple(e.position for e in self.entries)


def rank(records, runs=None) -> Leaderboard:
    """Leaderboard from score records, with runtime columns from runs.

    The solved count tallies records within 10 percent of the reference
    (EXACT and WITHIN_1PCT included).  The reported column counts runs that
    produced an answer at all; runtime totals and averages cover exactly
    those runs.  Without run results, every record stands for one answered
    run and runtime columns stay zero.
    """
    from .runner import STATUS_SOLVED, STATUS_TLE  # cycle-free import

    per = {}

    def cell(solver):
        return per.setdefault(
            solver,
            {"solved": 0, "w1": 0, "w0": 0, "reported": 0, "tle": 0, "time": 0.0},
        )

    for rec in records:
        c = cell(rec.solver)
        if rec.accuracy.credited:
            c["solved"] += 1
        if rec.accuracy in (AccuracyClass.EXACT, AccuracyClass.WITHIN_1PCT):
            c["w1"] += 1
        if rec.accuracy is AccuracyClass.EXACT:
            c["w0"] += 1
        if runs is None:
            c["reported"] += 1

    if runs is not None:
        for run in runs:
            c = cell(run.solver)
            if run.status == STATUS_SOLVED:
                c["reported"] += 1
                c["time"] += run.wall_time
            elif run.status == STATUS_TLE:
                c["tle"] += 1

    ordered = sorted(per.items(), key=lambda kv: (-kv[1]["solved"], kv[0]))
    entries = []
    position = 0
    previous_solved = None
    for index, (solver, c) in enumerate(ordered, start=1):
        if c["solved"] != previous_solved:
            position = index
            previous_solved = c["solved"]
        entries.append(
            LeaderboardEntry(
                position=position,
                solver=solver,
                solved=c["solved"],
                within_1pct=c["w1"],
                exact=c["w0"],
                reported=c["reported"],
                tle=c["tle"],
                t_avg_seconds=(c["time"] / c["reported"] if c["reported"] else 0.0),
                t_sum_hours=c["time"] / 3600.0,
            )
        )
    return Leaderboard(entries=tuple(entries))


def score_records_from_runs(runs, references, exact_solvers=frozenset()):
    """Build and resolve score records for every answered run.

    references maps instance id to the precomputed count, or None/missing
    when unknown.  Runs that produced no answer yield no record; they only
    affect runtime and TLE columns at ranking time.
    """
    from .runner import STATUS_SOLVED

    records = []
    for run in runs:
        if run.status != STATUS_SOLVED or run.solution is None:
            continue
        reference = references.get(run.instance)
        records.append(
            ScoreRecord(
                instance=run.instance,
                solver=run.solver,
                reference=reference,
                reported=run.solution.value,
                accuracy=score_solution(reference, run.solution),
                reported_log10=run.solution.is_log10,
            )
        )
    return resolve_unknown_refs(records, exact_solvers)
