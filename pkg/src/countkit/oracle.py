"""Brute-force reference counters for small instances.

These are the trusted baselines the search engine is checked against, so
they share no code with it.  Enumeration walks the full truth table of the
declared universe in plain binary order: assignment index i sets variable v
to bit (v-1) of i.  The table is evaluated bit-parallel, one giant integer
per formula where bit i tells whether assignment i is a model.  That keeps
pure-Python enumeration affordable up to the default 24-variable limit
while still touching every assignment.

ie_count is an independent second opinion for unweighted counting: by
inclusion-exclusion over clause subsets, the models eliminated by each
clause are counted and subtracted from 2^n.  A clause subset contributes
only if the literals it falsifies force a consistent partial assignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Formula, WeightFunction


@dataclass(frozen=True)
class OracleLimit:
    """Guard rails: enumeration is exponential in variables, inclusion-
    exclusion in clauses."""

    max_vars: int = 24
    max_clauses: int = 20


DEFAULT_LIMIT = OracleLimit()


class TooLarge(ValueError):
    def __init__(self, what, size, limit):
        super().__init__(
            "instance has %d %s, oracle limit is %d" % (size, what, limit)
        )
        self.what = what
        self.size = size
        self.limit = limit


class _TruthTable:
    """Bit-parallel truth table over all assignments of 1..n."""

    def __init__(self, n):
        self.n = n
        self.size = 1 << n
        self.full = (1 << self.size) - 1
        self._columns = {}

    def column(self, var):
        """Mask with bit i set iff assignment i makes var true."""
        col = self._columns.get(var)
        if col is None:
            stride = 1 << (var - 1)
            period = stride << 1
            # one period's block, tiled across the table by doubling
            col = ((1 << stride) - 1) << stride
            span = period
            while span < self.size:
                col |= col << span
                span <<= 1
            self._columns[var] = col
        return col

    def literal_mask(self, lit):
        col = self.column(abs(lit))
        return col if lit > 0 else self.full ^ col

    def satisfying_mask(self, formula):
        mask = self.full
        for cl in formula.clauses:
            cm = 0
            for lit in cl:
                cm |= self.literal_mask(lit)
            mask &= cm
            if not mask:
                break
        return mask


def _check_vars(formula, limit):
    if formula.num_vars > limit.max_vars:
        raise TooLarge("variables", formula.num_vars, limit.max_vars)


def enum_count(formula: Formula, limit: OracleLimit = DEFAULT_LIMIT) -> int:
    """Number of models over the declared universe, by full enumeration."""
    _check_vars(formula, limit)
    table = _TruthTable(formula.num_vars)
    return table.satisfying_mask(formula).bit_count()


def enum_wcount(
    formula: Formula, weights: WeightFunction, limit: OracleLimit = DEFAULT_LIMIT
) -> Fraction:
    """Sum of model weights over the declared universe, exactly.

    Variables weighing 1 on both polarities contribute a plain model count,
    so only the explicitly weighted variables are enumerated: for each of
    their assignments the matching truth-table slice is popcounted and
    scaled by the exact rational weight product.  Cost grows as 2^w in the
    number w of non-trivially weighted variables.
    """
    _check_vars(formula, limit)
    table = _TruthTable(formula.num_vars)
    mask = table.satisfying_mask(formula)
    if not mask:
        return Fraction(0)

    weighted = []
    denominator = 1
    for v in range(1, formula.num_vars + 1):
        pos, neg = weights(v), weights(-v)
        if pos == 1 and neg == 1:
            continue
        d = math.lcm(pos.denominator, neg.denominator)
        weighted.append((table.column(v), int(pos * d), int(neg * d)))
        denominator *= d

    def weighted_sum(m, idx):
        if not m:
            return 0
        if idx == len(weighted):
            return m.bit_count()
        col, a, b = weighted[idx]
        return a * weighted_sum(m & col, idx + 1) + b * weighted_sum(
            m & (table.full ^ col), idx + 1
        )

    return Fraction(weighted_sum(mask, 0), denominator)


def enum_pcount(
    formula: Formula, projection, limit: OracleLimit = DEFAULT_LIMIT
) -> int:
    """Number of distinct projections of models onto the projection set.

    Every variable outside the projection set is folded out of the
    satisfying mask by existential quantification, leaving one bit per
    achievable projection assignment.
    """
    _check_vars(formula, limit)
    proj = frozenset(projection)
    for v in proj:
        if not 1 <= v <= formula.num_vars:
            raise ValueError(
                "projection variable %d outside 1..%d" % (v, formula.num_vars)
            )
    table = _TruthTable(formula.num_vars)
    mask = table.satisfying_mask(formula)
    for v in range(1, formula.num_vars + 1):
        if v in proj or not mask:
            continue
        stride = 1 << (v - 1)
        # fold the v=1 half onto the v=0 half: exists-v
        mask = (mask | (mask >> stride)) & (table.full ^ table.column(v))
    return mask.bit_count()


def ie_count(formula: Formula, limit: OracleLimit = DEFAULT_LIMIT) -> int:
    """Model count by inclusion-exclusion over clause subsets.

    Clause c eliminates the assignments falsifying it: those forcing every
    literal of c to false.  The union of the eliminated sets is expanded by
    inclusion-exclusion; a subset of clauses meets in 2^(n-k) assignments
    when the literals it forces are consistent and touch k variables, and
    in none otherwise.  Duplicate clauses are collapsed first and
    tautological clauses dropped (they eliminate nothing).
    """
    if len(formula.clauses) > limit.max_clauses:
        raise TooLarge("clauses", len(formula.clauses), limit.max_clauses)
    n = formula.num_vars

    seen = set()
    families = []
    for cl in formula.clauses:
        key = frozenset(cl)
        if key in seen:
            continue
        seen.add(key)
        zeros = ones = 0
        for lit in cl:
            bit = 1 << (abs(lit) - 1)
            if lit > 0:
                zeros |= bit  # falsifying the clause sets this var to 0
            else:
                ones |= bit
        if zeros & ones:
            continue  # tautology, never falsified
        families.append((zeros, ones))

    total = 0

    def descend(idx, zeros, ones, sign):
        nonlocal total
        for i in range(idx, len(families)):
            z, o = families[i]
            nz, no = zeros | z, ones | o
            if nz & no:
                continue  # inconsistent, and so is every superset through i
            fixed = (nz | no).bit_count()
            total += -sign * (1 << (n - fixed))
            descend(i + 1, nz, no, -sign)

    descend(0, 0, 0, 1)
    count = (1 << n) + total
    if not 0 <= count <= (1 << n):
        raise AssertionError("inclusion-exclusion out of range: %d" % count)
    return count
