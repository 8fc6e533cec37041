"""Random instance generators shared by the unit and acceptance tests.

The generators deliberately produce messy inputs: duplicate clauses,
tautological clauses, unused variables, unit clauses.  Counting code must
treat all of those correctly, so the test corpus leans into them.
"""

from __future__ import annotations

import random
from fractions import Fraction

from countkit import Formula, WeightFunction


def random_clause(rng: random.Random, num_vars: int, max_width: int = 4):
    width = rng.randint(1, min(max_width, num_vars))
    vs = rng.sample(range(1, num_vars + 1), width)
    clause = [v if rng.random() < 0.5 else -v for v in vs]
    if rng.random() < 0.08:
        # make it tautological: add the complement of one literal
        clause.append(-clause[0])
    return tuple(clause)


def random_formula(
    rng: random.Random,
    max_vars: int = 20,
    max_clauses: int = 60,
    min_vars: int = 1,
) -> Formula:
    n = rng.randint(min_vars, max_vars)
    m = rng.randint(0, max_clauses)
    clauses = [random_clause(rng, n) for _ in range(m)]
    if clauses and rng.random() < 0.3:
        # duplicate a few clauses verbatim
        for _ in range(rng.randint(1, 3)):
            clauses.append(rng.choice(clauses))
    return Formula.from_clauses(n, clauses)


def random_weights(
    rng: random.Random, num_vars: int, max_weighted: int = 8
) -> WeightFunction:
    """Weights as short decimals, on a bounded set of variables.

    Bounding the weighted set keeps brute-force weighted enumeration
    affordable; unweighted literals default to 1 and cost nothing.
    """
    count = rng.randint(0, min(num_vars, max_weighted))
    weighted = rng.sample(range(1, num_vars + 1), count)
    table = {}
    for v in weighted:
        digits = rng.randint(1, 3)
        scale = 10**digits
        w = Fraction(rng.randint(0, scale), scale)
        table[v] = w
        if rng.random() < 0.7:
            table[-v] = 1 - w if rng.random() < 0.5 else Fraction(
                rng.randint(0, scale), scale
            )
    return WeightFunction(table)


def random_projection(rng: random.Random, num_vars: int) -> frozenset:
    count = rng.randint(0, num_vars)
    return frozenset(rng.sample(range(1, num_vars + 1), count))


def formula_to_cnf_text(formula: Formula) -> str:
    lines = ["p cnf %d %d" % (formula.num_vars, len(formula.clauses))]
    for clause in formula.clauses:
        lits = sorted(clause, key=lambda l: (abs(l), l < 0))
        lines.append(" ".join(str(l) for l in lits) + " 0")
    return "\n".join(lines) + "\n"
