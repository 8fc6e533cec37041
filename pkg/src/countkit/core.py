"""Reference semantics for CNF formulas under the counting tracks.

A formula lives over the declared variable universe 1..num_vars.  Variables
that never occur in a clause still belong to the universe, so every count is
taken over all 2^num_vars total assignments.  Clauses are literal sets;
duplicate literals collapse and tautological clauses are legal (they are
satisfied by every assignment).

Assignments map variables to 0 or 1.  Reducing a formula under a partial
assignment removes every clause containing a satisfied literal and strips
falsified literals from the rest; an empty clause surviving the reduction
marks the formula unsatisfiable under that assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Clause = frozenset

_ONE = Fraction(1)


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "clauses", tuple(frozenset(cl) for cl in self.clauses)
        )
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for cl in self.clauses:
            for lit in cl:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(
                        "literal %r outside declared range 1..%d"
                        % (lit, self.num_vars)
                    )

    @classmethod
    def from_clauses(cls, num_vars, clauses: Iterable[Iterable[int]]) -> "Formula":
        return cls(num_vars, tuple(frozenset(cl) for cl in clauses))

    @classmethod
    def from_document(cls, document) -> "Formula":
        """Build from any parsed instance document (cnf, wcnf, or pcnf)."""
        return cls.from_clauses(document.num_vars, document.clauses)

    def variables(self) -> frozenset:
        """Variables that occur in at least one clause."""
        occ = set()
        for cl in self.clauses:
            for lit in cl:
                occ.add(abs(lit))
        return frozenset(occ)

    def free_variables(self) -> frozenset:
        """Declared variables that occur in no clause."""
        return frozenset(range(1, self.num_vars + 1)) - self.variables()


class WeightFunction:
    """Total map from signed literals to rational weights in [0, 1].

    Literals without an explicit entry weigh 1, matching the file format
    where undeclared literals default to weight one.
    """

    def __init__(self, weights: Mapping[int, object] | None = None):
        table = {}
        for lit, value in (weights or {}).items():
            if not isinstance(lit, int) or lit == 0:
                raise ValueError("weight key %r is not a signed literal" % (lit,))
            w = Fraction(value)
            if not 0 <= w <= 1:
                raise ValueError("weight %s for literal %d outside [0, 1]" % (w, lit))
            if w != _ONE:
                # an explicit weight of 1 is the default; keep the table canonical
                table[lit] = w
        self._table = table

    @classmethod
    def identity(cls) -> "WeightFunction":
        return cls()

    @classmethod
    def from_document(cls, document) -> "WeightFunction":
        return cls(document.weights)

    def __call__(self, literal: int) -> Fraction:
        return self._table.get(literal, _ONE)

    def pair_sum(self, var: int) -> Fraction:
        """w(v) + w(-v), the total weight of an unconstrained variable."""
        return self(var) + self(-var)

    def items(self):
        return self._table.items()

    def __eq__(self, other):
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return self._table == other._table

    def __repr__(self):
        return "WeightFunction(%r)" % (self._table,)


def _norm_assignment(assignment: Mapping[int, int]) -> dict:
    out = {}
    for var, value in assignment.items():
        if not isinstance(var, int) or var <= 0:
            raise ValueError("assignment key %r is not a variable" % (var,))
        if value not in (0, 1, True, False):
            raise ValueError("assignment value %r is not 0/1" % (value,))
        out[var] = 1 if value else 0
    return out


def reduce(formula: Formula, assignment: Mapping[int, int]) -> Formula:
    """Formula under a partial assignment.

    Clauses containing a satisfied literal vanish; falsified literals are
    removed from the remaining clauses.  An empty clause in the result means
    the assignment falsifies the formula.  num_vars is unchanged.
    """
    tau = _norm_assignment(assignment)
    new_clauses = []
    for cl in formula.clauses:
        satisfied = False
        kept = []
        for lit in cl:
            value = tau.get(abs(lit))
            if value is None:
                kept.append(lit)
            elif (lit > 0) == bool(value):
                satisfied = True
                break
        if not satisfied:
            new_clauses.append(frozenset(kept))
    return Formula(formula.num_vars, tuple(new_clauses))


def satisfies(formula: Formula, assignment: Mapping[int, int]) -> bool:
    """True iff the total assignment is a model of the formula."""
    tau = _norm_assignment(assignment)
    for v in range(1, formula.num_vars + 1):
        if v not in tau:
            raise ValueError("assignment is not total: variable %d unset" % v)
    for cl in formula.clauses:
        if not any((lit > 0) == bool(tau[abs(lit)]) for lit in cl):
            return False
    return True


def weight_of_model(
    weights: WeightFunction, num_vars: int, model: Iterable[int]
) -> Fraction:
    """Product of literal weights for a model given as its true-variable set."""
    true_vars = frozenset(model)
    for v in true_vars:
        if not 1 <= v <= num_vars:
            raise ValueError("model variable %d outside 1..%d" % (v, num_vars))
    total = _ONE
    for v in range(1, num_vars + 1):
        total *= weights(v) if v in true_vars else weights(-v)
    return total


def project(model: Iterable[int], projection: Iterable[int]) -> frozenset:
    """Restriction of a model's true-variable set to the projection set."""
    return frozenset(model) & frozenset(projection)
