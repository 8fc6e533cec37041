"""Exact counting engine for the mc, wmc, and pmc tracks.

The engine runs an exhaustive DPLL search with three standard refinements:

* unit propagation to fixpoint before every branching step,
* decomposition of the residual formula into variable-disjoint connected
  components whose counts multiply,
* a capacity-bounded component cache keyed on a canonical renaming, so a
  component met twice under different variable names is solved once.

No pure-literal elimination: removing pure literals preserves
satisfiability but not model counts, so it has no place here.  Branches are
explored value 1 before value 0.

Variables that vanish from the residual without being assigned (their
clauses were all satisfied) are unconstrained and contribute a factor of 2
to a plain count, w(v) + w(-v) to a weighted count, and 2 to a projected
count exactly when they belong to the projection set.

Projected counting branches only on projection variables.  Once a component
contains none, all its models share one projection and the component
contributes 1 if it is satisfiable, 0 otherwise (an embedded SAT check).

All arithmetic is exact: arbitrary-precision integers and Fractions.
"""

from __future__ import annotations

import random
import sys
import time
from collections import OrderedDict
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

from .core import Formula, WeightFunction


class _ConflictType:
    """Singleton marker for a falsified residual."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CONFLICT"


CONFLICT = _ConflictType()

HEURISTICS = ("occurrence", "min-index", "random")

DEFAULT_CACHE_BYTES = 6 * 1024**3


class ResourceExhausted(RuntimeError):
    """The engine ran out of memory before finishing; no answer exists."""


@dataclass
class SolverConfig:
    heuristic: str = "occurrence"
    cache_enabled: bool = True
    cache_bytes: int = DEFAULT_CACHE_BYTES
    seed: int = 0
    projected: bool = False
    precision: int = 20
    log10: bool = False
    verify_cache_hits: bool = False

    def __post_init__(self):
        if self.heuristic not in HEURISTICS:
            raise ValueError(
                "unknown heuristic %r, expected one of %s"
                % (self.heuristic, ", ".join(HEURISTICS))
            )
        if self.cache_bytes < 0:
            raise ValueError("cache_bytes must be non-negative")
        if self.precision < 1:
            raise ValueError("precision must be positive")


@dataclass
class SolverStats:
    decisions: int = 0
    propagations: int = 0
    cache_hits: int = 0
    cache_misses: int = 0
    cache_evictions: int = 0
    peak_components: int = 0
    sat_checks: int = 0
    wall_time: float = 0.0

    def comment_lines(self):
        return [
            "c decisions %d" % self.decisions,
            "c propagations %d" % self.propagations,
            "c cache_hits %d" % self.cache_hits,
            "c cache_misses %d" % self.cache_misses,
            "c cache_evictions %d" % self.cache_evictions,
            "c peak_components %d" % self.peak_components,
            "c sat_checks %d" % self.sat_checks,
            "c wall_time %.3f" % self.wall_time,
        ]


@dataclass(frozen=True)
class Component:
    """A connected sub-formula: its variables and the clauses touching them.

    variables is sorted; each clause is a duplicate-free tuple sorted by
    variable then polarity, and the clause tuple itself is sorted.  Two
    components with the same shape under the dense renaming
    variables -> 1..k share a canonical key.  Renaming preserves plain model
    counts, so for unweighted counting the key alone identifies the count;
    weighted and projected counting additionally key on the weight vector or
    projection mask (see _Engine._cache_key).
    """

    variables: tuple[int, ...]
    clauses: tuple[tuple[int, ...], ...]

    def canonical_key(self):
        rename = {v: i for i, v in enumerate(self.variables, start=1)}
        renamed = tuple(
            sorted(
                tuple((1 if lit > 0 else -1) * rename[abs(lit)] for lit in cl)
                for cl in self.clauses
            )
        )
        return (len(self.variables), renamed)


def _normalize_clause(literals):
    return tuple(sorted(set(literals), key=lambda l: (abs(l), l < 0)))


def _reduce_clauses(clauses, assignment):
    """Reduce raw clause tuples under {var: bool}; CONFLICT on empty clause."""
    out = []
    for cl in clauses:
        satisfied = False
        dropped = False
        kept = []
        for lit in cl:
            value = assignment.get(abs(lit))
            if value is None:
                kept.append(lit)
            elif (lit > 0) == value:
                satisfied = True
                break
            else:
                dropped = True
        if satisfied:
            continue
        if not dropped:
            out.append(cl)
        elif kept:
            out.append(tuple(kept))
        else:
            return CONFLICT
    return out


def _unit_propagate(clauses):
    """Propagate unit clauses to fixpoint.

    Returns (forced, residual) where forced maps variables to bool; residual
    is CONFLICT when an empty clause arises or opposing units meet.
    """
    forced = {}
    current = list(clauses)
    for cl in current:
        if not cl:
            return forced, CONFLICT
    while True:
        units = {}
        for cl in current:
            if len(cl) == 1:
                lit = cl[0]
                var, value = abs(lit), lit > 0
                if units.setdefault(var, value) != value:
                    return forced, CONFLICT
        if not units:
            return forced, current
        forced.update(units)
        current = _reduce_clauses(current, units)
        if current is CONFLICT:
            return forced, CONFLICT


def _split_components(clauses):
    """Group clauses into variable-connected components, smallest var first."""
    if not clauses:
        return []
    parent = {}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    for cl in clauses:
        first = None
        for lit in cl:
            v = abs(lit)
            if v not in parent:
                parent[v] = v
            if first is None:
                first = v
            else:
                ra, rb = find(first), find(v)
                if ra != rb:
                    parent[rb] = ra
    groups = {}
    for cl in clauses:
        if not cl:
            raise ValueError("empty clause has no component")
        root = find(abs(cl[0]))
        groups.setdefault(root, []).append(cl)
    components = []
    for group in groups.values():
        vars_ = sorted({abs(lit) for cl in group for lit in cl})
        comp_clauses = tuple(sorted(_normalize_clause(cl) for cl in group))
        components.append(Component(tuple(vars_), comp_clauses))
    components.sort(key=lambda c: c.variables[0])
    return components


def _sat(clauses):
    """Plain DPLL satisfiability with unit propagation."""
    _, residual = _unit_propagate(clauses)
    if residual is CONFLICT:
        return False
    if not residual:
        return True
    var = min(abs(lit) for cl in residual for lit in cl)
    for value in (True, False):
        reduced = _reduce_clauses(residual, {var: value})
        if reduced is not CONFLICT and _sat(reduced):
            return True
    return False


class ComponentCache:
    """LRU map from canonical component keys to counts, capped in bytes.

    Sizes are estimates (keys and values are nested ints and Fractions);
    eviction only ever costs recomputation, never correctness.  Lookups
    compare full keys, so hash collisions cannot smuggle in wrong counts.
    """

    def __init__(self, capacity_bytes, stats=None):
        self.capacity_bytes = capacity_bytes
        self.stats = stats or SolverStats()
        self._entries = OrderedDict()
        self._sizes = {}
        self.total_bytes = 0

    def __len__(self):
        return len(self._entries)

    @staticmethod
    def _estimate(obj):
        if isinstance(obj, tuple):
            return 56 + 8 * len(obj) + sum(ComponentCache._estimate(x) for x in obj)
        if isinstance(obj, Fraction):
            return 90 + obj.numerator.bit_length() // 8 + obj.denominator.bit_length() // 8
        if isinstance(obj, int):
            return 28 + obj.bit_length() // 8
        if isinstance(obj, bool):
            return 28
        return 48

    def get(self, key):
        entry = self._entries.get(key)
        if entry is None:
            self.stats.cache_misses += 1
            return None
        self._entries.move_to_end(key)
        self.stats.cache_hits += 1
        return entry

    def put(self, key, value):
        if key in self._entries:
            self._entries.move_to_end(key)
            return
        size = self._estimate(key) + self._estimate(value) + 120
        self._entries[key] = value
        self._sizes[key] = size
        self.total_bytes += size
        while self.total_bytes > self.capacity_bytes and self._entries:
            old_key, _ = self._entries.popitem(last=False)
            self.total_bytes -= self._sizes.pop(old_key)
            self.stats.cache_evictions += 1


class _Engine:
    """One counting run over one formula."""

    def __init__(self, formula, mode, weights=None, projection=None, config=None,
                 stats=None):
        self.mode = mode
        self.n = formula.num_vars
        self.config = config or SolverConfig()
        self.stats = stats if stats is not None else SolverStats()
        self.rng = random.Random(self.config.seed)
        self.weights = weights
        self.projection = frozenset(projection) if projection is not None else None
        self.cache = (
            ComponentCache(self.config.cache_bytes, self.stats)
            if self.config.cache_enabled
            else None
        )
        self._hit_probe = 0
        if mode == "wmc":
            self._zero, self._one = Fraction(0), Fraction(1)
        else:
            self._zero, self._one = 0, 1
        self.clauses = [_normalize_clause(cl) for cl in formula.clauses]

    def run(self):
        start = time.perf_counter()
        # recursion depth tracks decision depth; a few frames per level
        need = 8 * self.n + 1000
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)
        try:
            value = self._count_over(
                self.clauses, frozenset(range(1, self.n + 1))
            )
        except MemoryError:
            raise ResourceExhausted("out of memory while counting") from None
        finally:
            self.stats.wall_time = time.perf_counter() - start
        return value

    # mode-specific factors

    def _assigned_factor(self, forced):
        if self.mode != "wmc":
            return self._one
        value = self._one
        for var, val in forced.items():
            value *= self.weights(var if val else -var)
        return value

    def _free_factor(self, untouched):
        if self.mode == "mc":
            return 1 << len(untouched)
        if self.mode == "pmc":
            return 1 << len(untouched & self.projection)
        value = self._one
        for v in untouched:
            value *= self.weights.pair_sum(v)
        return value

    def _literal_factor(self, var, positive):
        if self.mode != "wmc":
            return self._one
        return self.weights(var if positive else -var)

    # search

    def _count_over(self, clauses, variables):
        """Count over the given universe; vars(clauses) is a subset of it."""
        forced, residual = _unit_propagate(clauses)
        if residual is CONFLICT:
            return self._zero
        self.stats.propagations += len(forced)
        value = self._one
        if forced:
            value = self._assigned_factor(forced)
            variables = variables.difference(forced)
            if not value:
                return self._zero
        components = _split_components(residual)
        if len(components) > self.stats.peak_components:
            self.stats.peak_components = len(components)
        covered = set()
        for comp in components:
            covered.update(comp.variables)
        value *= self._free_factor(variables - covered)
        if not value:
            return self._zero
        for comp in components:
            value *= self._component_value(comp)
            if not value:
                return self._zero
        return value

    def _cache_key(self, comp):
        key = comp.canonical_key()
        if self.mode == "wmc":
            extra = tuple(
                (self.weights(v), self.weights(-v)) for v in comp.variables
            )
            return key + (extra,)
        if self.mode == "pmc":
            extra = tuple(v in self.projection for v in comp.variables)
            return key + (extra,)
        return key

    def _component_value(self, comp):
        if self.cache is None:
            return self._solve_component(comp)
        key = self._cache_key(comp)
        hit = self.cache.get(key)
        if hit is not None:
            if self.config.verify_cache_hits:
                self._hit_probe += 1
                if self._hit_probe % 7 == 0:
                    recomputed = self._solve_component(comp)
                    if recomputed != hit:
                        raise AssertionError(
                            "cache hit %r disagrees with recomputation %r"
                            % (hit, recomputed)
                        )
            return hit
        value = self._solve_component(comp)
        self.cache.put(key, value)
        return value

    def _solve_component(self, comp):
        if self.mode == "pmc":
            candidates = [v for v in comp.variables if v in self.projection]
            if not candidates:
                self.stats.sat_checks += 1
                return self._one if _sat(list(comp.clauses)) else self._zero
        else:
            candidates = comp.variables
        var = self._pick(candidates, comp)
        self.stats.decisions += 1
        rest = frozenset(comp.variables) - {var}
        total = self._zero
        for positive in (True, False):
            reduced = _reduce_clauses(comp.clauses, {var: positive})
            if reduced is CONFLICT:
                continue
            factor = self._literal_factor(var, positive)
            if not factor:
                continue
            total += factor * self._count_over(reduced, rest)
        return total

    def _pick(self, candidates, comp):
        heuristic = self.config.heuristic
        if heuristic == "min-index":
            return min(candidates)
        if heuristic == "random":
            return self.rng.choice(sorted(candidates))
        counts = dict.fromkeys(candidates, 0)
        for cl in comp.clauses:
            for lit in cl:
                v = abs(lit)
                if v in counts:
                    counts[v] += 1
        # most occurrences, smallest index on ties
        return max(sorted(counts), key=lambda v: counts[v])


def _require_formula(formula):
    if not isinstance(formula, Formula):
        raise TypeError("expected a Formula, got %r" % type(formula).__name__)


def count(formula: Formula, config: SolverConfig | None = None,
          stats: SolverStats | None = None) -> int:
    """Number of models of the formula over its declared universe."""
    _require_formula(formula)
    return _Engine(formula, "mc", config=config, stats=stats).run()


def wcount(formula: Formula, weights: WeightFunction,
           config: SolverConfig | None = None,
           stats: SolverStats | None = None) -> Fraction:
    """Sum of model weights, as an exact rational."""
    _require_formula(formula)
    if not isinstance(weights, WeightFunction):
        weights = WeightFunction(weights)
    return _Engine(formula, "wmc", weights=weights, config=config, stats=stats).run()


def pcount(formula: Formula, projection,
           config: SolverConfig | None = None,
           stats: SolverStats | None = None) -> int:
    """Number of distinct model projections onto the projection set."""
    _require_formula(formula)
    proj = frozenset(projection)
    for v in proj:
        if not 1 <= v <= formula.num_vars:
            raise ValueError(
                "projection variable %d outside 1..%d" % (v, formula.num_vars)
            )
    return _Engine(formula, "pmc", projection=proj, config=config, stats=stats).run()


def propagate(formula: Formula, assignment=None):
    """Apply an assignment and run unit propagation to fixpoint.

    Returns (extended_assignment, residual) where the extension includes the
    input assignment plus every unit-forced variable, with values as 0/1
    ints.  residual is CONFLICT when an empty clause arises.
    """
    _require_formula(formula)
    tau = {}
    for var, value in (assignment or {}).items():
        if not isinstance(var, int) or var <= 0:
            raise ValueError("assignment key %r is not a variable" % (var,))
        tau[var] = bool(value)
    clauses = [_normalize_clause(cl) for cl in formula.clauses]
    reduced = _reduce_clauses(clauses, tau) if tau else clauses
    if reduced is CONFLICT:
        return {v: int(b) for v, b in tau.items()}, CONFLICT
    forced, residual = _unit_propagate(reduced)
    extended = dict(tau)
    extended.update(forced)
    out = {v: int(b) for v, b in extended.items()}
    if residual is CONFLICT:
        return out, CONFLICT
    return out, Formula(formula.num_vars, tuple(frozenset(cl) for cl in residual))


def decompose(formula: Formula):
    """Connected components of a formula's clauses, ordered by smallest var.

    Every clause lands in exactly one component and components share no
    variables.  Unit clauses are legal input here; counting callers
    propagate them away first.
    """
    _require_formula(formula)
    return _split_components([_normalize_clause(cl) for cl in formula.clauses])


def embedded_sat(formula: Formula) -> bool:
    """Satisfiability of the formula by DPLL with unit propagation."""
    _require_formula(formula)
    need = 8 * formula.num_vars + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)
    return _sat([_normalize_clause(cl) for cl in formula.clauses])


def _decimal_digits(value: Fraction, digits: int) -> str:
    """Non-negative rational as decimal text with round-half-even.

    Rounds to `digits` fractional places, then trims trailing zeros while
    keeping at least one fractional digit, so whole numbers read like 6.0.
    """
    scaled = value * 10**digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    double = 2 * r
    if double > scaled.denominator or (double == scaled.denominator and q % 2):
        q += 1
    text = str(q).rjust(digits + 1, "0")
    whole, frac = text[:-digits], text[-digits:]
    frac = frac.rstrip("0") or "0"
    return "%s.%s" % (whole, frac)


def render_count(value, track, config: SolverConfig | None = None) -> str:
    """Solution line for a computed count: ``s <tag> <value>``.

    Integer tracks print exact full-precision integers.  The wmc track
    prints a decimal rounded half-even at the configured precision; in
    log10 mode it prints the base-10 logarithm instead, with the sentinel
    ``-inf`` standing for a weighted count of zero.
    """
    cfg = config or SolverConfig()
    if track in ("mc", "pmc"):
        if not isinstance(value, int) or value < 0:
            raise ValueError("%s count must be a non-negative integer" % track)
        return "s %s %d" % (track, value)
    if track != "wmc":
        raise ValueError("unknown track %r" % (track,))
    value = Fraction(value)
    if value < 0:
        raise ValueError("weighted count must be non-negative")
    if cfg.log10:
        if value == 0:
            return "s log10-wmc -inf"
        with localcontext() as ctx:
            ctx.prec = cfg.precision + 15
            log = (
                Decimal(value.numerator).log10()
                - Decimal(value.denominator).log10()
            )
            quantum = Decimal(1).scaleb(-cfg.precision)
            # plain positional text, never scientific notation
            text = format(log.quantize(quantum), "f")
        return "s log10-wmc %s" % text
    return "s wmc %s" % _decimal_digits(value, cfg.precision)
