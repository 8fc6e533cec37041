"""Readers and writers for the MC2020 instance and solution formats.

Three instance formats share a DIMACS-style skeleton: a ``p <descriptor> n m``
header line, ``c`` comment lines, and clauses given as whitespace-separated
integer tokens where 0 terminates a clause.  The weighted variant (wcnf) adds
``w <literal> <weight> 0`` lines and the projected variant (pcnf) a single
``vp <var> ... 0`` line naming the projection set.  Solution output uses
``s <tag> <value>`` lines with tags mc, wmc, pmc, or log10-wmc.

Parsing is lenient by default: real-world deviations such as multi-line
clauses, a wrong clause count in the header, or a missing ``w``-line
terminator are accepted (some with a ParseWarning).  Strict mode enforces the
letter of the format: one clause per line, clause count and projection count
matching the header, no duplicate weight declarations.  Serialization always
emits canonical strict output, so serialize/parse round-trips are stable.

Weights are kept as exact rationals.  The decimal text ``0.4`` becomes
``Fraction(2, 5)``; no float ever enters the pipeline.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction

MC_EXTENSION = ".mcc2020_cnf"
WMC_EXTENSION = ".mcc2020_wcnf"
PMC_EXTENSION = ".mcc2020_pcnf"

TRACKS = ("mc", "wmc", "pmc")
TRACK_EXTENSIONS = {
    "mc": MC_EXTENSION,
    "wmc": WMC_EXTENSION,
    "pmc": PMC_EXTENSION,
}
EXTENSION_TRACKS = {ext: track for track, ext in TRACK_EXTENSIONS.items()}

_DESCRIPTORS = {"mc": "cnf", "wmc": "wcnf", "pmc": "pcnf"}
_SOLUTION_TAGS = {"mc", "wmc", "pmc", "log10-wmc"}


class FormatError(ValueError):
    """Base class for instance and solution format violations."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = "line %d: %s" % (lineno, message)
        super().__init__(message)
        self.lineno = lineno


class MissingHeader(FormatError):
    pass


class DuplicateHeader(FormatError):
    pass


class LiteralOutOfRange(FormatError):
    def __init__(self, literal, num_vars, lineno=None):
        super().__init__(
            "literal %d outside declared range 1..%d" % (literal, num_vars), lineno
        )
        self.literal = literal
        self.num_vars = num_vars


class UnterminatedClause(FormatError):
    pass


class ClauseCountMismatch(FormatError):
    def __init__(self, expected, found, lineno=None):
        super().__init__(
            "header declares %d clauses, file contains %d" % (expected, found), lineno
        )
        self.expected = expected
        self.found = found


class MalformedToken(FormatError):
    pass


class WeightOutOfRange(FormatError):
    def __init__(self, literal, weight, lineno=None):
        super().__init__(
            "weight %s for literal %d outside [0, 1]" % (weight, literal), lineno
        )
        self.literal = literal
        self.weight = weight


class DuplicateWeight(FormatError):
    def __init__(self, literal, lineno=None):
        super().__init__("duplicate weight for literal %d" % literal, lineno)
        self.literal = literal


class MalformedWeightLine(FormatError):
    pass


class MissingVpLine(FormatError):
    pass


class DuplicateVpLine(FormatError):
    pass


class ProjectionVarOutOfRange(FormatError):
    def __init__(self, var, num_vars, lineno=None):
        super().__init__(
            "projection variable %d outside declared range 1..%d" % (var, num_vars),
            lineno,
        )
        self.var = var
        self.num_vars = num_vars


class ProjectionCountMismatch(FormatError):
    def __init__(self, expected, found, lineno=None):
        super().__init__(
            "header declares %d projection variables, vp line names %d"
            % (expected, found),
            lineno,
        )
        self.expected = expected
        self.found = found


class NoSolutionLine(FormatError):
    pass


class TrackTagMismatch(FormatError):
    def __init__(self, found, expected, lineno=None):
        super().__init__(
            "solution line carries tag %r, expected %r" % (found, expected), lineno
        )
        self.found = found
        self.expected = expected


class MalformedValue(FormatError):
    pass


class ParseWarning(UserWarning):
    """Non-fatal deviation accepted by the lenient parser."""


@dataclass(frozen=True)
class CnfDocument:
    """A parsed cnf instance.

    ``num_clauses`` always equals ``len(clauses)``.  When a lenient parse
    meets a header whose clause count disagrees with the file body, the body
    wins and a ParseWarning records the disagreement.  Clauses keep their
    literals in source order, duplicates and tautologies included; the
    semantic layer is responsible for handling those.  Comments are carried
    for diagnostics only and never take part in equality.
    """

    num_vars: int
    num_clauses: int
    clauses: tuple[tuple[int, ...], ...]
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "clauses", tuple(tuple(cl) for cl in self.clauses)
        )
        object.__setattr__(self, "comments", tuple(self.comments))
        if self.num_vars < 1:
            raise ValueError("num_vars must be positive, got %d" % self.num_vars)
        if self.num_clauses != len(self.clauses):
            raise ValueError(
                "num_clauses %d disagrees with %d stored clauses"
                % (self.num_clauses, len(self.clauses))
            )
        for cl in self.clauses:
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise LiteralOutOfRange(lit, self.num_vars)


@dataclass(frozen=True)
class WcnfDocument:
    """A parsed wcnf instance: a cnf body plus explicit literal weights.

    ``weights`` holds only the literals the file declared; every other
    literal implicitly weighs 1.
    """

    base: CnfDocument
    weights: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for lit, w in self.weights.items():
            if lit == 0 or abs(lit) > self.base.num_vars:
                raise LiteralOutOfRange(lit, self.base.num_vars)
            if not 0 <= w <= 1:
                raise WeightOutOfRange(lit, w)

    @property
    def num_vars(self):
        return self.base.num_vars

    @property
    def clauses(self):
        return self.base.clauses


@dataclass(frozen=True)
class PcnfDocument:
    """A parsed pcnf instance: a cnf body plus the projection variable set."""

    base: CnfDocument
    projection_vars: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "projection_vars", frozenset(self.projection_vars))
        for v in self.projection_vars:
            if not 1 <= v <= self.base.num_vars:
                raise ProjectionVarOutOfRange(v, self.base.num_vars)

    @property
    def num_vars(self):
        return self.base.num_vars

    @property
    def clauses(self):
        return self.base.clauses


@dataclass(frozen=True)
class SolutionLine:
    """One solver answer.

    For is_log10 solutions the value is the base-10 logarithm of the weighted
    count.  The sentinel ``-inf`` (a weighted count of zero) is normalized at
    parse time to a plain value of 0 with is_log10 False, so downstream
    arithmetic never meets an infinity.
    """

    track: str
    value: int | Fraction
    is_log10: bool = False


def _as_lines(text):
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("latin-1")
    return text.splitlines()


def _decimal_to_fraction(token):
    """Exact rational from decimal or scientific text. Raises ValueError."""
    d = Decimal(token)
    if not d.is_finite():
        raise ValueError("non-finite value %r" % token)
    return Fraction(d)


class _InstanceReader:
    """Shared line-by-line reader for the three instance formats."""

    def __init__(self, track, strict):
        self.track = track
        self.descriptor = _DESCRIPTORS[track]
        self.strict = strict
        self.num_vars = None
        self.declared_clauses = None
        self.declared_projection = None
        self.clauses = []
        self.comments = []
        self.weights = {}
        self.projection = None
        self.pending = []  # literals of the clause currently open

    def warn(self, message, lineno):
        warnings.warn("line %d: %s" % (lineno, message), ParseWarning, stacklevel=4)

    def feed(self, raw, lineno):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped:
            return
        if stripped[0] == "c":
            self.comments.append(stripped)
            return
        tokens = stripped.split()
        if tokens[0] == "p":
            self._header(tokens, lineno)
            return
        if self.num_vars is None:
            raise MissingHeader(
                "content before the 'p %s' header" % self.descriptor, lineno
            )
        if tokens[0] == "w" and self.track == "wmc":
            self._weight_line(tokens, lineno)
            return
        if tokens[0] == "vp" and self.track == "pmc":
            self._vp_line(tokens, lineno)
            return
        self._clause_tokens(tokens, lineno)

    def _header(self, tokens, lineno):
        if self.num_vars is not None:
            raise DuplicateHeader("second 'p' line", lineno)
        want = 4 if self.track != "pmc" else (4, 5)
        if self.track == "pmc":
            if len(tokens) not in want:
                raise MalformedToken(
                    "expected 'p pcnf <vars> <clauses> [<projected>]'", lineno
                )
        elif len(tokens) != want:
            raise MalformedToken(
                "expected 'p %s <vars> <clauses>'" % self.descriptor, lineno
            )
        if tokens[1] != self.descriptor:
            raise MalformedToken(
                "header descriptor %r, expected %r" % (tokens[1], self.descriptor),
                lineno,
            )
        try:
            fields = [int(t) for t in tokens[2:]]
        except ValueError:
            raise MalformedToken("non-integer header field", lineno) from None
        if fields[0] < 1:
            raise MalformedToken("variable count must be positive", lineno)
        if fields[1] < 0:
            raise MalformedToken("clause count must be non-negative", lineno)
        self.num_vars = fields[0]
        self.declared_clauses = fields[1]
        if len(fields) == 3:
            if fields[2] < 0:
                raise MalformedToken("projection count must be non-negative", lineno)
            self.declared_projection = fields[2]

    def _weight_line(self, tokens, lineno):
        # canonical shape: w <literal> <weight> 0
        if len(tokens) == 3:
            if self.strict:
                raise MalformedWeightLine("weight line missing 0 terminator", lineno)
            self.warn("weight line missing 0 terminator", lineno)
        elif len(tokens) != 4 or tokens[3] != "0":
            raise MalformedWeightLine(
                "expected 'w <literal> <weight> 0'", lineno
            )
        try:
            lit = int(tokens[1])
        except ValueError:
            raise MalformedWeightLine("non-integer literal %r" % tokens[1], lineno) from None
        if lit == 0 or abs(lit) > self.num_vars:
            raise LiteralOutOfRange(lit, self.num_vars, lineno)
        try:
            weight = _decimal_to_fraction(tokens[2])
        except (ValueError, InvalidOperation):
            raise MalformedWeightLine("unreadable weight %r" % tokens[2], lineno) from None
        if not 0 <= weight <= 1:
            raise WeightOutOfRange(lit, weight, lineno)
        if lit in self.weights:
            if self.strict:
                raise DuplicateWeight(lit, lineno)
            self.warn("duplicate weight for literal %d, last wins" % lit, lineno)
        self.weights[lit] = weight

    def _vp_line(self, tokens, lineno):
        if self.projection is not None:
            raise DuplicateVpLine("second vp line", lineno)
        if tokens[-1] != "0":
            raise MalformedToken("vp line must end with 0", lineno)
        vars_ = []
        for t in tokens[1:-1]:
            try:
                v = int(t)
            except ValueError:
                raise MalformedToken("non-integer token %r on vp line" % t, lineno) from None
            if v == 0:
                raise MalformedToken("0 before the end of the vp line", lineno)
            if not 1 <= v <= self.num_vars:
                raise ProjectionVarOutOfRange(v, self.num_vars, lineno)
            vars_.append(v)
        self.projection = frozenset(vars_)

    def _clause_tokens(self, tokens, lineno):
        closed_here = 0
        for t in tokens:
            if self.strict and closed_here and self.pending == []:
                # a second clause is starting on the same physical line
                raise MalformedToken("more than one clause on a line", lineno)
            try:
                lit = int(t)
            except ValueError:
                raise MalformedToken("non-integer token %r" % t, lineno) from None
            if lit == 0:
                self.clauses.append(tuple(self.pending))
                self.pending = []
                closed_here += 1
                continue
            if abs(lit) > self.num_vars:
                raise LiteralOutOfRange(lit, self.num_vars, lineno)
            self.pending.append(lit)
        if self.strict and self.pending:
            raise UnterminatedClause("clause crosses a line boundary", lineno)

    def finish(self, total_lines):
        if self.num_vars is None:
            raise MissingHeader("no 'p %s' header" % self.descriptor)
        if self.pending:
            raise UnterminatedClause("last clause has no 0 terminator", total_lines)
        if self.declared_clauses != len(self.clauses):
            if self.strict:
                raise ClauseCountMismatch(self.declared_clauses, len(self.clauses))
            warnings.warn(
                "header declares %d clauses, file contains %d; using the file"
                % (self.declared_clauses, len(self.clauses)),
                ParseWarning,
                stacklevel=3,
            )
        if self.track == "pmc":
            if self.projection is None:
                raise MissingVpLine("no vp line")
            if (
                self.declared_projection is not None
                and self.declared_projection != len(self.projection)
            ):
                if self.strict:
                    raise ProjectionCountMismatch(
                        self.declared_projection, len(self.projection)
                    )
                warnings.warn(
                    "header declares %d projection variables, vp line names %d"
                    % (self.declared_projection, len(self.projection)),
                    ParseWarning,
                    stacklevel=3,
                )
        if self.track == "wmc" and self.strict:
            lonely = sorted(
                abs(l) for l in self.weights if -l not in self.weights
            )
            if lonely:
                warnings.warn(
                    "only one polarity weighted for variables %s"
                    % ", ".join(map(str, lonely)),
                    ParseWarning,
                    stacklevel=3,
                )

    def document(self):
        base = CnfDocument(
            num_vars=self.num_vars,
            num_clauses=len(self.clauses),
            clauses=tuple(self.clauses),
            comments=tuple(self.comments),
        )
        if self.track == "mc":
            return base
        if self.track == "wmc":
            return WcnfDocument(base=base, weights=dict(self.weights))
        return PcnfDocument(base=base, projection_vars=self.projection)


def _parse(text, track, strict):
    reader = _InstanceReader(track, strict)
    lines = _as_lines(text)
    for lineno, raw in enumerate(lines, start=1):
        reader.feed(raw, lineno)
    reader.finish(len(lines))
    return reader.document()


def parse_mc(text, *, strict=False) -> CnfDocument:
    """Parse a model counting instance (``p cnf``)."""
    return _parse(text, "mc", strict)


def parse_wmc(text, *, strict=False) -> WcnfDocument:
    """Parse a weighted model counting instance (``p wcnf``)."""
    return _parse(text, "wmc", strict)


def parse_pmc(text, *, strict=False) -> PcnfDocument:
    """Parse a projected model counting instance (``p pcnf``)."""
    return _parse(text, "pmc", strict)


_PARSERS = {"mc": parse_mc, "wmc": parse_wmc, "pmc": parse_pmc}


def parse_document(text, track, *, strict=False):
    """Parse an instance of the given track (one of mc, wmc, pmc)."""
    try:
        parser = _PARSERS[track]
    except KeyError:
        raise ValueError("unknown track %r" % (track,)) from None
    return parser(text, strict=strict)


def weight_to_text(weight) -> str:
    """Render an exact rational weight as minimal decimal text.

    Only rationals with a terminating decimal expansion can appear in a
    weight line, so denominators must factor into 2s and 5s.
    """
    w = Fraction(weight)
    if w.denominator == 1:
        return str(w.numerator)
    den = w.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(
            "%s has no finite decimal representation" % w
        )
    digits = max(twos, fives)
    scaled = w.numerator * 10**digits // w.denominator
    text = str(scaled).rjust(digits + 1, "0")
    whole, frac = text[:-digits], text[-digits:]
    frac = frac.rstrip("0") or "0"
    return "%s.%s" % (whole, frac)


def serialize(document) -> str:
    """Render a document as canonical strict format text.

    The header comes first, then the vp line (pcnf) or weight lines (wcnf),
    then one clause per line.  Comments are diagnostics and are not written.
    """
    if isinstance(document, CnfDocument):
        base, kind = document, "mc"
    elif isinstance(document, WcnfDocument):
        base, kind = document.base, "wmc"
    elif isinstance(document, PcnfDocument):
        base, kind = document.base, "pmc"
    else:
        raise TypeError("cannot serialize %r" % type(document).__name__)

    out = []
    if kind == "mc":
        out.append("p cnf %d %d" % (base.num_vars, base.num_clauses))
    elif kind == "wmc":
        out.append("p wcnf %d %d" % (base.num_vars, base.num_clauses))
        for lit in sorted(document.weights, key=lambda l: (abs(l), l < 0)):
            out.append("w %d %s 0" % (lit, weight_to_text(document.weights[lit])))
    else:
        proj = sorted(document.projection_vars)
        out.append(
            "p pcnf %d %d %d" % (base.num_vars, base.num_clauses, len(proj))
        )
        out.append("vp %s0" % "".join("%d " % v for v in proj))
    for cl in base.clauses:
        out.append("%s0" % "".join("%d " % lit for lit in cl))
    return "\n".join(out) + "\n"


def _parse_count_value(token, lineno=None):
    try:
        value = int(token)
    except ValueError:
        raise MalformedValue("unreadable count %r" % token, lineno) from None
    if value < 0:
        raise MalformedValue("negative count %d" % value, lineno)
    return value


def _parse_weighted_value(token, lineno=None):
    try:
        value = _decimal_to_fraction(token)
    except (ValueError, InvalidOperation):
        raise MalformedValue("unreadable weighted count %r" % token, lineno) from None
    if value < 0:
        raise MalformedValue("negative weighted count %s" % token, lineno)
    return value


def parse_solution(text, track) -> SolutionLine:
    """Extract the solver answer for the given track from solver output.

    The last line of the form ``s <tag> <value>`` whose tag matches the
    track wins; repeated answers overwrite earlier ones.  For the wmc track
    the alternative tag ``log10-wmc`` is accepted, carrying the base-10 log
    of the weighted count (``-inf`` meaning exactly zero).
    """
    if track not in TRACKS:
        raise ValueError("unknown track %r" % (track,))
    hit = None
    wrong_tags = set()
    for lineno, raw in enumerate(_as_lines(text), start=1):
        tokens = raw.split()
        if len(tokens) != 3 or tokens[0] != "s":
            continue
        tag = tokens[1]
        if tag == track or (track == "wmc" and tag == "log10-wmc"):
            hit = (tag, tokens[2], lineno)
        elif tag in _SOLUTION_TAGS:
            wrong_tags.add(tag)
    if hit is None:
        if wrong_tags:
            raise TrackTagMismatch(sorted(wrong_tags)[0], track)
        raise NoSolutionLine("no 's %s <value>' line" % track)
    tag, token, lineno = hit
    if tag == "log10-wmc":
        if token == "-inf":
            return SolutionLine(track="wmc", value=Fraction(0), is_log10=False)
        try:
            value = _decimal_to_fraction(token)
        except (ValueError, InvalidOperation):
            raise MalformedValue("unreadable log10 value %r" % token, lineno) from None
        return SolutionLine(track="wmc", value=value, is_log10=True)
    if track == "wmc":
        return SolutionLine(track="wmc", value=_parse_weighted_value(token, lineno))
    return SolutionLine(track=track, value=_parse_count_value(token, lineno))


def track_for_path(path) -> str:
    """Infer the track from a file name extension; ambiguity is an error."""
    name = str(path)
    for ext, track in EXTENSION_TRACKS.items():
        if name.endswith(ext):
            return track
    raise ValueError(
        "cannot infer track from %r; pass the track explicitly" % name
    )
