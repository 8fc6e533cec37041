"""Exact model counting toolkit.

Three counting tasks over CNF formulas: plain model counting (mc),
weighted model counting over rational literal weights (wmc), and counting
the projections of models onto a designated variable set (pmc).  All
arithmetic is exact.

The interesting entry points:

- :mod:`countkit.formats` parses and serializes the instance and solution
  file formats for the three tracks.
- :mod:`countkit.counter` is the search-based engine (unit propagation,
  component decomposition, component caching).
- :mod:`countkit.oracle` is the brute-force reference implementation,
  deliberately limited to small instances.
- :mod:`countkit.harness` runs external solvers under resource limits,
  scores their answers against references, ranks them, and draws
  stratified benchmark selections.
- :mod:`countkit.cli` wires everything to the ``countkit`` command.
"""

from .core import Formula, WeightFunction, reduce, satisfies, weight_of_model
from .counter import (
    ResourceExhausted,
    SolverConfig,
    SolverStats,
    count,
    decompose,
    pcount,
    propagate,
    render_count,
    wcount,
)
from .formats import (
    CnfDocument,
    FormatError,
    ParseWarning,
    PcnfDocument,
    SolutionLine,
    WcnfDocument,
    parse_document,
    parse_mc,
    parse_pmc,
    parse_solution,
    parse_wmc,
    serialize,
    track_for_path,
)
from .oracle import (
    OracleLimit,
    TooLarge,
    enum_count,
    enum_pcount,
    enum_wcount,
    ie_count,
)

__version__ = "0.1.0"

__all__ = [
    "CnfDocument",
    "FormatError",
    "Formula",
    "OracleLimit",
    "ParseWarning",
    "PcnfDocument",
    "ResourceExhausted",
    "SolutionLine",
    "SolverConfig",
    "SolverStats",
    "TooLarge",
    "WcnfDocument",
    "WeightFunction",
    "__version__",
    "count",
    "decompose",
    "enum_count",
    "enum_pcount",
    "enum_wcount",
    "ie_count",
    "parse_document",
    "parse_mc",
    "parse_pmc",
    "parse_solution",
    "parse_wmc",
    "pcount",
    "propagate",
    "reduce",
    "render_count",
    "satisfies",
    "serialize",
    "track_for_path",
    "wcount",
    "weight_of_model",
]
