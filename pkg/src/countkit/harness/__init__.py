"""Benchmark harness: resource-limited runs, scoring, ranking, selection."""

from .manifest import (
    HarnessConfig,
    ManifestEntry,
    load_config,
    load_manifest,
    parse_config,
    parse_manifest,
    references_by_instance,
    serialize_manifest,
)
from .runner import (
    DEFAULT_MEMORY_BYTES,
    EXIT_GAVE_UP,
    EXIT_RESOURCE,
    EXIT_SOLVED,
    STATUS_MEM,
    STATUS_RTE,
    STATUS_SOLVED,
    STATUS_TLE,
    ResourceLimits,
    RunResult,
    SolverSpec,
    SpawnFailure,
    read_results,
    run_many,
    run_solver,
    write_results,
)
from .scoring import (
    AccuracyClass,
    Leaderboard,
    LeaderboardEntry,
    ScoreRecord,
    rank,
    resolve_unknown_refs,
    score,
    score_records_from_runs,
    score_solution,
)
from .selection import (
    DEFAULT_DISTRIBUTION,
    HardnessCategory,
    InsufficientPool,
    PoolEntry,
    SelectionResult,
    classify_hardness,
    select_instances,
)
from .tables import (
    cdf_csv,
    cdf_rows,
    leaderboard_csv,
    leaderboard_json,
    write_tables,
)

__all__ = [
    "AccuracyClass",
    "DEFAULT_DISTRIBUTION",
    "DEFAULT_MEMORY_BYTES",
    "EXIT_GAVE_UP",
    "EXIT_RESOURCE",
    "EXIT_SOLVED",
    "HardnessCategory",
    "HarnessConfig",
    "InsufficientPool",
    "Leaderboard",
    "LeaderboardEntry",
    "ManifestEntry",
    "PoolEntry",
    "ResourceLimits",
    "RunResult",
    "STATUS_MEM",
    "STATUS_RTE",
    "STATUS_SOLVED",
    "STATUS_TLE",
    "ScoreRecord",
    "SelectionResult",
    "SolverSpec",
    "SpawnFailure",
    "cdf_csv",
    "cdf_rows",
    "classify_hardness",
    "leaderboard_csv",
    "leaderboard_json",
    "load_config",
    "load_manifest",
    "parse_config",
    "parse_manifest",
    "rank",
    "read_results",
    "references_by_instance",
    "resolve_unknown_refs",
    "run_many",
    "run_solver",
    "score",
    "score_records_from_runs",
    "score_solution",
    "select_instances",
    "serialize_manifest",
    "write_results",
    "write_tables",
]
