"""Benchmark manifests and harness configuration files.

A manifest lists one instance per line:

    path track [reference_count]

Blank lines and lines starting with '#' are skipped.  The reference count
is optional; integer for mc and pmc, decimal for wmc.  A missing reference
marks the instance as unknown, to be settled by consensus at scoring time.

The harness configuration is JSON:

    {
      "timeout": 1800,          optional wall seconds, per-track default
      "memory": 8000000000,     optional bytes
      "jobs": 1,
      "solvers": [
        {"id": "mine", "command": ["countkit", "count", "{instance}"],
         "exact": true, "input": "arg"}
      ]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from ..formats import TRACKS
from .runner import ResourceLimits, SolverSpec


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    track: str
    reference: int | Fraction | None = None

    def __post_init__(self):
        if self.track not in TRACKS:
            raise ValueError("unknown track %r" % (self.track,))


def parse_manifest(text) -> tuple[ManifestEntry, ...]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ValueError(
                "manifest line %d: expected 'path track [reference]'" % lineno
            )
        path, track = tokens[0], tokens[1]
        if track not in TRACKS:
            raise ValueError("manifest line %d: unknown track %r" % (lineno, track))
        reference = None
        if len(tokens) == 3:
            token = tokens[2]
            try:
                if track == "wmc":
                    reference = Fraction(Decimal(token))
                else:
                    reference = int(token)
            except (ValueError, InvalidOperation):
                raise ValueError(
                    "manifest line %d: unreadable reference %r" % (lineno, token)
                ) from None
            if reference < 0:
                raise ValueError("manifest line %d: negative reference" % lineno)
        entries.append(ManifestEntry(path=path, track=track, reference=reference))
    return tuple(entries)


def load_manifest(path) -> tuple[ManifestEntry, ...]:
    return parse_manifest(Path(path).read_text())


def serialize_manifest(entries) -> str:
    lines = []
    for entry in entries:
        if entry.reference is None:
            lines.append("%s %s" % (entry.path, entry.track))
        elif isinstance(entry.reference, Fraction) and entry.reference.denominator != 1:
            from ..formats import weight_to_text

            lines.append(
                "%s %s %s" % (entry.path, entry.track, weight_to_text(entry.reference))
            )
        else:
            lines.append("%s %s %d" % (entry.path, entry.track, entry.reference))
    return "\n".join(lines) + ("\n" if lines else "")


def references_by_instance(entries) -> dict:
    return {entry.path: entry.reference for entry in entries}


@dataclass(frozen=True)
class HarnessConfig:
    solvers: tuple[SolverSpec, ...]
    wall_seconds: float | None = None
    memory_bytes: int | None = None
    jobs: int = 1

    def limits_for(self, track) -> ResourceLimits:
        return ResourceLimits.for_track(
            track, wall_seconds=self.wall_seconds, memory_bytes=self.memory_bytes
        )

    def exact_solver_ids(self) -> frozenset:
        return frozenset(s.ident for s in self.solvers if s.exact)


def parse_config(text) -> HarnessConfig:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    raw_solvers = data.get("solvers")
    if not raw_solvers:
        raise ValueError("config declares no solvers")
    solvers = []
    for i, raw in enumerate(raw_solvers):
        try:
            solvers.append(
                SolverSpec(
                    ident=raw["id"],
                    command=tuple(raw["command"]),
                    exact=bool(raw.get("exact", False)),
                    input_mode=raw.get("input", "arg"),
                )
            )
        except KeyError as exc:
            raise ValueError("solver %d: missing field %s" % (i, exc)) from None
    idents = [s.ident for s in solvers]
    if len(set(idents)) != len(idents):
        raise ValueError("duplicate solver ids in config")
    jobs = int(data.get("jobs", 1))
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    wall = data.get("timeout")
    memory = data.get("memory")
    return HarnessConfig(
        solvers=tuple(solvers),
        wall_seconds=float(wall) if wall is not None else None,
        memory_bytes=int(memory) if memory is not None else None,
        jobs=jobs,
    )


def load_config(path) -> HarnessConfig:
    return parse_config(Path(path).read_text())
