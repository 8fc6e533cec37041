"""Resource-limited execution of counting solvers.

A solver is a child process given one instance file and watched by a
supervision loop: wall-clock overrun kills it with status TLE, and resident
set growth past the memory budget (sampled across the whole process tree
every 100 ms) kills it with status MEM.  Sampling can miss a very fast
allocation spike between two probes; a kernel cgroup limiter would close
that window where available, at the price of elevated privileges, so the
sampler is the default and only built-in mode.

A finished child is judged by its captured stdout: a well-formed solution
line for the track means SOLVED, anything else is a runtime failure (RTE).
Exit code convention for solvers: 0 after emitting a solution, 10 for a
clean give-up, 20 for a self-detected resource abort; other codes are
treated as crashes.  Killed processes first receive SIGTERM so they can
flush partial statistics, then SIGKILL after a one second grace period.

Default budgets per track: 1800 s wall clock for mc and wmc, 3600 s for
pmc, 8 * 10^9 bytes of memory for all.
"""

from __future__ import annotations

import json
import os
import signal
import subprocess
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import psutil

from ..formats import FormatError, SolutionLine, parse_solution

STATUS_SOLVED = "SOLVED"
STATUS_TLE = "TLE"
STATUS_MEM = "MEM"
STATUS_RTE = "RTE"

STATUSES = (STATUS_SOLVED, STATUS_TLE, STATUS_MEM, STATUS_RTE)

EXIT_SOLVED = 0
EXIT_GAVE_UP = 10
EXIT_RESOURCE = 20

DEFAULT_MEMORY_BYTES = 8 * 10**9
_WALL_DEFAULTS = {"mc": 1800.0, "wmc": 1800.0, "pmc": 3600.0}
_GRACE_SECONDS = 1.0


class SpawnFailure(OSError):
    """The solver process could not be started at all."""


@dataclass(frozen=True)
class ResourceLimits:
    wall_seconds: float
    memory_bytes: int = DEFAULT_MEMORY_BYTES

    def __post_init__(self):
        if self.wall_seconds <= 0:
            raise ValueError("wall_seconds must be positive")
        if self.memory_bytes <= 0:
            raise ValueError("memory_bytes must be positive")

    @classmethod
    def for_track(cls, track, wall_seconds=None, memory_bytes=None):
        if track not in _WALL_DEFAULTS:
            raise ValueError("unknown track %r" % (track,))
        return cls(
            wall_seconds=wall_seconds or _WALL_DEFAULTS[track],
            memory_bytes=memory_bytes or DEFAULT_MEMORY_BYTES,
        )


@dataclass(frozen=True)
class SolverSpec:
    """How to invoke one solver.

    command is an argument vector; the placeholder token ``{instance}`` is
    replaced by the instance path.  With input_mode "stdin" the instance is
    piped in instead and no placeholder is required.  exact marks solvers
    whose answers anchor consensus when references are unknown.
    """

    ident: str
    command: tuple[str, ...]
    exact: bool = False
    input_mode: str = "arg"

    def __post_init__(self):
        object.__setattr__(self, "command", tuple(self.command))
        if self.input_mode not in ("arg", "stdin"):
            raise ValueError("input_mode must be 'arg' or 'stdin'")
        if not self.command:
            raise ValueError("empty solver command")

    def argv(self, instance_path):
        path = str(instance_path)
        if self.input_mode == "stdin":
            return list(self.command)
        if any("{instance}" in part for part in self.command):
            return [part.replace("{instance}", path) for part in self.command]
        return list(self.command) + [path]


@dataclass
class RunResult:
    instance: str
    solver: str
    status: str
    wall_time: float
    solution: SolutionLine | None = None
    exit_code: int | None = None
    output_path: str | None = None

    def to_json(self) -> str:
        value = None
        if self.solution is not None:
            v = self.solution.value
            value = str(v) if isinstance(v, int) else "%d/%d" % (
                v.numerator,
                v.denominator,
            )
        return json.dumps(
            {
                "instance": self.instance,
                "solver": self.solver,
                "status": self.status,
                "wall_time": round(self.wall_time, 6),
                "exit_code": self.exit_code,
                "track": self.solution.track if self.solution else None,
                "value": value,
                "is_log10": bool(self.solution and self.solution.is_log10),
                "output_path": self.output_path,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "RunResult":
        data = json.loads(line)
        solution = None
        if data.get("value") is not None:
            raw = data["value"]
            value = Fraction(raw) if "/" in raw else int(raw)
            if data["track"] == "wmc":
                value = Fraction(value)
            solution = SolutionLine(
                track=data["track"],
                value=value,
                is_log10=bool(data.get("is_log10")),
            )
        return cls(
            instance=data["instance"],
            solver=data["solver"],
            status=data["status"],
            wall_time=float(data["wall_time"]),
            solution=solution,
            exit_code=data.get("exit_code"),
            output_path=data.get("output_path"),
        )


def _tree_rss(process: psutil.Process) -> int:
    total = 0
    try:
        procs = [process] + process.children(recursive=True)
    except psutil.Error:
        return 0
    for p in procs:
        try:
            total += p.memory_info().rss
        except psutil.Error:
            continue
    return total


def _terminate_tree(proc: subprocess.Popen):
    """SIGTERM the process group, then SIGKILL whatever survives grace."""
    try:
        pgid = os.getpgid(proc.pid)
    except ProcessLookupError:
        pgid = None
    if pgid is not None:
        try:
            os.killpg(pgid, signal.SIGTERM)
        except ProcessLookupError:
            pass
    try:
        proc.wait(timeout=_GRACE_SECONDS)
        return
    except subprocess.TimeoutExpired:
        pass
    if pgid is not None:
        try:
            os.killpg(pgid, signal.SIGKILL)
        except ProcessLookupError:
            pass
    try:
        proc.kill()
    except ProcessLookupError:
        pass
    proc.wait()


def run_solver(
    spec: SolverSpec,
    instance_path,
    limits: ResourceLimits,
    track,
    *,
    instance_id=None,
    output_path=None,
    poll_interval=0.1,
) -> RunResult:
    """Run one solver on one instance under the given limits.

    Solver stdout is captured to output_path (a temporary-free sibling file
    is never created; when no path is given the output is kept in memory).
    Raises SpawnFailure when the process cannot start.
    """
    instance_path = Path(instance_path)
    instance_id = instance_id if instance_id is not None else str(instance_path)
    argv = spec.argv(instance_path)

    out_file = None
    stdin_file = None
    try:
        if output_path is not None:
            Path(output_path).parent.mkdir(parents=True, exist_ok=True)
            out_file = open(output_path, "wb")
        stdout_target = out_file if out_file is not None else subprocess.PIPE
        if spec.input_mode == "stdin":
            stdin_file = open(instance_path, "rb")
        try:
            proc = subprocess.Popen(
                argv,
                stdout=stdout_target,
                stderr=subprocess.DEVNULL,
                stdin=stdin_file if stdin_file is not None else subprocess.DEVNULL,
                start_new_session=True,
            )
        except OSError as exc:
            raise SpawnFailure("cannot start %r: %s" % (argv[0], exc)) from exc

        watcher = psutil.Process(proc.pid)
        start = time.perf_counter()
        verdict = None
        captured = b""
        while True:
            if proc.poll() is not None:
                break
            elapsed = time.perf_counter() - start
            if elapsed >= limits.wall_seconds:
                verdict = STATUS_TLE
                break
            if _tree_rss(watcher) > limits.memory_bytes:
                verdict = STATUS_MEM
                break
            remaining = limits.wall_seconds - elapsed
            time.sleep(min(poll_interval, max(remaining, 0.001)))

        if verdict is not None:
            wall = time.perf_counter() - start
            if out_file is None and proc.stdout is not None:
                proc.stdout.close()
            _terminate_tree(proc)
            return RunResult(
                instance=instance_id,
                solver=spec.ident,
                status=verdict,
                wall_time=wall,
                exit_code=None,
                output_path=str(output_path) if output_path else None,
            )

        wall = time.perf_counter() - start
        if out_file is None:
            captured = proc.stdout.read() if proc.stdout else b""
            proc.wait()
    finally:
        if out_file is not None:
            out_file.close()
        if stdin_file is not None:
            stdin_file.close()

    if output_path is not None:
        captured = Path(output_path).read_bytes()

    solution = None
    status = STATUS_RTE
    try:
        solution = parse_solution(captured, track)
        status = STATUS_SOLVED
    except FormatError:
        solution = None
        status = STATUS_RTE

    return RunResult(
        instance=instance_id,
        solver=spec.ident,
        status=status,
        wall_time=wall,
        solution=solution,
        exit_code=proc.returncode,
        output_path=str(output_path) if output_path else None,
    )


def _raw_output_path(out_dir, solver_ident, instance_id):
    stem = Path(instance_id).name.replace("/", "_")
    return Path(out_dir) / "raw" / solver_ident / ("%s.log" % stem)


def run_many(entries, solvers, out_dir, *, limits_overrides=None, jobs=1,
             poll_interval=0.1):
    """Run every solver on every manifest entry; archive raw outputs.

    limits_overrides optionally maps track to a ResourceLimits replacing
    the defaults.  Results come back sorted by (solver, instance).  jobs
    parallelizes across child processes; each child is still supervised
    individually.
    """
    from concurrent.futures import ThreadPoolExecutor

    limits_overrides = limits_overrides or {}
    tasks = []
    for spec in solvers:
        for entry in entries:
            limits = limits_overrides.get(
                entry.track, ResourceLimits.for_track(entry.track)
            )
            tasks.append((spec, entry, limits))

    def one(task):
        spec, entry, limits = task
        return run_solver(
            spec,
            entry.path,
            limits,
            entry.track,
            instance_id=entry.path,
            output_path=_raw_output_path(out_dir, spec.ident, entry.path),
            poll_interval=poll_interval,
        )

    if jobs <= 1:
        results = [one(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, tasks))
    results.sort(key=lambda r: (r.solver, r.instance))
    return results


def write_results(results, path):
    """Results as JSON lines, one run per line."""
    with open(path, "w") as fh:
        for result in results:
            fh.write(result.to_json() + "\n")


def read_results(path):
    with open(path) as fh:
        return [RunResult.from_json(line) for line in fh if line.strip()]
