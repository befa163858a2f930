"""Experiment harness: plans, parallel execution, summaries, and CSV reports.

A plan is a (function, dimension, seed) grid plus one shared configuration.
Execution runs every cell, in parallel across runs when asked to, and always
yields the same reports in the same order regardless of scheduling. Reports
are written as CSV with fixed numeric formatting so identical plans produce
byte-identical files (wall time aside).
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .benchmarks import GRID_DIMENSIONS, benchmark_names, get_objective, get_spec
from .core import VoaConfig
from .engine import RunReport, run

__all__ = [
    "ExperimentPlan",
    "SummaryRow",
    "CheckResult",
    "REFERENCE_RESULTS",
    "CHECK_RULES",
    "make_plan",
    "execute_plan",
    "summarize",
    "write_reports",
    "read_runs_csv",
    "evaluate_checks",
    "RUNS_HEADER",
    "SUMMARY_HEADER",
    "TRACE_HEADER",
]

RUNS_HEADER = "function,dimension,seed,best_fitness,evaluations,iterations,wall_time_ms,best_position"
SUMMARY_HEADER = "function," + ",".join(f"d{d}" for d in GRID_DIMENSIONS)
TRACE_HEADER = "iteration,best_fitness,mean_fitness,vortex_count,eliminated"

DEFAULT_SEED_COUNT = 20
DEFAULT_BASE_SEED = 1

# Published single-number results this harness compares against, keyed by
# (function, dimension).
REFERENCE_RESULTS = {
    ("booth", 2): 0.0,
    ("beale", 2): 0.0,
    ("goldstein_price", 2): 3.0,
    ("mccormick", 2): -1.9133,
    ("three_hump_camel", 2): 0.0,
    ("sphere", 2): 0.0,
    ("sphere", 5): 0.0,
    ("sphere", 10): 0.0,
    ("sphere", 20): 0.0,
    ("sphere", 30): 0.0,
    ("rosenbrock", 2): 0.0,
    ("rosenbrock", 5): 0.0,
    ("rosenbrock", 10): 0.0002,
    ("rosenbrock", 20): 0.0027,
    ("rosenbrock", 30): 0.0023,
}

# Tolerance rules for the `check` subcommand. "max" passes when the median
# best is at or below the bound; "near" passes when it lies within the bound
# of the target value.
CHECK_RULES = {
    ("booth", 2): ("max", 1e-4),
    ("beale", 2): ("max", 1e-4),
    ("goldstein_price", 2): ("near", 3.0, 1e-3),
    ("mccormick", 2): ("near", -1.9133, 1e-3),
    ("three_hump_camel", 2): ("max", 1e-4),
    ("sphere", 2): ("max", 1e-4),
    ("sphere", 5): ("max", 1e-4),
    ("sphere", 10): ("max", 1e-4),
    ("sphere", 20): ("max", 1e-4),
    ("sphere", 30): ("max", 1e-4),
    ("rosenbrock", 2): ("max", 1e-3),
    ("rosenbrock", 5): ("max", 1e-3),
    ("rosenbrock", 10): ("max", 1e-2),
    ("rosenbrock", 20): ("max", 5e-2),
    ("rosenbrock", 30): ("max", 5e-2),
}


@dataclass(frozen=True)
class ExperimentPlan:
    """A validated grid of runs plus the configuration they share."""

    functions: tuple
    dimensions: dict
    seeds: tuple
    config: VoaConfig
    out_dir: Path
    trace_dir: Optional[Path] = None

    def __post_init__(self):
        if not self.functions:
            raise ValueError("plan selects no benchmark functions")
        if not self.seeds:
            raise ValueError("plan needs at least one seed")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be pairwise distinct")
        for name in self.functions:
            spec = get_spec(name)
            dims = self.dimensions.get(name, ())
            if not dims:
                raise ValueError(f"no dimensions selected for {name!r}")
            for d in dims:
                if not spec.supports(d):
                    if spec.fixed_dimension is not None:
                        detail = f"only dimension {spec.fixed_dimension}"
                    else:
                        detail = f"any dimension >= {spec.min_dimension}"
                    raise ValueError(
                        f"benchmark {name!r} supports {detail}, got {d}"
                    )

    def cells(self) -> list:
        return [(f, d) for f in self.functions for d in self.dimensions[f]]

    @property
    def n_runs(self) -> int:
        return len(self.cells()) * len(self.seeds)


def make_plan(functions=None, dims=None, seed_count=None, base_seed=None,
              config_overrides=None, out_dir="results", trace_dir=None) -> ExperimentPlan:
    """Assemble a plan, filling anything unspecified with the defaults.

    With no arguments this is the full reporting grid: every registry function
    at its grid dimensions, 20 consecutive seeds starting at 1, standard
    configuration.
    """
    if functions is None:
        functions = benchmark_names()
    functions = tuple(functions)
    dimensions = {}
    for name in functions:
        spec = get_spec(name)
        dimensions[name] = tuple(dims) if dims else spec.grid_dimensions
    base = DEFAULT_BASE_SEED if base_seed is None else int(base_seed)
    count = DEFAULT_SEED_COUNT if seed_count is None else int(seed_count)
    if count < 1:
        raise ValueError(f"seed count must be >= 1, got {count}")
    seeds = tuple(range(base, base + count))
    config = VoaConfig(**(config_overrides or {}))
    return ExperimentPlan(
        functions=functions,
        dimensions=dimensions,
        seeds=seeds,
        config=config,
        out_dir=Path(out_dir),
        trace_dir=Path(trace_dir) if trace_dir else None,
    )


def _run_cell(task) -> RunReport:
    name, dimension, config = task
    try:
        objective = get_objective(name, dimension)
        return run(config, objective)
    except Exception as exc:  # a broken run must not abort its siblings
        return RunReport(
            function=name,
            dimension=dimension,
            seed=config.seed,
            best_fitness=float("nan"),
            best_position=np.empty(0),
            evaluations=0,
            iterations=0,
            wall_time_ms=0.0,
            config=config,
            trace=None,
            error=f"{type(exc).__name__}: {exc}",
        )


def execute_plan(plan: ExperimentPlan, jobs=None, progress=None) -> list:
    """Run every (function, dimension, seed) cell of the plan.

    Runs execute concurrently across processes when ``jobs`` exceeds one; each
    run owns its full state and random stream, so results and their order do
    not depend on scheduling. ``progress`` is called with each finished report
    in plan order.
    """
    tasks = [
        (name, dim, replace(plan.config, seed=seed))
        for name, dim in plan.cells()
        for seed in plan.seeds
    ]
    if jobs is None:
        jobs = os.cpu_count() or 1
    reports = []
    if jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            report = _run_cell(task)
            if progress is not None:
                progress(report)
            reports.append(report)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for report in pool.map(_run_cell, tasks):
                if progress is not None:
                    progress(report)
                reports.append(report)
    return reports


@dataclass(frozen=True)
class SummaryRow:
    """Per (function, dimension) statistics over the seeds that ran."""

    function: str
    dimension: int
    n_seeds: int
    best: float
    median: float
    mean: float
    stddev: float
    reference_value: Optional[float] = None


def summarize(reports: Iterable[RunReport]) -> list:
    """Group reports by cell and reduce the per-seed bests to statistics.

    Error reports are excluded from the statistics; a cell with no successful
    runs is dropped entirely.
    """
    groups = {}
    order = []
    for report in reports:
        key = (report.function, report.dimension)
        if key not in groups:
            groups[key] = []
            order.append(key)
        if report.error is None and np.isfinite(report.best_fitness):
            groups[key].append(report.best_fitness)
    rows = []
    for key in order:
        bests = groups[key]
        if not bests:
            continue
        arr = np.asarray(bests, dtype=np.float64)
        rows.append(SummaryRow(
            function=key[0],
            dimension=key[1],
            n_seeds=len(bests),
            best=float(arr.min()),
            median=float(np.median(arr)),
            mean=float(arr.mean()),
            stddev=float(arr.std()),
            reference_value=REFERENCE_RESULTS.get(key),
        ))
    return rows


def _sci(value) -> str:
    return format(float(value), ".5e")


def _format_position(position) -> str:
    return ";".join(repr(float(x)) for x in np.asarray(position).ravel())


def write_reports(reports, summaries, plan: ExperimentPlan) -> dict:
    """Write runs.csv, the summary grid, a JSON summary, and optional traces.

    The summary grid always has one row per registry function and one column
    per grid dimension; cells that are not applicable for a function, or were
    not part of this plan, hold ``NA``. Numbers use fixed scientific notation
    so repeated identical plans write identical bytes (wall time aside).
    """
    out_dir = plan.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    lines = [RUNS_HEADER]
    for r in reports:
        lines.append(
            f"{r.function},{r.dimension},{r.seed},{_sci(r.best_fitness)},"
            f"{r.evaluations},{r.iterations},{r.wall_time_ms:.3f},"
            f"{_format_position(r.best_position)}"
        )
    runs_path = out_dir / "runs.csv"
    runs_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    by_cell = {(s.function, s.dimension): s for s in summaries}
    grid_lines = [SUMMARY_HEADER]
    for name in benchmark_names():
        cells = []
        for d in GRID_DIMENSIONS:
            row = by_cell.get((name, d))
            cells.append(_sci(row.median) if row is not None else "NA")
        grid_lines.append(name + "," + ",".join(cells))
    summary_path = out_dir / "summary.csv"
    summary_path.write_text("\n".join(grid_lines) + "\n", encoding="utf-8")

    payload = {
        "config": asdict(plan.config),
        "seeds": list(plan.seeds),
        "rows": [asdict(s) for s in summaries],
    }
    json_path = out_dir / "summary.json"
    json_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                         encoding="utf-8")

    if plan.trace_dir is not None:
        plan.trace_dir.mkdir(parents=True, exist_ok=True)
        for r in reports:
            if r.trace is None:
                continue
            t = r.trace
            rows = [TRACE_HEADER]
            for i in range(len(t)):
                rows.append(
                    f"{int(t.iteration[i])},{_sci(t.best_fitness_so_far[i])},"
                    f"{_sci(t.mean_fitness[i])},{int(t.vortex_count[i])},"
                    f"{int(t.eliminations_triggered[i])}"
                )
            name = f"{r.function}_d{r.dimension}_s{r.seed}.csv"
            (plan.trace_dir / name).write_text("\n".join(rows) + "\n", encoding="utf-8")

    return {
        "runs": runs_path,
        "summary": summary_path,
        "summary_json": json_path,
        "traces": plan.trace_dir,
    }


def read_runs_csv(path) -> list:
    """Load per-run reports back from runs.csv (config and trace omitted)."""
    path = Path(path)
    reports = []
    with path.open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            position = row.get("best_position", "")
            coords = [float(p) for p in position.split(";")] if position else []
            reports.append(RunReport(
                function=row["function"],
                dimension=int(row["dimension"]),
                seed=int(row["seed"]),
                best_fitness=float(row["best_fitness"]),
                best_position=np.asarray(coords, dtype=np.float64),
                evaluations=int(row["evaluations"]),
                iterations=int(row["iterations"]),
                wall_time_ms=float(row["wall_time_ms"]),
                config=None,
                trace=None,
            ))
    return reports


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one reference-table comparison."""

    function: str
    dimension: int
    median: float
    reference_value: Optional[float]
    rule: str
    passed: bool


def evaluate_checks(summaries) -> list:
    """Compare cell medians against the reference table tolerances."""
    results = []
    for s in summaries:
        rule = CHECK_RULES.get((s.function, s.dimension))
        if rule is None:
            continue
        if rule[0] == "max":
            bound = rule[1]
            passed = s.median <= bound
            text = f"median <= {bound:g}"
        else:
            target, tol = rule[1], rule[2]
            passed = abs(s.median - target) <= tol
            text = f"|median - {target:g}| <= {tol:g}"
        results.append(CheckResult(
            function=s.function,
            dimension=s.dimension,
            median=s.median,
            reference_value=s.reference_value,
            rule=text,
            passed=passed,
        ))
    return results
