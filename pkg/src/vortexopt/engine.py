"""The vortex optimization loop.

One run proceeds as: random initialization with a one-time vorticity kick for
the initial best particle, then a fixed number of iterations each made of six
ordered stages:

1. mark every particle at or below the population mean fitness as a vortex,
2. pull every particle's vorticity toward the recorded best vorticity,
3. decay the vorticity of every vortex particle except the record holder,
4. move every particle except the record holder toward the recorded best
   position,
5. re-evaluate all fitnesses and update the best-so-far record on strict
   improvement,
6. when few enough normal particles remain, respawn all of them uniformly.

Randomness is consumed in a fixed order (stage by stage, particle index
ascending, coordinate index ascending within a particle), so a run is a pure
function of (config, objective, seed).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Objective, RandomSource, SwarmState, VoaConfig

__all__ = [
    "IterationTrace",
    "RunTrace",
    "RunReport",
    "vorticity_kick",
    "vorticity_pull",
    "vorticity_decay",
    "move_toward_best",
    "initialize_swarm",
    "mark_vortices",
    "refresh_fitness_and_best",
    "eliminate_and_respawn",
    "advance_iteration",
    "run",
]


@dataclass(frozen=True)
class IterationTrace:
    """Per-iteration convergence record. Row 0 is the initialization snapshot."""

    iteration: int
    best_fitness_so_far: float
    mean_fitness: float
    vortex_count: int
    eliminations_triggered: bool
    non_finite_evals: int = 0


class RunTrace:
    """Columnar trace of a whole run; indexable as IterationTrace rows."""

    def __init__(self, iteration, best_fitness_so_far, mean_fitness, vortex_count,
                 eliminations_triggered, non_finite_evals):
        self.iteration = np.asarray(iteration, dtype=np.int64)
        self.best_fitness_so_far = np.asarray(best_fitness_so_far, dtype=np.float64)
        self.mean_fitness = np.asarray(mean_fitness, dtype=np.float64)
        self.vortex_count = np.asarray(vortex_count, dtype=np.int64)
        self.eliminations_triggered = np.asarray(eliminations_triggered, dtype=bool)
        self.non_finite_evals = np.asarray(non_finite_evals, dtype=np.int64)

    def __len__(self):
        return self.iteration.shape[0]

    def __getitem__(self, i) -> IterationTrace:
        return IterationTrace(
            iteration=int(self.iteration[i]),
            best_fitness_so_far=float(self.best_fitness_so_far[i]),
            mean_fitness=float(self.mean_fitness[i]),
            vortex_count=int(self.vortex_count[i]),
            eliminations_triggered=bool(self.eliminations_triggered[i]),
            non_finite_evals=int(self.non_finite_evals[i]),
        )

    def rows(self):
        return (self[i] for i in range(len(self)))


@dataclass(eq=False)
class RunReport:
    """Everything a single run produced, plus the configuration that made it."""

    function: str
    dimension: int
    seed: int
    best_fitness: float
    best_position: np.ndarray
    evaluations: int
    iterations: int
    wall_time_ms: float
    config: VoaConfig
    trace: Optional[RunTrace] = None
    error: Optional[str] = None


def vorticity_kick(v, r, v_min, v_max):
    """Upward vorticity nudge ``v + r*v``, clamped to the configured limits.

    Applied exactly once per run, to the initial best particle.
    """
    return np.clip(v + r * v, v_min, v_max)


def vorticity_pull(v, best_v, r, epsilon, v_min, v_max):
    """Vorticity step ``v + r * (best_v / v)``, guarded and clamped.

    The divisor is the particle's own vorticity; magnitudes below ``epsilon``
    are replaced by ``epsilon`` carrying the original sign (zero counts as
    positive), so the step stays finite. The result is clamped to
    [v_min, v_max]. Accepts scalars or arrays.
    """
    v = np.asarray(v, dtype=np.float64)
    guarded = np.where(np.abs(v) >= epsilon, v, np.where(v >= 0.0, epsilon, -epsilon))
    out = np.clip(v + r * (best_v / guarded), v_min, v_max)
    return out if out.ndim else float(out)


def vorticity_decay(v, r):
    """Contraction ``r*v`` with r in [0, 1); never leaves the clamp interval."""
    return r * v


def move_toward_best(positions, vorticity, best_position, r, lower, upper):
    """Move particles along ``r * v * (best - position)``, clamped to the box.

    ``positions`` is one vector or a (k, d) stack. ``r`` may be a scalar, one
    draw per particle (k,), or one draw per coordinate (k, d); a scalar or
    per-particle draw is shared by all coordinates of that particle, confining
    the move to the line through the best position.
    """
    positions = np.asarray(positions, dtype=np.float64)
    single = positions.ndim == 1
    pos = np.atleast_2d(positions)
    best = np.asarray(best_position, dtype=np.float64)
    if best.shape != (pos.shape[1],):
        raise ValueError(
            f"dimension mismatch: positions have {pos.shape[1]} coordinates, "
            f"best position has shape {best.shape}"
        )
    v = np.atleast_1d(np.asarray(vorticity, dtype=np.float64))
    r = np.asarray(r, dtype=np.float64)
    if r.ndim == 2:
        factor = r * v[:, None]
    else:
        factor = np.atleast_1d(r * v)[:, None]
    moved = pos + factor * (best[None, :] - pos)
    moved = np.clip(moved, lower, upper)
    return moved[0] if single else moved


def _sanitize(values: np.ndarray) -> np.ndarray:
    # Non-finite objective values compare as +inf so they never win a record.
    return np.where(np.isfinite(values), values, np.inf)


def initialize_swarm(config: VoaConfig, objective: Objective, rng: RandomSource) -> SwarmState:
    """Place the population uniformly in the box and seed the best record.

    All particles start at the configured initial vorticity with normal
    status; the fittest one receives the one-time vorticity kick, becomes a
    vortex, and its values become the best-so-far record.
    """
    n = config.n_particles
    lower, upper = objective.lower, objective.upper
    positions = rng.uniform_box(lower, upper, n)
    fitness = _sanitize(objective.evaluate_rows(positions))
    vorticity = np.full(n, config.initial_vorticity, dtype=np.float64)
    best_index = int(np.argmin(fitness))
    r = rng.uniform_unit()
    vorticity[best_index] = float(
        vorticity_kick(vorticity[best_index], r, config.min_vorticity, config.max_vorticity)
    )
    is_vortex = np.zeros(n, dtype=bool)
    is_vortex[best_index] = True
    return SwarmState(
        positions=positions,
        vorticity=vorticity,
        fitness=fitness,
        is_vortex=is_vortex,
        best_position=positions[best_index].copy(),
        best_fitness=float(fitness[best_index]),
        best_vorticity=float(vorticity[best_index]),
        best_index=best_index,
        iteration=0,
        evaluations=n,
    )


def mark_vortices(state: SwarmState) -> SwarmState:
    """Classify particles: fitness at or below the population mean is a vortex.

    The best-so-far holder keeps vortex status regardless of the mean test.
    """
    mean = state.fitness.mean()
    state.is_vortex = state.fitness <= mean
    state.is_vortex[state.best_index] = True
    return state


def refresh_fitness_and_best(state: SwarmState, objective: Objective) -> int:
    """Re-evaluate every particle and update the best-so-far record.

    The iteration's best particle is marked vortex. The record is replaced
    only on strict improvement; ties keep the incumbent holder. Non-finite
    fitness values are stored as +inf; their count is returned for the trace.
    """
    raw = objective.evaluate_rows(state.positions)
    state.evaluations += state.n_particles
    non_finite = int(np.count_nonzero(~np.isfinite(raw)))
    state.fitness = _sanitize(raw)
    it_best = int(np.argmin(state.fitness))
    state.is_vortex[it_best] = True
    if state.fitness[it_best] < state.best_fitness:
        state.best_fitness = float(state.fitness[it_best])
        state.best_position = state.positions[it_best].copy()
        state.best_vorticity = float(state.vorticity[it_best])
        state.best_index = it_best
    return non_finite


def eliminate_and_respawn(state: SwarmState, config: VoaConfig, objective: Objective,
                          rng: RandomSource) -> bool:
    """Cull and replace the normal particles when few enough remain.

    Triggers when the normal count is at or below the elimination threshold;
    every normal particle is then replaced by a fresh uniform-random one at
    the initial vorticity, already evaluated, still with normal status.
    Vortex particles, including the record holder, are untouched and the
    population size never changes. Returns whether the cull triggered.
    """
    normal = ~state.is_vortex
    count = int(normal.sum())
    if count > config.elimination_threshold:
        return False
    if count:
        fresh = rng.uniform_box(objective.lower, objective.upper, count)
        state.positions[normal] = fresh
        state.vorticity[normal] = config.initial_vorticity
        state.fitness[normal] = _sanitize(objective.evaluate_rows(fresh))
        state.evaluations += count
    return True


def advance_iteration(state: SwarmState, config: VoaConfig, objective: Objective,
                      rng: RandomSource):
    """Run one full iteration in stage order; returns (eliminated, non_finite)."""
    n = state.n_particles
    mark_vortices(state)

    # Vorticity pull toward the record, every particle including the holder.
    r = rng.uniform_unit_batch(n)
    state.vorticity = np.asarray(
        vorticity_pull(state.vorticity, state.best_vorticity, r,
                       config.pull_epsilon, config.min_vorticity, config.max_vorticity)
    )

    # Decay for vortex particles other than the record holder.
    decaying = state.is_vortex.copy()
    decaying[state.best_index] = False
    k = int(decaying.sum())
    if k:
        r = rng.uniform_unit_batch(k)
        state.vorticity[decaying] = vorticity_decay(state.vorticity[decaying], r)

    # Move everyone but the record holder toward the recorded best position.
    moving = np.ones(n, dtype=bool)
    moving[state.best_index] = False
    m = n - 1
    if config.per_coordinate_draws:
        r = rng.uniform_unit_batch(m * objective.dimension).reshape(m, objective.dimension)
    else:
        r = rng.uniform_unit_batch(m)
    state.positions[moving] = move_toward_best(
        state.positions[moving], state.vorticity[moving], state.best_position,
        r, objective.lower, objective.upper,
    )

    non_finite = refresh_fitness_and_best(state, objective)
    eliminated = eliminate_and_respawn(state, config, objective, rng)
    state.iteration += 1
    return eliminated, non_finite


def run(config: VoaConfig, objective: Objective) -> RunReport:
    """Execute a full optimization run and report the best record found.

    The report carries the complete per-iteration trace (row 0 describes the
    initialized swarm), the total number of objective evaluations, and an
    echo of the configuration. Identical (config, objective) pairs produce
    identical reports apart from wall time.
    """
    t0 = time.perf_counter()
    rng = RandomSource(config.seed)
    state = initialize_swarm(config, objective, rng)

    steps = config.max_iterations
    trace_iter = np.zeros(steps + 1, dtype=np.int64)
    trace_best = np.zeros(steps + 1, dtype=np.float64)
    trace_mean = np.zeros(steps + 1, dtype=np.float64)
    trace_vortex = np.zeros(steps + 1, dtype=np.int64)
    trace_elim = np.zeros(steps + 1, dtype=bool)
    trace_nonfin = np.zeros(steps + 1, dtype=np.int64)

    trace_best[0] = state.best_fitness
    trace_mean[0] = state.fitness.mean()
    trace_vortex[0] = int(state.is_vortex.sum())
    trace_nonfin[0] = int(np.count_nonzero(np.isinf(state.fitness)))

    executed = 0
    for k in range(1, steps + 1):
        eliminated, non_finite = advance_iteration(state, config, objective, rng)
        executed = k
        trace_iter[k] = k
        trace_best[k] = state.best_fitness
        trace_mean[k] = state.fitness.mean()
        trace_vortex[k] = int(state.is_vortex.sum())
        trace_elim[k] = eliminated
        trace_nonfin[k] = non_finite
        if config.target_fitness is not None and state.best_fitness <= config.target_fitness:
            break

    end = executed + 1
    trace = RunTrace(
        iteration=trace_iter[:end],
        best_fitness_so_far=trace_best[:end],
        mean_fitness=trace_mean[:end],
        vortex_count=trace_vortex[:end],
        eliminations_triggered=trace_elim[:end],
        non_finite_evals=trace_nonfin[:end],
    )
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return RunReport(
        function=objective.name,
        dimension=objective.dimension,
        seed=config.seed,
        best_fitness=state.best_fitness,
        best_position=state.best_position.copy(),
        evaluations=state.evaluations,
        iterations=executed,
        wall_time_ms=wall_ms,
        config=config,
        trace=trace,
    )
