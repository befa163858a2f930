"""Core domain types shared by the optimizer, the benchmark suite, and the harness.

Defines the particle and swarm state containers, the run configuration, the
objective-function contract, and the seeded deterministic random source that
every stochastic operation draws from.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

__all__ = [
    "ParticleStatus",
    "Particle",
    "VoaConfig",
    "Objective",
    "SwarmState",
    "RandomSource",
    "uniform_unit",
    "uniform_in",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_UNIT_SCALE = 1.0 / (1 << 53)


class ParticleStatus(Enum):
    """Swarm membership class: vortex particles persist, normal ones may be culled."""

    VORTEX = "vortex"
    NORMAL = "normal"


@dataclass
class Particle:
    """Snapshot of a single swarm member.

    Attributes
    ----------
    position : ndarray
        Coordinates in the search box, length equals the objective dimension.
    vorticity : float
        Scalar state that scales the particle's pull toward the global best.
    fitness : float
        Objective value at ``position`` (minimization sense). Non-finite
        evaluations are stored as ``+inf``.
    status : ParticleStatus
        Vortex or normal classification from the most recent marking pass.
    """

    position: np.ndarray
    vorticity: float
    fitness: float
    status: ParticleStatus


class RandomSource:
    """Deterministic uniform random source (SplitMix64).

    The generator is the SplitMix64 sequence: the i-th raw output is
    ``mix64(seed + i * 0x9E3779B97F4A7C15)`` over wrapping 64-bit arithmetic,
    where ``mix64`` is the xor-shift/multiply finalizer
    (``0xBF58476D1CE4E5B9`` / ``0x94D049BB133111EB``). Uniform doubles take
    the top 53 bits, giving values in ``[0, 1)``. Because outputs are a pure
    function of ``(seed, draw index)``, sequences are identical across
    platforms and library versions, and batch generation consumes exactly the
    same stream as repeated single draws.
    """

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {seed}")
        self._seed = int(seed) & _MASK64
        self._count = 0

    def uniform_unit_batch(self, n: int) -> np.ndarray:
        """Return the next ``n`` uniform draws in [0, 1) as a float64 array."""
        if n < 0:
            raise ValueError(f"batch size must be non-negative, got {n}")
        if n == 0:
            return np.empty(0, dtype=np.float64)
        idx = np.arange(self._count + 1, self._count + n + 1, dtype=np.uint64)
        self._count += n
        z = np.uint64(self._seed) + idx * np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
        return (z >> np.uint64(11)).astype(np.float64) * _UNIT_SCALE

    def uniform_unit(self) -> float:
        """Return the next uniform draw in [0, 1)."""
        return float(self.uniform_unit_batch(1)[0])

    def uniform_in(self, lower: float, upper: float) -> float:
        """Return a uniform draw in [lower, upper)."""
        if not lower < upper:
            raise ValueError(f"invalid interval: lower={lower} must be < upper={upper}")
        return lower + self.uniform_unit() * (upper - lower)

    def uniform_box(self, lower: np.ndarray, upper: np.ndarray, count: int) -> np.ndarray:
        """Sample ``count`` points uniformly in the box spanned by lower/upper.

        Draws are consumed point-major, coordinate index ascending within each
        point, so the stream layout is independent of how callers batch.
        """
        lower = np.asarray(lower, dtype=np.float64)
        upper = np.asarray(upper, dtype=np.float64)
        if np.any(lower >= upper):
            raise ValueError("invalid box: every lower bound must be < its upper bound")
        d = lower.shape[0]
        u = self.uniform_unit_batch(count * d).reshape(count, d)
        return lower + u * (upper - lower)


def uniform_unit(rng: RandomSource) -> float:
    """Next deterministic draw in [0, 1); advances the generator state."""
    return rng.uniform_unit()


def uniform_in(rng: RandomSource, lower: float, upper: float) -> float:
    """Next draw mapped affinely onto [lower, upper)."""
    return rng.uniform_in(lower, upper)


@dataclass(frozen=True)
class VoaConfig:
    """Run configuration.

    Defaults follow the standard benchmark setup: 50 particles, 5000
    iterations, initial vorticity 0.5 clamped to [-7, 7], and an elimination
    threshold equal to the population size (so every below-average particle is
    respawned each iteration).

    ``per_coordinate_draws`` selects how the position update consumes
    randomness: one independent draw per coordinate (default), or a single
    draw shared by all coordinates of a particle, which restricts each move to
    the line through the global best.
    """

    n_particles: int = 50
    max_iterations: int = 5000
    initial_vorticity: float = 0.5
    max_vorticity: float = 7.0
    min_vorticity: Optional[float] = None
    elimination_threshold: int = 50
    seed: int = 1
    pull_epsilon: float = 1e-9
    per_coordinate_draws: bool = True
    target_fitness: Optional[float] = None

    def __post_init__(self):
        if self.min_vorticity is None:
            object.__setattr__(self, "min_vorticity", -float(self.max_vorticity))
        if self.n_particles < 2:
            raise ValueError(f"n_particles must be >= 2, got {self.n_particles}")
        if self.max_iterations < 0:
            raise ValueError(f"max_iterations must be >= 0, got {self.max_iterations}")
        if not (self.min_vorticity < 0.0 < self.max_vorticity):
            raise ValueError(
                "vorticity limits must straddle zero: "
                f"got min={self.min_vorticity}, max={self.max_vorticity}"
            )
        if not 0 <= self.elimination_threshold <= self.n_particles:
            raise ValueError(
                "elimination_threshold must lie in [0, n_particles], got "
                f"{self.elimination_threshold} with n_particles={self.n_particles}"
            )
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if not self.pull_epsilon > 0.0:
            raise ValueError(f"pull_epsilon must be > 0, got {self.pull_epsilon}")


@dataclass(frozen=True)
class Objective:
    """A box-constrained minimization target.

    ``evaluate`` maps a position vector to a scalar fitness and must be pure:
    deterministic, side-effect free, and safe to call from concurrent runs.
    ``evaluate_batch``, when given, must agree with ``evaluate`` row by row
    and exists only as a vectorization shortcut for the engine.
    """

    name: str
    dimension: int
    bounds: tuple
    evaluate: Callable
    evaluate_batch: Optional[Callable] = None
    known_minimum_value: Optional[float] = None
    known_minimizer: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        object.__setattr__(self, "bounds", bounds)
        if len(bounds) != self.dimension:
            raise ValueError(
                f"bounds must list one (lower, upper) pair per dimension: "
                f"got {len(bounds)} pairs for dimension {self.dimension}"
            )
        for i, (lo, hi) in enumerate(bounds):
            if not lo < hi:
                raise ValueError(f"bounds[{i}]: lower {lo} must be < upper {hi}")
        if self.known_minimizer is not None:
            minimizer = np.asarray(self.known_minimizer, dtype=np.float64)
            object.__setattr__(self, "known_minimizer", minimizer)
            if minimizer.shape != (self.dimension,):
                raise ValueError(
                    f"known_minimizer has shape {minimizer.shape}, "
                    f"expected ({self.dimension},)"
                )
            lo, hi = self.lower, self.upper
            if np.any(minimizer < lo) or np.any(minimizer > hi):
                raise ValueError("known_minimizer lies outside the search bounds")
            if self.known_minimum_value is not None:
                got = float(self.evaluate(minimizer))
                if abs(got - self.known_minimum_value) > 1e-4:
                    raise ValueError(
                        f"objective {self.name!r}: evaluate(known_minimizer) = {got}, "
                        f"expected {self.known_minimum_value} within 1e-4"
                    )

    @property
    def lower(self) -> np.ndarray:
        return np.array([b[0] for b in self.bounds], dtype=np.float64)

    @property
    def upper(self) -> np.ndarray:
        return np.array([b[1] for b in self.bounds], dtype=np.float64)

    def evaluate_rows(self, positions: np.ndarray) -> np.ndarray:
        """Evaluate a (k, dimension) stack of positions, one fitness per row."""
        positions = np.asarray(positions, dtype=np.float64)
        if self.evaluate_batch is not None:
            return np.asarray(self.evaluate_batch(positions), dtype=np.float64)
        return np.array([self.evaluate(row) for row in positions], dtype=np.float64)


@dataclass(eq=False)
class SwarmState:
    """Mutable population state owned by a single optimizer run.

    Columnar layout: row i of ``positions`` plus element i of ``vorticity``,
    ``fitness`` and ``is_vortex`` describe particle i. ``best_*`` is the
    best-so-far record; ``best_index`` is the particle that holds it.
    Fitness values are stored with non-finite evaluations replaced by ``+inf``
    so every comparison (marking, record updates) is well defined.
    """

    positions: np.ndarray
    vorticity: np.ndarray
    fitness: np.ndarray
    is_vortex: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    best_vorticity: float
    best_index: int
    iteration: int = 0
    evaluations: int = 0

    @property
    def n_particles(self) -> int:
        return self.positions.shape[0]

    @property
    def particles(self) -> list:
        """Materialize per-particle snapshots (copies, safe to keep)."""
        return [
            Particle(
                position=self.positions[i].copy(),
                vorticity=float(self.vorticity[i]),
                fitness=float(self.fitness[i]),
                status=ParticleStatus.VORTEX if self.is_vortex[i] else ParticleStatus.NORMAL,
            )
            for i in range(self.n_particles)
        ]
