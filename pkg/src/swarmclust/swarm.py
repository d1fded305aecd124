"""Population-based minimizers over bounded real vectors: standard PSO with
a linearly decreasing inertia weight, and quantum-behaved PSO (QPSO) with a
contracting step scale.  Both use the fully connected (global-best)
topology and a synchronous update sweep.

Random draws are made per dimension in a fixed particle-major order during
the update sweep, so replaying a seed reproduces a run exactly however the
cost evaluations are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .core import RngSeed

Variant = str  # "pso" | "qpso"


@dataclass
class Particle:
    """One candidate solution with its personal-best memory."""

    position: np.ndarray
    pbest_position: np.ndarray
    pbest_cost: float
    current_cost: float
    velocity: np.ndarray | None = None  # PSO only


@dataclass(frozen=True)
class SwarmConfig:
    swarm_size: int = 30
    max_iter: int = 200
    c1: float = 2.05
    c2: float = 2.05
    omega_start: float = 0.9
    omega_end: float = 0.1
    beta_start: float = 1.0
    beta_end: float = 0.1
    bounds: tuple[np.ndarray, np.ndarray] | None = None
    stagnation_window: int = 20
    stagnation_tol: float = 1e-8

    def __post_init__(self):
        if self.swarm_size < 2:
            raise ValueError(f"swarm_size must be >= 2, got {self.swarm_size}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")

    def with_bounds(self, lower: np.ndarray, upper: np.ndarray) -> "SwarmConfig":
        return replace(self, bounds=(np.asarray(lower, dtype=float), np.asarray(upper, dtype=float)))


@dataclass(frozen=True)
class OptResult:
    gbest_position: np.ndarray
    gbest_cost: float
    cost_trace: np.ndarray
    iterations_run: int
    terminated_by: str  # "max_iter" | "stagnation"


def omega_schedule(t: int, max_iter: int, start: float = 0.9, end: float = 0.1) -> float:
    """Inertia weight decreased linearly from ``start`` to ``end``."""
    if max_iter < 1 or not 0 <= t <= max_iter:
        raise ValueError(f"need 0 <= t <= max_iter with max_iter >= 1, got t={t}, max_iter={max_iter}")
    return start + (end - start) * t / max_iter


def beta_schedule(t: int, max_iter: int, start: float = 1.0, end: float = 0.1) -> float:
    """Contraction-expansion coefficient annealed over the iteration budget."""
    if max_iter < 1 or not 0 <= t <= max_iter:
        raise ValueError(f"need 0 <= t <= max_iter with max_iter >= 1, got t={t}, max_iter={max_iter}")
    return (start - end) * (max_iter - t) / max_iter + end


def pso_velocity_update(
    p: Particle,
    gbest: np.ndarray,
    omega: float,
    c1: float,
    c2: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Inertia plus cognitive and social pulls, with fresh per-dimension
    uniform draws r1 and r2."""
    d = p.position.size
    r1 = rng.uniform(size=d)
    r2 = rng.uniform(size=d)
    return omega * p.velocity + c1 * r1 * (p.pbest_position - p.position) + c2 * r2 * (gbest - p.position)


def pso_position_update(x: np.ndarray, v: np.ndarray, bounds: tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    """Step along the velocity, clamped to the search box."""
    lo, hi = bounds
    return np.clip(x + v, lo, hi)


def greedy_pbest_update(p: Particle, new_position: np.ndarray, new_cost: float) -> Particle:
    """Replace the personal best only on a strict cost improvement."""
    if new_cost < p.pbest_cost:
        p.pbest_position = np.array(new_position, dtype=float)
        p.pbest_cost = float(new_cost)
    return p


def compute_mbest(particles: list[Particle]) -> np.ndarray:
    """Per-dimension mean of all personal-best positions."""
    if not particles:
        raise ValueError("mbest of an empty swarm is undefined")
    return np.mean([p.pbest_position for p in particles], axis=0)


def local_attractor(pbest: np.ndarray, gbest: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Random per-dimension convex combination of pbest and gbest."""
    theta = rng.uniform(size=np.asarray(pbest).size)
    return theta * pbest + (1.0 - theta) * gbest


def qpso_position_update(
    x: np.ndarray,
    phi: np.ndarray,
    mbest: np.ndarray,
    beta: float,
    rng: np.random.Generator,
    bounds: tuple[np.ndarray, np.ndarray],
) -> np.ndarray:
    """Jump to the attractor plus a contracting spread term.

    The spread is beta * |mbest - x| * ln(1/q) with q uniform on (0, 1];
    each dimension's sign flips with probability one half.
    """
    d = np.asarray(x).size
    q = 1.0 - rng.uniform(size=d)  # (0, 1]: ln(1/q) stays finite
    k = rng.uniform(size=d)
    sign = np.where(k >= 0.5, 1.0, -1.0)
    new = phi + sign * beta * np.abs(mbest - x) * np.log(1.0 / q)
    lo, hi = bounds
    return np.clip(new, lo, hi)


def optimize(
    cost_fn: Callable[[np.ndarray], float],
    config: SwarmConfig,
    variant: Variant,
    rng: RngSeed | np.random.Generator,
) -> OptResult:
    """Run the full PSO or QPSO loop over the configured box.

    All particle positions stay inside the bounds; the global-best trace is
    non-increasing.  Terminates at ``max_iter`` sweeps, or earlier once the
    global best has improved by less than ``stagnation_tol`` for
    ``stagnation_window`` consecutive sweeps.
    """
    if variant not in ("pso", "qpso"):
        raise ValueError(f"unknown variant {variant!r}")
    if config.bounds is None:
        raise ValueError("config.bounds must be set; use SwarmConfig.with_bounds")
    lo = np.asarray(config.bounds[0], dtype=float)
    hi = np.asarray(config.bounds[1], dtype=float)
    if lo.shape != hi.shape or lo.ndim != 1:
        raise ValueError("bounds must be a pair of equal-length vectors")
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi)) and np.all(lo <= hi)):
        raise ValueError("bounds must be finite with min <= max")
    gen = rng.generator() if isinstance(rng, RngSeed) else rng
    dim = lo.size

    positions = gen.uniform(lo, hi, size=(config.swarm_size, dim))
    particles = []
    for x in positions:
        cost = _checked_cost(cost_fn, x)
        particles.append(
            Particle(
                position=x.copy(),
                pbest_position=x.copy(),
                pbest_cost=cost,
                current_cost=cost,
                velocity=np.zeros(dim) if variant == "pso" else None,
            )
        )
    best = min(range(len(particles)), key=lambda i: particles[i].pbest_cost)
    gbest = particles[best].pbest_position.copy()
    gbest_cost = particles[best].pbest_cost

    trace = [gbest_cost]
    streak = 0
    terminated_by = "max_iter"
    iterations = 0
    for t in range(config.max_iter):
        if variant == "pso":
            omega = omega_schedule(t, config.max_iter, config.omega_start, config.omega_end)
            for p in particles:
                p.velocity = pso_velocity_update(p, gbest, omega, config.c1, config.c2, gen)
                p.position = pso_position_update(p.position, p.velocity, (lo, hi))
        else:
            beta = beta_schedule(t, config.max_iter, config.beta_start, config.beta_end)
            mbest = compute_mbest(particles)
            for p in particles:
                phi = local_attractor(p.pbest_position, gbest, gen)
                p.position = qpso_position_update(p.position, phi, mbest, beta, gen, (lo, hi))

        for p in particles:
            p.current_cost = _checked_cost(cost_fn, p.position)
            greedy_pbest_update(p, p.position, p.current_cost)
        best = min(range(len(particles)), key=lambda i: particles[i].pbest_cost)
        if particles[best].pbest_cost < gbest_cost:
            gbest_cost = particles[best].pbest_cost
            gbest = particles[best].pbest_position.copy()
        trace.append(gbest_cost)
        iterations = t + 1

        if trace[-2] - trace[-1] < config.stagnation_tol:
            streak += 1
        else:
            streak = 0
        if streak >= config.stagnation_window:
            terminated_by = "stagnation"
            break

    return OptResult(
        gbest_position=gbest,
        gbest_cost=gbest_cost,
        cost_trace=np.asarray(trace),
        iterations_run=iterations,
        terminated_by=terminated_by,
    )


def _checked_cost(cost_fn: Callable[[np.ndarray], float], x: np.ndarray) -> float:
    cost = float(cost_fn(x))
    if not np.isfinite(cost):
        raise ValueError(f"cost function returned non-finite value {cost} at position {x!r}")
    return cost
