"""Inertia-weight particle swarm over sphere candidates.

Each particle is a 4-vector ``(cx, cy, cz, r)``. The swarm is stored
row-stacked: ``X``, ``V`` and ``P`` are ``(n_particles, 4)`` arrays of
positions, velocities and personal bests, and one step applies

    V <- w V + c1 R1 * (P - X) + c2 R2 * (G - X)
    X <- X + V

with elementwise uniform draws ``R1``, ``R2`` and the global best ``G``
frozen for the duration of the step.

Random numbers come from a Philox generator seeded with ``config.seed`` and
are drawn in a fixed order: at initialisation all positions then all
velocities (particle-major, dimension-minor); at every step, for each
particle in index order, ``r1`` for dimensions 0..3 then ``r2`` for
dimensions 0..3.
"""
from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .geometry import SphereCandidate, as_cloud, bounding_box, core_mask
from .objective import ObjectiveBreakdown, Weights, cloud_weights, evaluate, evaluate_many

DIM = 4
OUTLIER_FACTOR = 4.0


@dataclass(frozen=True)
class SwarmConfig:
    n_particles: int = 100
    w_start: float = 0.9
    w_end: float = 0.4
    c1: float = 1.49445
    c2: float = 1.49445
    max_iters: int = 1000
    stagnation_window: int = 100
    stagnation_tol: float = 1e-8
    v_max_fraction: float = 0.2
    seed: int = 0
    scalar_random: bool = False

    def validate(self) -> None:
        """Raise ``ValueError`` describing the first broken constraint."""
        problems = []
        if int(self.n_particles) < 2:
            problems.append(f"n_particles must be >= 2 (got {self.n_particles})")
        if not 0 < self.w_end <= self.w_start < 1:
            problems.append(f"need 0 < w_end <= w_start < 1 (got w_start={self.w_start}, w_end={self.w_end})")
        if not (self.c1 > 0 and self.c2 > 0):
            problems.append(f"c1 and c2 must be > 0 (got c1={self.c1}, c2={self.c2})")
        if int(self.max_iters) < 1:
            problems.append(f"max_iters must be >= 1 (got {self.max_iters})")
        if int(self.stagnation_window) < 1:
            problems.append(f"stagnation_window must be >= 1 (got {self.stagnation_window})")
        if not self.stagnation_tol >= 0:
            problems.append(f"stagnation_tol must be >= 0 (got {self.stagnation_tol})")
        if not 0 < self.v_max_fraction <= 1:
            problems.append(f"v_max_fraction must be in (0, 1] (got {self.v_max_fraction})")
        if not 0 <= int(self.seed) < 2**64:
            problems.append(f"seed must be an unsigned 64-bit integer (got {self.seed})")
        if problems:
            raise ValueError("invalid swarm config: " + "; ".join(problems))


@dataclass(frozen=True)
class SearchBounds:
    """Box limits on ``(cx, cy, cz, r)`` and symmetric velocity limits."""

    low: np.ndarray
    high: np.ndarray
    v_max: np.ndarray

    @property
    def r_max(self) -> float:
        return float(self.high[3])


def search_bounds(cloud, v_max_fraction: float = 0.2,
                  outlier_factor: float | None = OUTLIER_FACTOR) -> SearchBounds:
    """Search space derived from the cloud's bounding box.

    Centers may range over the box grown by half its diagonal on every side,
    radii over ``[0, diagonal]``. Velocity limits are ``v_max_fraction``
    times the box extent per center axis and times the diagonal for the
    radius. An axis with zero extent borrows the diagonal; a cloud that
    collapses onto one location uses a unit scale instead.

    The box is taken over ``core_mask(cloud, outlier_factor)`` so that a few
    remote points cannot inflate the search space by orders of magnitude;
    pass ``outlier_factor=None`` to use every point.
    """
    cloud = as_cloud(cloud)
    if outlier_factor is not None:
        cloud = cloud[core_mask(cloud, outlier_factor)]
    box = bounding_box(cloud)
    diag = box.diagonal
    if diag > 0:
        low = np.append(box.min - diag / 2, 0.0)
        high = np.append(box.max + diag / 2, diag)
        extent = np.where(box.extent > 0, box.extent, diag)
        span = np.append(extent, diag)
    else:
        low = np.append(box.min - 0.5, 0.0)
        high = np.append(box.max + 0.5, 1.0)
        span = np.ones(DIM)
    return SearchBounds(low, high, v_max_fraction * span)


@dataclass(frozen=True)
class ParticleState:
    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    pbest_fitness: float


@dataclass(frozen=True)
class SwarmState:
    X: np.ndarray
    V: np.ndarray
    P: np.ndarray
    pbest_fitness: np.ndarray
    gbest_position: np.ndarray
    gbest_fitness: float
    iteration: int = 0

    @property
    def n_particles(self) -> int:
        return len(self.X)

    @property
    def particles(self) -> list[ParticleState]:
        return [
            ParticleState(self.X[i], self.V[i], self.P[i], float(self.pbest_fitness[i]))
            for i in range(len(self.X))
        ]


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator used for every swarm draw."""
    return np.random.Generator(np.random.Philox(int(seed)))


def init_swarm(config: SwarmConfig, bounds: SearchBounds, cloud, weights: Weights,
               rng=None) -> SwarmState:
    """Scatter particles uniformly in the bounds and evaluate them.

    Personal bests start at the initial positions; the global best is the
    first particle with the lowest fitness.
    """
    cloud = as_cloud(cloud)
    if rng is None:
        rng = make_rng(config.seed)
    n = int(config.n_particles)
    X = bounds.low + (bounds.high - bounds.low) * rng.random((n, DIM))
    V = bounds.v_max * (2.0 * rng.random((n, DIM)) - 1.0)
    fitness, _, _ = evaluate_many(cloud, X, weights)
    best = int(np.argmin(fitness))
    return SwarmState(X, V, X.copy(), fitness, X[best].copy(), float(fitness[best]), 0)


def inertia_at(t: int, config: SwarmConfig) -> float:
    """Inertia weight decreasing linearly from ``w_start`` at 0 to ``w_end`` at ``max_iters``."""
    return config.w_start + (config.w_end - config.w_start) * t / config.max_iters


def draw_coefficients(rng, n: int, scalar: bool = False):
    """Draw ``(r1, r2)`` for one step, each shaped to broadcast against ``(n, 4)``."""
    if scalar:
        u = rng.random((n, 2))
        return u[:, 0:1], u[:, 1:2]
    u = rng.random((n, 2, DIM))
    return u[:, 0, :], u[:, 1, :]


def step(state: SwarmState, cloud, weights: Weights, config: SwarmConfig, rng,
         bounds: SearchBounds | None = None) -> SwarmState:
    """Advance the swarm by one synchronous iteration.

    ``rng`` only needs a ``random(shape)`` method, so tests can substitute
    fixed draws. Personal and global bests are replaced only on strict
    improvement; the global best used in the velocity update is the one from
    the start of the step.
    """
    cloud = as_cloud(cloud)
    if bounds is None:
        bounds = search_bounds(cloud, config.v_max_fraction)
    n = state.n_particles
    w = inertia_at(state.iteration, config)
    r1, r2 = draw_coefficients(rng, n, config.scalar_random)

    g = state.gbest_position
    V = w * state.V + config.c1 * r1 * (state.P - state.X) + config.c2 * r2 * (g - state.X)
    V = np.clip(V, -bounds.v_max, bounds.v_max)
    X = np.clip(state.X + V, bounds.low, bounds.high)

    fitness, _, _ = evaluate_many(cloud, X, weights)
    improved = fitness < state.pbest_fitness
    P = np.where(improved[:, None], X, state.P)
    pbest_fitness = np.where(improved, fitness, state.pbest_fitness)

    gbest_position, gbest_fitness = state.gbest_position, state.gbest_fitness
    best = int(np.argmin(pbest_fitness))
    if pbest_fitness[best] < gbest_fitness:
        gbest_position, gbest_fitness = P[best].copy(), float(pbest_fitness[best])
    return SwarmState(X, V, P, pbest_fitness, gbest_position, gbest_fitness, state.iteration + 1)


def convergence_gate(config: SwarmConfig) -> bool:
    """Check ``0 < w < 1`` and ``0 < c1 + c2 < 2 / (1 - w)`` at both ends of the inertia schedule."""
    c = config.c1 + config.c2
    for w in (config.w_start, config.w_end):
        if not (0 < w < 1 and 0 < c < 2.0 / (1.0 - w)):
            return False
    return True


def lyapunov(state: SwarmState) -> float:
    """Mean squared distance of the particles to the global best."""
    diff = state.X - state.gbest_position
    return float(np.mean(np.einsum("ij,ij->i", diff, diff)))


@dataclass(frozen=True)
class TraceRecord:
    iter: int
    gbest_j: float
    inside_count: int
    radius: float
    lms: float
    lyapunov: float


TRACE_HEADER = "iter,gbest_j,inside_count,radius,lms,lyapunov"


@dataclass(frozen=True)
class SolveResult:
    sphere: SphereCandidate
    fitness: ObjectiveBreakdown
    iterations_run: int
    trace: list[TraceRecord]
    terminated_by: str
    weights: Weights
    config: SwarmConfig
    n_points: int
    bounds: SearchBounds = field(repr=False, default=None)

    def report(self) -> dict:
        """JSON-ready summary carrying everything needed to rerun the solve."""
        return {
            "center": [float(v) for v in self.sphere.center],
            "radius": self.sphere.radius,
            "j": self.fitness.j,
            "inside_count": self.fitness.inside_count,
            "outside_count": self.n_points - self.fitness.inside_count,
            "iterations": self.iterations_run,
            "terminated_by": self.terminated_by,
            "seed": int(self.config.seed),
            "weights": {"lambda": self.weights.lam, "alpha": self.weights.alpha, "beta": self.weights.beta},
            "config": asdict(self.config),
        }

    def trace_csv(self) -> str:
        lines = [TRACE_HEADER]
        for rec in self.trace:
            lines.append(
                f"{rec.iter},{rec.gbest_j!r},{rec.inside_count},{rec.radius!r},{rec.lms!r},{rec.lyapunov!r}"
            )
        return "\n".join(lines) + "\n"


def solve(cloud, weights: Weights | None = None, config: SwarmConfig | None = None) -> SolveResult:
    """Minimise the objective over sphere candidates with a particle swarm.

    Runs until ``max_iters`` steps or until the best objective has improved
    by less than ``stagnation_tol`` over the last ``stagnation_window``
    steps. When ``weights`` is omitted, ``cloud_weights(cloud)`` is used.

    The result is a pure function of ``(cloud, weights, config)``.
    """
    if config is None:
        config = SwarmConfig()
    config.validate()
    cloud = as_cloud(cloud)
    if weights is None:
        weights = cloud_weights(cloud)
    if not convergence_gate(config):
        warnings.warn(
            "swarm coefficients violate the boundedness condition "
            "0 < w < 1, 0 < c1 + c2 < 2/(1-w); the swarm may diverge",
            RuntimeWarning,
            stacklevel=2,
        )

    bounds = search_bounds(cloud, config.v_max_fraction)
    rng = make_rng(config.seed)
    state = init_swarm(config, bounds, cloud, weights, rng)

    def gbest_record(st: SwarmState, bd: ObjectiveBreakdown) -> TraceRecord:
        return TraceRecord(st.iteration, st.gbest_fitness, bd.inside_count,
                           float(st.gbest_position[3]), bd.lms, lyapunov(st))

    def breakdown(st: SwarmState) -> ObjectiveBreakdown:
        return evaluate(cloud, SphereCandidate.from_vector(st.gbest_position), weights)

    current = breakdown(state)
    trace = [gbest_record(state, current)]
    terminated_by = "max_iters"
    while state.iteration < config.max_iters:
        previous = state.gbest_fitness
        state = step(state, cloud, weights, config, rng, bounds)
        if state.gbest_fitness < previous:
            current = breakdown(state)
        trace.append(gbest_record(state, current))
        t = state.iteration
        if t >= config.stagnation_window and trace[t - config.stagnation_window].gbest_j - state.gbest_fitness < config.stagnation_tol:
            terminated_by = "stagnation"
            break

    return SolveResult(
        sphere=SphereCandidate.from_vector(state.gbest_position),
        fitness=current,
        iterations_run=state.iteration,
        trace=trace,
        terminated_by=terminated_by,
        weights=weights,
        config=config,
        n_points=len(cloud),
        bounds=bounds,
    )
