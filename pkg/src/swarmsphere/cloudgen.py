"""Synthetic noisy spherical shells."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import as_point

DEFAULT_RADIUS = 7.0
DEFAULT_N = 634
DEFAULT_SIGMA_FRACTION = 0.05


@dataclass(frozen=True)
class ShellSpec:
    """Parameters of one noisy shell.

    ``sigma`` is the per-coordinate standard deviation of the isotropic
    Gaussian perturbation, in cloud units.
    """

    center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    radius: float = DEFAULT_RADIUS
    n_points: int = DEFAULT_N
    sigma: float = DEFAULT_SIGMA_FRACTION * DEFAULT_RADIUS
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if int(self.n_points) < 1:
            raise ValueError(f"n_points must be >= 1, got {self.n_points}")


def generate_shell(spec: ShellSpec) -> np.ndarray:
    """Points spread uniformly over a sphere surface, plus Gaussian noise.

    Directions are normalised standard-normal 3-vectors. The same ``spec``
    always yields the same array.
    """
    rng = np.random.default_rng(spec.seed)
    n = int(spec.n_points)
    direction = rng.standard_normal((n, 3))
    norm = np.linalg.norm(direction, axis=1, keepdims=True)
    # A zero draw has probability 0 but would divide by zero.
    direction = np.divide(direction, norm, out=np.tile([1.0, 0.0, 0.0], (n, 1)), where=norm > 0)
    noise = rng.normal(0.0, spec.sigma, size=(n, 3)) if spec.sigma > 0 else 0.0
    return spec.center + spec.radius * direction + noise


def second_shell_seed(seed: int) -> int:
    """Seed of the shifted shell in a two-shell cloud, derived from ``seed``."""
    return int(np.random.SeedSequence([int(seed), 1]).generate_state(1, np.uint64)[0])


def generate_two_sphere(r_a: float = DEFAULT_RADIUS, n_per_shell: int = DEFAULT_N,
                        sigma: float | None = None, seed: int = 0) -> np.ndarray:
    """Two equal shells, the second shifted by ``(r_a/2, r_a/2, r_a/2)``.

    The first half of the result is exactly ``generate_shell`` with ``seed``
    centred at the origin; the second half uses ``second_shell_seed(seed)``.
    """
    if not r_a > 0:
        raise ValueError(f"r_a must be > 0, got {r_a}")
    if sigma is None:
        sigma = DEFAULT_SIGMA_FRACTION * r_a
    a = ShellSpec(np.zeros(3), r_a, n_per_shell, sigma, seed)
    b = ShellSpec(np.full(3, r_a / 2), r_a, n_per_shell, sigma, second_shell_seed(seed))
    return np.concatenate([generate_shell(a), generate_shell(b)])
