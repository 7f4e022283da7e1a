"""Basic 3D types and point/sphere predicates.

A point cloud is a float array of shape ``(n, 3)``. Points are identified by
their row index, so duplicates are legal and counted with multiplicity.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_EPS_ON = 1e-12


def as_point(p) -> np.ndarray:
    """Return ``p`` as a finite float vector of length 3."""
    arr = np.asarray(p, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    return arr


def as_cloud(points, allow_empty: bool = False) -> np.ndarray:
    """Validate ``points`` and return them as an ``(n, 3)`` float array.

    Parameters
    ----------
    points : array_like
        Anything convertible to an ``(n, 3)`` array.
    allow_empty : bool
        Accept ``n == 0``. Solver entry points require a non-empty cloud.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 3)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"point cloud must have shape (n, 3), got {arr.shape}")
    if arr.shape[0] == 0 and not allow_empty:
        raise ValueError("empty input")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point cloud contains non-finite coordinates")
    return arr


@dataclass(frozen=True)
class SphereCandidate:
    """A sphere given by its center and a non-negative radius."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        radius = float(self.radius)
        if not np.isfinite(radius) or radius < 0:
            raise ValueError(f"radius must be finite and >= 0, got {radius}")
        object.__setattr__(self, "radius", radius)

    def __eq__(self, other):
        if not isinstance(other, SphereCandidate):
            return NotImplemented
        return self.radius == other.radius and np.array_equal(self.center, other.center)

    def __hash__(self):
        return hash((self.radius, self.center.tobytes()))

    def to_vector(self) -> np.ndarray:
        """Pack as ``(cx, cy, cz, r)``."""
        return np.append(self.center, self.radius)

    @classmethod
    def from_vector(cls, x) -> "SphereCandidate":
        x = np.asarray(x, dtype=float)
        return cls(x[:3], max(float(x[3]), 0.0))


@dataclass(frozen=True)
class Partition:
    """Index split of a cloud into enclosed and excluded points."""

    inside: np.ndarray
    outside: np.ndarray

    @property
    def n(self) -> int:
        return len(self.inside) + len(self.outside)


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned bounding box."""

    min: np.ndarray
    max: np.ndarray

    @property
    def extent(self) -> np.ndarray:
        return self.max - self.min

    @property
    def diagonal(self) -> float:
        return float(np.linalg.norm(self.extent))

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p >= self.min) and np.all(p <= self.max))


def distance(p, q) -> float:
    """Euclidean distance between two points."""
    d = as_point(p) - as_point(q)
    return float(np.sqrt(np.dot(d, d)))


def distances_to(cloud: np.ndarray, center) -> np.ndarray:
    """Distances from every row of ``cloud`` to ``center``."""
    diff = cloud - np.asarray(center, dtype=float)
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def inside_mask(dist: np.ndarray, radius, eps_on: float = DEFAULT_EPS_ON) -> np.ndarray:
    """Membership test shared by every classifier: ``d <= r (1 + eps) + eps``.

    ``radius`` may be a scalar or broadcast against ``dist``.
    """
    return dist <= radius * (1.0 + eps_on) + eps_on


def classify(cloud, sphere: SphereCandidate, eps_on: float = DEFAULT_EPS_ON) -> Partition:
    """Split ``cloud`` into points inside (or on) and outside ``sphere``.

    Points on the surface count as inside. ``eps_on`` is applied both as a
    relative and an absolute slack to absorb rounding.
    """
    if eps_on < 0:
        raise ValueError("eps_on must be >= 0")
    cloud = as_cloud(cloud, allow_empty=True)
    mask = inside_mask(distances_to(cloud, sphere.center), sphere.radius, eps_on)
    return Partition(np.flatnonzero(mask), np.flatnonzero(~mask))


def bounding_box(cloud) -> Aabb:
    cloud = as_cloud(cloud)
    return Aabb(cloud.min(axis=0), cloud.max(axis=0))


def cloud_scale(cloud) -> float:
    """Median distance of the points to their coordinate-wise median.

    Robust to a handful of far points. Falls back to 1 for a cloud that
    collapses onto a single location.
    """
    cloud = as_cloud(cloud)
    s = float(np.median(distances_to(cloud, np.median(cloud, axis=0))))
    return s if s > 0 else 1.0


def core_mask(cloud, factor: float = 4.0) -> np.ndarray:
    """Points within ``factor * cloud_scale`` of the coordinate-wise median.

    Shells, blobs and boxes keep every point; only isolated far points such
    as gross outliers are dropped.
    """
    cloud = as_cloud(cloud)
    d = distances_to(cloud, np.median(cloud, axis=0))
    s = np.median(d)
    if s == 0:
        return np.ones(len(cloud), dtype=bool)
    return d <= factor * s
