"""Fitness of a candidate sphere for the modified enclosing-sphere problem.

    J(C, r) = -lam * |inside| + alpha * r + beta * LMS

where LMS is the mean squared distance from the excluded points to the
sphere surface (zero when nothing is excluded).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DEFAULT_EPS_ON, Partition, SphereCandidate, as_cloud, cloud_scale, distances_to, inside_mask


@dataclass(frozen=True)
class Weights:
    """Coefficients of the three objective terms.

    Attributes
    ----------
    lam : float
        Reward per enclosed point.
    alpha : float
        Cost per unit of radius.
    beta : float
        Cost per unit of LMS error of the excluded points.
    """

    lam: float
    alpha: float
    beta: float

    def __post_init__(self):
        vals = (self.lam, self.alpha, self.beta)
        if not all(np.isfinite(v) and v >= 0 for v in vals):
            raise ValueError(f"weights must be finite and non-negative, got {vals}")
        if not any(v > 0 for v in vals):
            raise ValueError("at least one weight must be positive")

    @classmethod
    def parse(cls, text: str) -> "Weights":
        """Parse ``"LAMBDA,ALPHA,BETA"``."""
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected LAMBDA,ALPHA,BETA, got {text!r}")
        return cls(*(float(p) for p in parts))

    def scaled(self, factor: float) -> "Weights":
        return Weights(self.lam * factor, self.alpha * factor, self.beta * factor)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.lam, self.alpha, self.beta)


# Relative coefficients of the cloud-scaled default weights: a point is worth
# 1, a radius equal to the cloud scale is worth RADIUS_PER_SCALE points, and an
# LMS of scale**2 is worth LMS_PER_SCALE2 points (see ``cloud_weights``).
ENCLOSURE_PER_POINT = 1.0
RADIUS_PER_SCALE = 0.4
LMS_PER_SCALE2 = 0.01


def cloud_weights(
    cloud,
    enclosure: float = ENCLOSURE_PER_POINT,
    radius: float = RADIUS_PER_SCALE,
    lms: float = LMS_PER_SCALE2,
) -> Weights:
    """Default weights made dimensionless against the cloud's size and scale.

    With ``n`` points and scale ``s`` this returns
    ``Weights(enclosure, radius * n / s, lms * n / s**2)``, so the objective
    divided by ``n`` reads ``-enclosure * fraction_inside + radius * r / s +
    lms * LMS / s**2`` regardless of units or point count.
    """
    cloud = as_cloud(cloud)
    n = cloud.shape[0]
    s = cloud_scale(cloud)
    return Weights(enclosure, radius * n / s, lms * n / s**2)


@dataclass(frozen=True)
class ObjectiveBreakdown:
    j: float
    inside_count: int
    radius_term: float
    lms: float
    lms_term: float

    @property
    def enclosure_term(self) -> float:
        return self.j - self.radius_term - self.lms_term


def lms_error(cloud, partition: Partition, sphere: SphereCandidate) -> float:
    """Mean squared surface distance of the points in ``partition.outside``.

    Returns 0 when no point is outside.
    """
    cloud = as_cloud(cloud, allow_empty=True)
    n = cloud.shape[0]
    idx = np.asarray(partition.outside, dtype=int)
    inside = np.asarray(partition.inside, dtype=int)
    if (
        partition.n != n
        or np.any(idx < 0) or np.any(idx >= n)
        or np.any(inside < 0) or np.any(inside >= n)
    ):
        raise ValueError("inconsistent partition")
    if idx.size == 0:
        return 0.0
    gap = distances_to(cloud[idx], sphere.center) - sphere.radius
    return float(np.mean(gap**2))


def evaluate_many(cloud: np.ndarray, positions: np.ndarray, weights: Weights,
                  eps_on: float = DEFAULT_EPS_ON):
    """Vectorised objective over a batch of ``(cx, cy, cz, r)`` rows.

    Returns
    -------
    j, inside_count, lms : ndarray
        One entry per row of ``positions``.
    """
    positions = np.atleast_2d(positions)
    centers = positions[:, :3]
    radii = positions[:, 3:4]
    diff = cloud[None, :, :] - centers[:, None, :]
    dist = np.sqrt(np.einsum("kij,kij->ki", diff, diff))
    inside = inside_mask(dist, radii, eps_on)
    inside_count = inside.sum(axis=1)
    outside_count = dist.shape[1] - inside_count
    sq = np.where(inside, 0.0, (dist - radii) ** 2)
    lms = sq.sum(axis=1) / np.maximum(outside_count, 1)
    j = -weights.lam * inside_count + weights.alpha * radii[:, 0] + weights.beta * lms
    return j, inside_count, lms


def evaluate(cloud, sphere: SphereCandidate, weights: Weights,
             eps_on: float = DEFAULT_EPS_ON) -> ObjectiveBreakdown:
    """Full objective breakdown for one sphere.

    Goes through the same vectorised path as the swarm, so the value matches
    cached particle fitness bit for bit.
    """
    cloud = as_cloud(cloud)
    j, count, lms = evaluate_many(cloud, sphere.to_vector()[None, :], weights, eps_on)
    return ObjectiveBreakdown(
        j=float(j[0]),
        inside_count=int(count[0]),
        radius_term=weights.alpha * sphere.radius,
        lms=float(lms[0]),
        lms_term=weights.beta * float(lms[0]),
    )
