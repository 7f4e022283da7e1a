"""Exact smallest enclosing sphere.

``welzl_ses`` is the move-to-front variant of Welzl's randomized algorithm.
``brute_force_ses`` enumerates every support set of up to four points with an
independent, vectorised circumsphere routine and is meant as a check on
small inputs only.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import SphereCandidate, as_cloud, distances_to

DEGENERACY_TOL = 1e-10
OUTSIDE_TOL = 1e-10
ENCLOSURE_TOL = 1e-9
BRUTE_FORCE_LIMIT = 60


class DegenerateSupportError(ValueError):
    """Support points admit no unique circumsphere (collinear, coplanar, repeated)."""


def _circumsphere(pts: np.ndarray) -> tuple[np.ndarray, float]:
    k = len(pts)
    if k == 0:
        return np.zeros(3), 0.0
    if k == 1:
        return pts[0].copy(), 0.0
    if k == 2:
        return 0.5 * (pts[0] + pts[1]), float(np.linalg.norm(pts[1] - pts[0])) / 2
    if k == 3:
        a = pts[0] - pts[2]
        b = pts[1] - pts[2]
        axb = np.cross(a, b)
        na, nb, n2 = np.dot(a, a), np.dot(b, b), np.dot(axb, axb)
        # |a x b| = |a||b| sin(angle)
        if not n2 > DEGENERACY_TOL**2 * na * nb:
            raise DegenerateSupportError("collinear or repeated triple")
        offset = np.cross(na * b - nb * a, axb) / (2.0 * n2)
        return pts[2] + offset, float(np.linalg.norm(offset))
    if k == 4:
        # Equidistance from pts[0] and pts[i]: 2 (p_i - p_0) . x = |p_i - p_0|^2
        rows = pts[1:] - pts[0]
        a = 2.0 * rows
        det = np.linalg.det(a)
        if not abs(det) > DEGENERACY_TOL * np.prod(np.linalg.norm(a, axis=1)):
            raise DegenerateSupportError("coplanar or repeated quadruple")
        offset = np.linalg.solve(a, np.einsum("ij,ij->i", rows, rows))
        return pts[0] + offset, float(np.linalg.norm(offset))
    raise ValueError(f"support set has {k} points; at most 4 allowed")


def circumsphere(support) -> SphereCandidate:
    """Smallest sphere having every support point on its boundary.

    No points give the empty ball at the origin, one point a zero-radius
    ball, two the diametral sphere, three the sphere through the triangle's
    circumcircle, four the tetrahedron's circumsphere.

    Raises
    ------
    DegenerateSupportError
        For collinear triples and coplanar quadruples.
    """
    pts = np.asarray(support, dtype=float).reshape(-1, 3)
    center, radius = _circumsphere(pts)
    return SphereCandidate(center, radius)


def _support_ball(pts: np.ndarray):
    """Ball through a support list, reducing the list when it is degenerate.

    A degenerate list is replaced by its smallest non-degenerate subset that
    keeps the newest point (the last row) and whose sphere covers the whole
    list; four cocircular points, for instance, reduce to three of them.
    """
    try:
        c, r = _circumsphere(pts)
        return c, r, pts
    except DegenerateSupportError:
        pass
    k = len(pts)
    best = None
    for size in range(k - 1, 0, -1):
        for combo in combinations(range(k - 1), size - 1):
            sub = pts[list(combo) + [k - 1]]
            try:
                c, r = _circumsphere(sub)
            except DegenerateSupportError:
                continue
            if np.all(distances_to(pts, c) <= r * (1.0 + OUTSIDE_TOL)):
                if best is None or r < best[1]:
                    best = (c, r, sub)
    if best is None:
        c = pts.mean(axis=0)
        best = (c, float(distances_to(pts, c).max()), pts[-1:])
    return best


def _mtf(order: list, pts: np.ndarray, end: int, support: np.ndarray):
    center, radius, base = _support_ball(support)
    if len(base) == 4:
        return center, radius, base
    current = base
    for i in range(end):
        d = pts[order[i]] - center
        if np.sqrt(np.dot(d, d)) > radius * (1.0 + OUTSIDE_TOL):
            center, radius, current = _mtf(order, pts, i, np.vstack([base, pts[order[i]]]))
            order.insert(0, order.pop(i))
    return center, radius, current


@dataclass(frozen=True)
class SesResult:
    """Enclosing sphere plus the boundary points that determine it.

    Unpacks as ``sphere, support = welzl_ses(...)``.
    """

    sphere: SphereCandidate
    support: np.ndarray

    def __iter__(self):
        yield self.sphere
        yield self.support


def welzl_ses(cloud, seed: int = 0) -> SesResult:
    """Smallest sphere enclosing every point of ``cloud``.

    The input order is shuffled with ``seed`` before the move-to-front
    recursion; the result does not depend on it beyond rounding. A final
    validation pass restarts with any violating points moved to the front,
    and as a last resort grows the radius to cover them.
    """
    pts = as_cloud(cloud)
    rng = np.random.default_rng(seed)
    order = [int(i) for i in rng.permutation(len(pts))]
    empty = np.empty((0, 3))
    center, radius, support = _mtf(order, pts, len(order), empty)
    for _ in range(3):
        d = distances_to(pts, center)
        bad = np.flatnonzero(d > radius * (1.0 + ENCLOSURE_TOL))
        if bad.size == 0:
            break
        bad_set = set(bad.tolist())
        order = [int(i) for i in bad] + [i for i in order if i not in bad_set]
        center, radius, support = _mtf(order, pts, len(order), empty)
    else:
        radius = max(radius, float(distances_to(pts, center).max()))
    return SesResult(SphereCandidate(center, radius), np.array(support, dtype=float).reshape(-1, 3))


def _batch_circumspheres(pts: np.ndarray, combos: np.ndarray):
    """Circumspheres of many point subsets of equal size; degenerate rows get NaN."""
    k = combos.shape[1]
    sel = pts[combos]
    if k == 1:
        return sel[:, 0, :], np.zeros(len(combos))
    if k == 2:
        center = sel.mean(axis=1)
        return center, np.linalg.norm(sel[:, 0] - sel[:, 1], axis=1) / 2
    if k == 3:
        # Solve in the triangle's plane with the 2x2 Gram system.
        u = sel[:, 1] - sel[:, 0]
        v = sel[:, 2] - sel[:, 0]
        uu = np.einsum("ij,ij->i", u, u)
        vv = np.einsum("ij,ij->i", v, v)
        uv = np.einsum("ij,ij->i", u, v)
        det = uu * vv - uv**2
        ok = det > (DEGENERACY_TOL**2) * uu * vv
        det = np.where(ok, det, 1.0)
        s = 0.5 * vv * (uu - uv) / det
        t = 0.5 * uu * (vv - uv) / det
        offset = s[:, None] * u + t[:, None] * v
        center = sel[:, 0] + offset
        radius = np.linalg.norm(offset, axis=1)
        radius[~ok] = np.nan
        return center, radius
    a = 2.0 * (sel[:, 1:] - sel[:, :1])
    b = 0.25 * np.einsum("kij,kij->ki", a, a)
    det = np.linalg.det(a)
    ok = np.abs(det) > DEGENERACY_TOL * np.prod(np.linalg.norm(a, axis=2), axis=1)
    a = np.where(ok[:, None, None], a, np.eye(3))
    offset = np.linalg.solve(a, b[..., None])[..., 0]
    center = sel[:, 0] + offset
    radius = np.linalg.norm(offset, axis=1)
    radius[~ok] = np.nan
    return center, radius


def brute_force_ses(cloud) -> SphereCandidate:
    """Exact smallest enclosing sphere by exhaustive support-set search.

    Every subset of one to four points is turned into its circumsphere and
    the smallest one that contains all points (within ``ENCLOSURE_TOL``
    relative) wins. Cost grows like ``n**4``, so inputs are capped at
    ``BRUTE_FORCE_LIMIT`` points.
    """
    pts = as_cloud(cloud)
    n = len(pts)
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"oracle size limit: {n} > {BRUTE_FORCE_LIMIT} points")
    diff = pts[:, None, :] - pts[None, :, :]
    half_diameter = 0.5 * np.sqrt(np.einsum("ijk,ijk->ij", diff, diff).max())
    scale = max(half_diameter, np.abs(pts).max(), 1e-300)

    centers, radii = [], []
    for k in range(1, min(4, n) + 1):
        combos = np.array(list(combinations(range(n), k)), dtype=np.intp)
        c, r = _batch_circumspheres(pts, combos)
        keep = np.isfinite(r) & (r >= half_diameter * (1 - 1e-9))
        centers.append(c[keep])
        radii.append(r[keep])
    centers = np.concatenate(centers)
    radii = np.concatenate(radii)
    order = np.argsort(radii, kind="stable")
    centers, radii = centers[order], radii[order]

    chunk = 4096
    for start in range(0, len(radii), chunk):
        c = centers[start:start + chunk]
        r = radii[start:start + chunk]
        d = np.sqrt(np.einsum("kij,kij->ki", pts[None] - c[:, None], pts[None] - c[:, None]))
        ok = np.all(d <= r[:, None] * (1 + ENCLOSURE_TOL) + 1e-15 * scale, axis=1)
        hit = np.flatnonzero(ok)
        if hit.size:
            return SphereCandidate(c[hit[0]], float(r[hit[0]]))
    raise RuntimeError("no enclosing support sphere found")


@dataclass(frozen=True)
class ValidationReport:
    max_violation: float
    enclosed_fraction: float
    boundary_count: int
    n: int


def validate_sphere(cloud, sphere: SphereCandidate, rel_tol: float = ENCLOSURE_TOL) -> ValidationReport:
    """Check a sphere against a cloud after the fact.

    ``max_violation`` is ``max(|p - C| - r)``; positive means some point
    sticks out. A point is enclosed when ``|p - C| <= r (1 + rel_tol)`` and on
    the boundary when ``||p - C| - r| <= rel_tol * r``.
    """
    pts = as_cloud(cloud)
    d = distances_to(pts, sphere.center)
    r = sphere.radius
    enclosed = d <= r * (1.0 + rel_tol)
    boundary = np.abs(d - r) <= rel_tol * r
    return ValidationReport(
        max_violation=float((d - r).max()),
        enclosed_fraction=float(enclosed.mean()),
        boundary_count=int(boundary.sum()),
        n=len(pts),
    )
