"""Run both solvers on one cloud and collect the comparison quantities."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import SphereCandidate, as_cloud, classify
from .objective import Weights
from .pso import SolveResult, SwarmConfig, solve
from .welzl import brute_force_ses, validate_sphere, welzl_ses


def _floats(v) -> list[float]:
    return [float(x) for x in np.asarray(v).ravel()]


def welzl_summary(cloud, seed: int = 0) -> dict:
    """Exact enclosing sphere plus its validation numbers, ready for JSON."""
    cloud = as_cloud(cloud)
    sphere, support = welzl_ses(cloud, seed)
    check = validate_sphere(cloud, sphere)
    return {
        "center": _floats(sphere.center),
        "radius": sphere.radius,
        "support": [_floats(p) for p in support],
        "max_violation": check.max_violation,
        "enclosed_fraction": check.enclosed_fraction,
        "seed": int(seed),
    }


def brute_summary(cloud) -> dict:
    cloud = as_cloud(cloud)
    sphere = brute_force_ses(cloud)
    check = validate_sphere(cloud, sphere)
    return {
        "center": _floats(sphere.center),
        "radius": sphere.radius,
        "max_violation": check.max_violation,
        "enclosed_fraction": check.enclosed_fraction,
    }


def trace_columns(result: SolveResult) -> dict:
    """The PSO trace as a column-oriented mapping for plotting tools."""
    names = ("iter", "gbest_j", "inside_count", "radius", "lms", "lyapunov")
    return {name: [getattr(rec, name) for rec in result.trace] for name in names}


@dataclass
class ComparisonReport:
    """Side-by-side outcome of the swarm solver and the exact baseline.

    Attributes
    ----------
    pso : dict
        The swarm solver's report, including weights, config and seed.
    welzl : dict
        Exact sphere, support points and validation numbers.
    pso_inside_fraction, welzl_inside_fraction : float
        Share of the cloud counted inside each sphere.
    radius_ratio : float
        ``r_pso / r_welzl``.
    cloud_meta : dict
        Where the cloud came from: generation parameters or file details.
    """

    pso: dict
    welzl: dict
    pso_inside_fraction: float
    welzl_inside_fraction: float
    radius_ratio: float
    cloud_meta: dict = field(default_factory=dict)
    pso_result: SolveResult | None = field(default=None, repr=False, compare=False)

    def to_dict(self, include_trace: bool = True) -> dict:
        out = {
            "cloud_meta": self.cloud_meta,
            "pso": self.pso,
            "welzl": self.welzl,
            "pso_inside_fraction": self.pso_inside_fraction,
            "welzl_inside_fraction": self.welzl_inside_fraction,
            "radius_ratio": self.radius_ratio,
        }
        if include_trace and self.pso_result is not None:
            out["pso_trace"] = trace_columns(self.pso_result)
        return out

    def table(self) -> str:
        n = self.pso["inside_count"] + self.pso["outside_count"]
        welzl_inside = round(self.welzl_inside_fraction * n)
        rows = [
            ("", "PSO", "Welzl"),
            ("center x", self.pso["center"][0], self.welzl["center"][0]),
            ("center y", self.pso["center"][1], self.welzl["center"][1]),
            ("center z", self.pso["center"][2], self.welzl["center"][2]),
            ("radius", self.pso["radius"], self.welzl["radius"]),
            ("inside", f"{self.pso['inside_count']} / {n}", f"{welzl_inside} / {n}"),
            ("inside fraction", self.pso_inside_fraction, self.welzl_inside_fraction),
        ]
        lines = []
        for label, a, b in rows:
            a = f"{a:.12g}" if isinstance(a, float) else str(a)
            b = f"{b:.12g}" if isinstance(b, float) else str(b)
            lines.append(f"{label:<16}{a:>22}{b:>22}")
        lines.append(f"{'radius ratio':<16}{self.radius_ratio:>22.12g}")
        return "\n".join(lines)


def compare(cloud, weights: Weights | None = None, config: SwarmConfig | None = None,
            cloud_meta: dict | None = None, welzl_seed: int | None = None) -> ComparisonReport:
    """Solve one cloud with both methods.

    Both solvers receive the very same array. The Welzl permutation seed
    defaults to the swarm seed so a single number reproduces the whole report.
    """
    cloud = as_cloud(cloud)
    config = config or SwarmConfig()
    result = solve(cloud, weights, config)
    wz = welzl_summary(cloud, config.seed if welzl_seed is None else welzl_seed)
    n = len(cloud)
    wz_inside = len(classify(cloud, SphereCandidate(np.array(wz["center"]), wz["radius"])).inside)
    return ComparisonReport(
        pso=result.report(),
        welzl=wz,
        pso_inside_fraction=result.fitness.inside_count / n,
        welzl_inside_fraction=wz_inside / n,
        radius_ratio=result.sphere.radius / wz["radius"] if wz["radius"] > 0 else float("inf"),
        cloud_meta=dict(cloud_meta or {}, n_points=n),
        pso_result=result,
    )
