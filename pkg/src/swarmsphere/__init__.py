"""Fit spheres to 3D point clouds with a particle swarm and compare them
against the exact smallest enclosing sphere."""

from .cloudgen import ShellSpec, generate_shell, generate_two_sphere
from .geometry import Partition, SphereCandidate, bounding_box, classify, distances_to
from .harness import ComparisonReport, compare
from .io import CloudFormatError, read_cloud, write_cloud
from .objective import ObjectiveBreakdown, Weights, cloud_weights, evaluate, lms_error
from .pso import SolveResult, SwarmConfig, convergence_gate, lyapunov, solve
from .welzl import brute_force_ses, circumsphere, validate_sphere, welzl_ses

__version__ = "0.1.0"

__all__ = [
    "CloudFormatError",
    "ComparisonReport",
    "ObjectiveBreakdown",
    "Partition",
    "ShellSpec",
    "SolveResult",
    "SphereCandidate",
    "SwarmConfig",
    "Weights",
    "bounding_box",
    "brute_force_ses",
    "circumsphere",
    "classify",
    "cloud_weights",
    "compare",
    "convergence_gate",
    "distances_to",
    "evaluate",
    "generate_shell",
    "generate_two_sphere",
    "lms_error",
    "lyapunov",
    "read_cloud",
    "solve",
    "validate_sphere",
    "welzl_ses",
    "write_cloud",
]
