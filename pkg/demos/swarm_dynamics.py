"""
Watching the swarm settle
=========================

Every solve records, per iteration, the best objective so far and the mean
squared distance of the particles to the global best. The second number
falls towards zero as the swarm collapses onto its answer.
"""

from swarmsphere import SwarmConfig, convergence_gate, generate_two_sphere, solve

cloud = generate_two_sphere(r_a=7.0, n_per_shell=634, seed=0)

config = SwarmConfig(seed=0)
print("coefficients inside the stability region:", convergence_gate(config))

result = solve(cloud, config=config)
print("stopped after", result.iterations_run, "iterations by", result.terminated_by)

for rec in result.trace[:: max(1, len(result.trace) // 10)]:
    print(f"iter {rec.iter:5d}  best J {rec.gbest_j:12.4f}  inside {rec.inside_count:5d}  "
          f"spread {rec.lyapunov:12.6g}")

# Trace rows are plain CSV for any plotting tool
with open("two_sphere_trace.csv", "w") as fh:
    fh.write(result.trace_csv())
