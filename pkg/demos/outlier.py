"""
One distant point
=================

Add a single point ten shell radii away and watch both spheres.
"""

import numpy as np

from swarmsphere import ShellSpec, SwarmConfig, generate_shell, solve, welzl_ses

shell = generate_shell(ShellSpec(radius=7.0, seed=3))
dirty = np.vstack([shell, [70.0, 0.0, 0.0]])

for name, cloud in (("clean", shell), ("with outlier", dirty)):
    exact = welzl_ses(cloud).sphere
    swarm = solve(cloud, config=SwarmConfig(seed=3)).sphere
    print(f"{name:>13}: exact r = {exact.radius:8.4f}   swarm r = {swarm.radius:8.4f}")

# The exact sphere must stretch to reach the far point; the swarm simply
# leaves it outside and keeps fitting the shell.
