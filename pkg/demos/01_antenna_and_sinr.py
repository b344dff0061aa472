"""
The dipole on top of the drone and what it does to each link.

A small dipole radiates sin^2 of the angle from its axis: nothing along the
axis, everything broadside. Tilting the drone tilts the axis, which changes
the gain towards every ground node and towards the jammer at the same time.
"""
import math

import numpy as np

from jampose import EulerAngles, Pose, builtin_paper_scenario, link_gain, orientation_vector, sinr_exact

sc = builtin_paper_scenario(pm_over_p=1.0)
print("nodes :", sc.legit_nodes.tolist())
print("jammer:", sc.jammer.tolist())

# Axis for a few attitudes (yaw is irrelevant for a dipole)
for roll, pitch in [(0, 0), (math.pi / 2, 0), (0, math.pi / 2), (0.3, -0.6)]:
    axis = orientation_vector(EulerAngles(roll, pitch, 0))
    print(f"roll={roll:+.2f} pitch={pitch:+.2f} -> axis {np.round(axis, 4)}")

# Hovering level above the midpoint of the two nodes
pose = Pose([0, 25, 8], EulerAngles(0, 0, 0))
print("\nlevel drone over the midpoint")
print("  gain to S1, S2 :", [round(link_gain(n, pose), 4) for n in sc.legit_nodes])
print("  gain to jammer :", round(link_gain(sc.jammer, pose), 4))
print("  SINR per node  :", sinr_exact(sc, pose))

# Tilt 90 deg in pitch: the axis is now horizontal along x, broadside to both nodes
pose = Pose([0, 25, 8], EulerAngles(0, math.pi / 2, 0))
print("\npitched 90 deg")
print("  gain to S1, S2 :", [round(link_gain(n, pose), 4) for n in sc.legit_nodes])
print("  gain to jammer :", round(link_gain(sc.jammer, pose), 4))
print("  SINR per node  :", sinr_exact(sc, pose))
