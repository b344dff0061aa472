"""
Four ways to place and point the drone, on the two-node scenario.

optimal            position + roll + pitch, searched jointly
zero_interference  antenna null locked on the jammer, position searched
max_gain           axis perpendicular to both nodes, position searched
vertical           a hovering (under-actuated) drone: axis straight up
"""
import math
import sys

from jampose import STRATEGIES, builtin_paper_scenario, link_gain, solve

pm = float(sys.argv[1]) if len(sys.argv) > 1 else 1.0
sc = builtin_paper_scenario(pm_over_p=pm)
print(f"P_M/P = {pm}\n")
print(f"{'strategy':<18} {'min SINR':>10} {'dB':>7}   position [m]              roll   pitch  jammer gain")
for strategy in STRATEGIES:
    sol = solve(sc, strategy)
    x, y, z = sol.pose.position
    roll, pitch, _ = (math.degrees(a) for a in sol.pose.angles)
    print(f"{strategy:<18} {sol.objective:10.5f} {sol.objective_db:7.3f}   "
          f"({x:7.2f}, {y:6.2f}, {z:5.2f})  {roll:6.1f} {pitch:6.1f}  {link_gain(sc.jammer, sol.pose):.2e}")
