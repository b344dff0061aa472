"""
Check the annealing solver against brute force, then look at where the
max-gain drone ends up as jamming grows.
"""
import numpy as np

from jampose import builtin_paper_scenario, grid_oracle, solve, solve_max_gain

sc = builtin_paper_scenario(pm_over_p=1.0)
for strategy, grid in [("zero_interference", (40, 40, 20)), ("max_gain", (40, 40, 20)),
                       ("vertical", (40, 40, 20)), ("optimal", (12, 12, 8, 9, 9))]:
    oracle = grid_oracle(sc, strategy, grid)
    sol = solve(sc, strategy)
    print(f"{strategy:<18} solver {sol.objective:.6f}  grid {oracle.objective:.6f}  "
          f"({oracle.evals} points)")

# With weak jamming the max-gain optimum sits on the bisector plane y = 25,
# equally far from both nodes. Strong jamming pulls it towards the jammer's
# y so the antenna null can reach the jammer, and the balance is lost.
print()
for pm in (0.01, 1, 3, 10, 100, 1000):
    sol = solve_max_gain(sc.with_pm(pm))
    d1, d2 = (np.linalg.norm(sol.pose.position - n) for n in sc.legit_nodes)
    print(f"P_M/P={pm:<6g} position {np.round(sol.pose.position, 2)}  |d1 - d2| = {abs(d1 - d2):6.2f} m")
