"""
Sweep the jamming power and compare the four strategies.

Writes sweep.csv (same format as `jampose sweep`) and, if matplotlib is
installed, sweep.png with one curve per strategy. Takes about 1.5 minutes.
"""
import math
from pathlib import Path

from jampose import SweepSpec, builtin_paper_scenario
from jampose.sweep import default_pm_values, run_sweep

out = Path(__file__).with_name("sweep.csv")
result = run_sweep(builtin_paper_scenario(), SweepSpec(default_pm_values()))
result.save(out)
print(f"wrote {out}")

strategies = ("optimal", "max_gain", "zero_interference", "vertical")
pms = result.pm_values()
print("\n" + f"{'P_M/P':>10}" + "".join(f"{s:>19}" for s in strategies))
for pm in pms:
    cells = [10 * math.log10(result.lookup(pm, s).objective) for s in strategies]
    print(f"{pm:10.3g}" + "".join(f"{c:16.3f} dB" for c in cells))

# Weak jamming: max gain tracks the optimum. Strong jamming: zero interference
# does, and the hovering drone parks right above the jammer.
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    raise SystemExit(0)

colors = {"optimal": "tab:blue", "max_gain": "tab:red", "zero_interference": "k", "vertical": "m"}
fig, ax = plt.subplots(figsize=(6, 4))
for s in strategies:
    ax.semilogx(pms, [10 * math.log10(v) for v in result.objectives(s)], "o-", color=colors[s], label=s)
ax.set_xlabel("P_M / P")
ax.set_ylabel("min SINR [dB]")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.tight_layout()
fig.savefig(out.with_suffix(".png"), dpi=120)
print(f"wrote {out.with_suffix('.png')}")
