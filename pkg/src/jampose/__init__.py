"""Pose optimization of an omnidirectional aerial base station under jamming."""
from .channel import (
    PowerParams,
    Pose,
    dipole_gain,
    link_gain,
    sinr_exact,
    sinr_for_axis,
    sinr_max_gain,
    sinr_zero_interference,
)
from .errors import (
    ConfigurationError,
    DegenerateGeometryError,
    InfeasibleOrientationError,
    InvalidDirectionError,
    JamposeError,
    ScenarioValidationError,
    StrategyInapplicableError,
)
from .geometry import EulerAngles, angles_from_direction, aoa_cosine, orientation_vector
from .scenario import (
    STRATEGIES,
    Scenario,
    SearchBox,
    SweepSpec,
    builtin_paper_scenario,
    load_scenario,
    read_results,
    save_scenario,
    save_solution,
)
from .solvers import (
    Solution,
    SolverConfig,
    grid_oracle,
    solve,
    solve_max_gain,
    solve_optimal,
    solve_vertical,
    solve_zero_interference,
)

__version__ = "0.1.0"
