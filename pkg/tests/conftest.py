import numpy as np
import pytest

from jampose import PowerParams, Scenario, SearchBox, SolverConfig, builtin_paper_scenario


@pytest.fixture
def paper():
    return builtin_paper_scenario(pm_over_p=1.0)


@pytest.fixture
def quick_config():
    return SolverConfig(restarts=4, anneal_iterations=400)


def make_scenario(nodes, jammer, pm=1.0, sigma2=1e-3, box=None, z=(8.0, 30.0), name="test"):
    nodes = np.asarray(nodes, dtype=float)
    jammer = np.asarray(jammer, dtype=float)
    if box is None:
        from jampose.scenario import default_box

        box = default_box(np.vstack([nodes, jammer]), z)
    elif len(box) == 4:
        box = SearchBox(*box, *z)
    return Scenario(nodes, jammer, PowerParams(pm, sigma2), box, name)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
