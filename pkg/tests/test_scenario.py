import json
import math

import numpy as np
import pytest

from jampose import (
    EulerAngles,
    Pose,
    ScenarioValidationError,
    SearchBox,
    Solution,
    SweepSpec,
    builtin_paper_scenario,
    load_scenario,
    read_results,
    save_scenario,
    save_solution,
)
from jampose.scenario import RESULT_COLUMNS, default_box, paper_scenario_path


def write(tmp_path, data, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return p


BASE = {
    "name": "t",
    "legit_nodes": [[0, 0, 0], [4, 0, 0]],
    "jammer": [2, 20, 1],
    "sigma2_over_p": 0.01,
    "pm_over_p": 3.0,
    "z_bounds": [8, 30],
}


def test_builtin_paper_scenario():
    sc = builtin_paper_scenario()
    np.testing.assert_array_equal(sc.legit_nodes, [[0, 0, 0], [0, 50, 0]])
    np.testing.assert_array_equal(sc.jammer, [17, 15, 4])
    assert (sc.box.z_min, sc.box.z_max) == (8, 30)
    assert sc.powers.sigma2_over_p == 0.001
    assert sc.powers.p_legit == 1.0
    # default horizontal box: x in [0, 17], y in [0, 50], grown by half the span
    assert (sc.box.x_min, sc.box.x_max) == (-8.5, 25.5)
    assert (sc.box.y_min, sc.box.y_max) == (-25.0, 75.0)


def test_bundled_paper_json_matches_builtin():
    sc = load_scenario(paper_scenario_path())
    assert sc == builtin_paper_scenario(pm_over_p=1.0)


def test_default_box_rule(tmp_path):
    sc = load_scenario(write(tmp_path, BASE))
    # x span 4 -> widened to 10 about x = 2 -> [-3, 7] -> +-5
    # y span 20 -> [0, 20] -> +-10
    assert sc.box == SearchBox(-8.0, 12.0, -10.0, 30.0, 8.0, 30.0)


def test_explicit_box(tmp_path):
    sc = load_scenario(write(tmp_path, {**BASE, "box": [-1, 1, -2, 2]}))
    assert sc.box == SearchBox(-1, 1, -2, 2, 8, 30)


def test_round_trip(tmp_path):
    sc = load_scenario(write(tmp_path, BASE))
    out = tmp_path / "again.json"
    save_scenario(out, sc)
    assert load_scenario(out) == sc
    paper = builtin_paper_scenario(pm_over_p=0.0316)
    save_scenario(out, paper)
    assert load_scenario(out) == paper


@pytest.mark.parametrize("patch, message", [
    ({"legit_nodes": [[0, 0, 0], [0, 0, 0]]}, "duplicate node position"),
    ({"legit_nodes": [[0, 0, 0], [0, 0, 1e-7]]}, "duplicate node position"),
    ({"jammer": [0, 0, 0]}, "duplicate node position"),
    ({"legit_nodes": []}, "legit_nodes"),
    ({"sigma2_over_p": 0}, "sigma2_over_p"),
    ({"sigma2_over_p": -1}, "sigma2_over_p"),
    ({"pm_over_p": -0.5}, "pm_over_p"),
    ({"z_bounds": [30, 8]}, "inverted z"),
    ({"z_bounds": [-1, 8]}, "z_min"),
    ({"box": [5, -5, 0, 1]}, "inverted x"),
    ({"jammer": [1, 2]}, "jammer"),
    ({"sigma2_over_p": "small"}, "sigma2_over_p"),
])
def test_validation_errors(tmp_path, patch, message):
    with pytest.raises(ScenarioValidationError, match=message):
        load_scenario(write(tmp_path, {**BASE, **patch}))


def test_missing_fields(tmp_path):
    for key in ("jammer", "sigma2_over_p", "z_bounds"):
        data = {k: v for k, v in BASE.items() if k != key}
        with pytest.raises(ScenarioValidationError, match=key):
            load_scenario(write(tmp_path, data))


def test_parse_error_has_line_context(tmp_path):
    p = write(tmp_path, '{\n  "name": "x",\n  "jammer": [1, 2, 3,]\n}')
    with pytest.raises(ScenarioValidationError, match=r"s\.json:3:"):
        load_scenario(p)


def test_sweep_spec_validation():
    assert SweepSpec([0, 1, 10]).pm_over_p_values == (0.0, 1.0, 10.0)
    for bad in ([], [1, 1], [2, 1], [-1, 1]):
        with pytest.raises(ScenarioValidationError):
            SweepSpec(bad)
    with pytest.raises(ScenarioValidationError):
        SweepSpec([1], ("bogus",))


def fake_solution(strategy, obj, x=0.1):
    pose = Pose([x, 25.0, 8.0], EulerAngles(0.25, -0.5, 0.0))
    return Solution(pose, (obj, obj * 2), obj, strategy, 1234)


def test_save_solution_empty(tmp_path):
    p = tmp_path / "r.csv"
    save_solution(p, [], SweepSpec([1.0]))
    assert p.read_text() == ",".join(RESULT_COLUMNS) + "\n"


def test_save_solution_order_and_round_trip(tmp_path):
    p = tmp_path / "r.csv"
    objs = [1 / 3, math.pi / 7, 2 ** 0.5 / 11]
    sols = [(pm, fake_solution("vertical", o)) for pm, o in zip([10.0, 0.1, 1.0], objs)]
    save_solution(p, sols, SweepSpec([0.1, 1.0, 10.0], ("vertical",)))
    rows = read_results(p)
    assert [r["pm_over_p"] for r in rows] == [0.1, 1.0, 10.0]
    assert [r["min_sinr"] for r in rows] == [objs[1], objs[2], objs[0]]
    assert rows[0]["min_sinr_db"] == pytest.approx(10 * math.log10(objs[1]))
    assert rows[0]["roll"] == 0.25 and rows[0]["pitch"] == -0.5
    assert rows[0]["evals"] == 1234
    header = p.read_text().splitlines()[0]
    assert header == "pm_over_p,strategy,x,y,z,roll,pitch,min_sinr,min_sinr_db,evals"


def test_save_solution_rows_sorted_by_strategy(tmp_path):
    p = tmp_path / "r.csv"
    sols = [(1.0, fake_solution(s, 1.0)) for s in ("vertical", "optimal", "max_gain")]
    save_solution(p, sols)
    assert [r["strategy"] for r in read_results(p)] == ["max_gain", "optimal", "vertical"]


def test_save_solution_io_error(tmp_path):
    with pytest.raises(OSError, match="cannot write results"):
        save_solution(tmp_path / "missing" / "r.csv", [])


def test_save_solution_is_atomic(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text("previous\n")

    class Broken:
        strategy = "optimal"

        @property
        def pose(self):
            raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        save_solution(p, [(1.0, Broken())])
    assert p.read_text() == "previous\n"
    assert [f.name for f in tmp_path.iterdir()] == ["r.csv"]


def test_default_box_min_span():
    box = default_box(np.array([[0, 0, 0], [0, 0, 5]]), (1, 2))
    assert box == SearchBox(-10, 10, -10, 10, 1, 2)
