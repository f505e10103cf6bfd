import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

import setflow as sf
from setflow.cli import main


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def scenario(tmp_path):
    def make(**overrides):
        cfg = {
            "grid_n": 64,
            "T": 1.0,
            "h": 0.01,
            "method": "rk4",
            "policy": "on_violation",
            "rhs": {"kind": "relax_to", "target": {"box": [[-1, 1], [-1, 1]]}},
            "initial": {"box": [[2, 3], [1, 2]]},
            "samples": 40,
            "r": 1.0,
            "output": {"trajectory": str(tmp_path / "traj.csv")},
        }
        cfg.update(overrides)
        return write_json(tmp_path / "scen.json", cfg)

    return make


# ---------------------------------------------------------------------- integrate

def test_integrate_writes_monotone_gap_csv(scenario, tmp_path):
    path = scenario(T=4.0)
    assert main(["integrate", path]) == 0
    rows = (tmp_path / "traj.csv").read_text().strip().splitlines()[1:]
    grid = sf.DirectionGrid(64)
    target = sf.support_of_polygon(sf.ConvexPolygon.box((-1, 1), (-1, 1)), grid)
    gaps = []
    for row in rows:
        vals = np.asarray(row.split(",")[3:], dtype=float)
        gaps.append(np.max(np.abs(vals - target.values)))
    assert all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))


def test_integrate_deterministic_output(scenario, tmp_path):
    path = scenario()
    assert main(["integrate", path]) == 0
    first = (tmp_path / "traj.csv").read_bytes()
    assert main(["integrate", path]) == 0
    assert (tmp_path / "traj.csv").read_bytes() == first


def test_integrate_svg_outputs(scenario, tmp_path):
    path = scenario(
        output={
            "trajectory": str(tmp_path / "t.csv"),
            "filmstrip": str(tmp_path / "film.svg"),
            "support": str(tmp_path / "supp.svg"),
        }
    )
    assert main(["integrate", path]) == 0
    film = ET.parse(tmp_path / "film.svg").getroot()
    supp = ET.parse(tmp_path / "supp.svg").getroot()
    n_poly = len(film.findall(".//{http://www.w3.org/2000/svg}polygon"))
    n_lines = len(supp.findall(".//{http://www.w3.org/2000/svg}polyline"))
    assert n_poly == n_lines == 5  # frames at 0, .25, .5, .75, 1


def test_integrate_malformed_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["integrate", str(bad)]) == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "bad_json"


def test_integrate_rejects_bad_step(scenario):
    assert main(["integrate", scenario(h=-0.5)]) == 2


def test_integrate_failure_exit_code(scenario, capsys):
    # explosive growth overflows to inf within the first rk4 step
    path = scenario(rhs={"kind": "expand", "rate": 1e80}, initial={"box": [[1, 2], [1, 2]]})
    with np.errstate(over="ignore"):
        assert main(["integrate", path]) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "integration"


# ------------------------------------------------------------------------ example

def test_example_classification_summary(tmp_path, capsys):
    out = tmp_path / "demo"
    assert main(["example", str(out), "--h", "0.02"]) == 0
    text = capsys.readouterr().out
    assert "curve 1: FirstType" in text
    assert "curve 2: SecondType" in text
    assert "curve 3: Neither" in text
    errs = [float(line.rsplit("=", 1)[1]) for line in text.splitlines() if "closed form" in line]
    assert errs and all(e <= 1e-6 for e in errs)


def test_example_outputs(tmp_path):
    out = tmp_path / "demo"
    assert main(["example", str(out), "--h", "0.05"]) == 0
    for k in (1, 2, 3):
        assert (out / f"curve{k}_trajectory.csv").exists()
        assert (out / f"curve{k}_classification.csv").exists()
        assert (out / f"curve{k}_frechet_delta.csv").exists()
        assert (out / f"curve{k}_sets.svg").exists()
    assert (out / "curve1_hukuhara_differentials.csv").exists()
    assert (out / "curve2_second_type_differentials.csv").exists()
    assert not (out / "curve3_hukuhara_differentials.csv").exists()
    assert not (out / "curve3_second_type_differentials.csv").exists()


def test_example_third_curve_delta_fails_cone_both_ways(tmp_path):
    out = tmp_path / "demo"
    assert main(["example", str(out), "--h", "0.05"]) == 0
    rows = (out / "curve3_frechet_delta.csv").read_text().strip().splitlines()[1:]
    grid = sf.DirectionGrid(64)
    vals = np.asarray(rows[0].split(",")[1:], dtype=float)
    assert not sf.is_in_cone(vals, grid).ok
    assert not sf.is_in_cone(-vals, grid).ok


# -------------------------------------------------------------------------- check

def test_check_subtangent_ok(scenario):
    assert main(["check", "subtangent", scenario()]) == 0


def test_check_osl_ok(scenario):
    assert main(["check", "osl", scenario()]) == 0


def test_check_osl_violation(scenario, tmp_path, capsys):
    path = scenario(
        rhs={"kind": "expand", "rate": 1.0},
        omega={"kind": "zero"},
        output={"witnesses": str(tmp_path / "wit.csv")},
    )
    assert main(["check", "osl", path]) == 1
    assert (tmp_path / "wit.csv").exists()
    assert "osl witness" in capsys.readouterr().out


def test_check_lipschitz(scenario, capsys):
    assert main(["check", "lipschitz", scenario()]) == 0
    assert "lipschitz estimate: 1" in capsys.readouterr().out


def test_check_horizon(scenario, capsys):
    assert main(["check", "horizon", scenario()]) == 0
    out = capsys.readouterr().out
    assert "b = min(T, r/c)" in out


def test_check_bad_config(tmp_path):
    missing = tmp_path / "nope.json"
    assert main(["check", "osl", str(missing)]) == 2


# ---------------------------------------------------------------------- hausdorff

def test_hausdorff_cmd(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", {"box": [[2, 3], [1, 2]]})
    b = write_json(tmp_path / "b.json", {"vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]]})
    assert main(["hausdorff", a, b, "--n", "1024"]) == 0
    out = capsys.readouterr().out
    exact = float(out.splitlines()[1].split(":")[1])
    assert exact == pytest.approx(np.sqrt(13), abs=1e-9)


def test_hausdorff_identical_sets(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", {"box": [[0, 1], [0, 1]]})
    assert main(["hausdorff", a, a]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert float(lines[0].split(":")[1]) == 0.0
    assert float(lines[1].split(":")[1]) == 0.0


def test_hausdorff_parse_failure(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1,2")
    good = write_json(tmp_path / "g.json", {"box": [[0, 1], [0, 1]]})
    assert main(["hausdorff", str(bad), good]) == 2
