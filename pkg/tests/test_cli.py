"""End-to-end tests of the command line interface.

Commands run in-process through main(argv) so exit codes and stdout can be
checked cheaply; one subprocess test confirms the installed entry point.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from lagrass.cli import main
from lagrass.complex_structure import ComplexStructure
from lagrass.geodesics import GeodesicGenerator
from lagrass.linalg import max_abs
from lagrass.subspaces import Symmetry

SEED = 90210


def line_symmetry(theta):
    c = math.cos(2.0 * theta)
    s = math.sin(2.0 * theta)
    return [[c, s], [s, -c]]


def write_problem(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def line_file(tmp_path, theta, name):
    return write_problem(tmp_path / name, {
        "dim": 2,
        "subspace": {"symmetry": line_symmetry(theta)},
    })


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------------------
# validate


def test_validate_reports_invariants(tmp_path, capsys):
    path = line_file(tmp_path, 0.3, "sub.json")
    code, out = run_cli(capsys, ["validate", path])
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 2
    assert payload["lagrangian"] is True
    assert payload["subspace_dim"] == 1
    for key in ("j_antisymmetry", "j_square_plus_identity", "j_orthogonality",
                "symmetry_asymmetry", "symmetry_square_minus_identity",
                "anticommutator_with_j"):
        assert payload[key] < 1e-12
    assert payload["provenance"]["tolerances"]["sym"] == 1e-10


def test_validate_accepts_graph_encoding(tmp_path, capsys):
    path = write_problem(tmp_path / "graph.json", {
        "dim": 4,
        "subspace": {"graph_of": [[1.0, 0.2], [0.2, -0.5]]},
    })
    code, out = run_cli(capsys, ["validate", path])
    assert code == 0
    assert json.loads(out)["lagrangian"] is True


def test_validate_writes_out_file(tmp_path, capsys):
    path = line_file(tmp_path, 0.3, "sub.json")
    out_path = tmp_path / "report.json"
    code, _ = run_cli(capsys, ["validate", path, "--out", str(out_path)])
    assert code == 0
    _, streamed = run_cli(capsys, ["validate", path])
    assert out_path.read_text() == streamed


# ---------------------------------------------------------------------------
# exit codes


def test_exit_code_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run_cli(capsys, ["validate", str(bad)])
    assert code == 2


def test_exit_code_missing_file(tmp_path, capsys):
    code, _ = run_cli(capsys, ["validate", str(tmp_path / "absent.json")])
    assert code == 2


def test_exit_code_unknown_command(capsys):
    code = main(["no-such-command"])
    capsys.readouterr()
    assert code == 2


def test_exit_code_invariant_violation(tmp_path, capsys):
    # a coordinate plane that is not Lagrangian for the standard structure
    path = write_problem(tmp_path / "nonlag.json", {
        "dim": 4,
        "subspace": {"basis": [[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [0.0, 0.0]]},
    })
    first = line_file(tmp_path, 0.0, "a.json")
    code, _ = run_cli(capsys, ["connect", first, path])
    assert code == 3


def test_exit_code_computation_error(tmp_path, capsys):
    # the vertical subspace is Lagrangian but not a graph
    path = write_problem(tmp_path / "vertical.json", {
        "dim": 4,
        "subspace": {"basis": [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]},
    })
    code, _ = run_cli(capsys, ["graph-recover", path])
    assert code == 4


# ---------------------------------------------------------------------------
# connect, distance, decompose, multiplicity


def test_connect_emits_valid_generator(tmp_path, capsys):
    theta = 0.7
    first = line_file(tmp_path, 0.0, "a.json")
    second = line_file(tmp_path, theta, "b.json")
    code, out = run_cli(capsys, ["connect", first, second])
    assert code == 0
    payload = json.loads(out)
    z = np.array(payload["z"])
    assert abs(payload["norm_op"] - theta) < 1e-12
    want = theta * np.array([[0.0, -1.0], [1.0, 0.0]])
    assert max_abs(z - want) < 1e-12
    for key, val in payload["residuals"].items():
        assert val < 1e-9, key
    # the emitted matrix must survive re-validation as a generator
    GeodesicGenerator(
        z,
        base=Symmetry(np.array(line_symmetry(0.0))),
        structure=ComplexStructure.standard(1),
    )


def test_connect_routes_agree(tmp_path, capsys):
    first = line_file(tmp_path, 0.1, "a.json")
    second = line_file(tmp_path, 1.2, "b.json")
    _, out_log = run_cli(capsys, ["connect", first, second, "--route", "log"])
    _, out_halmos = run_cli(capsys, ["connect", first, second, "--route", "halmos"])
    z_log = np.array(json.loads(out_log)["z"])
    z_halmos = np.array(json.loads(out_halmos)["z"])
    assert max_abs(z_log - z_halmos) < 1e-10


def test_distance_payload(tmp_path, capsys):
    theta = 0.4
    first = line_file(tmp_path, 0.0, "a.json")
    second = line_file(tmp_path, theta, "b.json")
    code, out = run_cli(capsys, ["distance", first, second])
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["distance"] - 2.0 * theta) < 1e-12
    assert payload["sin_norm_residual"] < 1e-10
    assert 0.0 < payload["projection_gap"] <= 1.0


def test_decompose_payload(tmp_path, capsys):
    first = write_problem(tmp_path / "a.json", {
        "dim": 4,
        "subspace": {"basis": [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]]},
    })
    theta = 0.5
    second = write_problem(tmp_path / "b.json", {
        "dim": 4,
        "subspace": {"basis": [
            [1.0, 0.0],
            [0.0, math.cos(theta)],
            [0.0, 0.0],
            [0.0, math.sin(theta)],
        ]},
    })
    code, out = run_cli(capsys, ["decompose", first, second])
    assert code == 0
    payload = json.loads(out)
    assert payload["dims"] == {"both_plus": 1, "both_minus": 1, "plus_minus": 0,
                               "minus_plus": 0, "generic": 2}
    assert abs(payload["generic_angles"][0] - theta) < 1e-10


def test_multiplicity_with_alternates(tmp_path, capsys):
    first = write_problem(tmp_path / "a.json", {
        "dim": 4, "subspace": {"graph_of": [[1.0, 0.0], [0.0, 1.0]]},
    })
    second = write_problem(tmp_path / "b.json", {
        "dim": 4, "subspace": {"graph_of": [[1.0, 0.0], [0.0, -1.0]]},
    })
    code, out = run_cli(capsys, ["multiplicity", first, second, "--alternates"])
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "ExactlyTwo"
    assert payload["minus_one_dim_complex"] == 1
    assert len(payload["alternates"]) == 2


# ---------------------------------------------------------------------------
# sample and CSV output


def test_sample_writes_curve_and_speed(tmp_path, capsys):
    first = line_file(tmp_path, 0.0, "a.json")
    second = line_file(tmp_path, 0.6, "b.json")
    prefix = tmp_path / "run"
    code, out = run_cli(capsys, [
        "sample", first, second, "--grid", "21", "--k", "2",
        "--out-prefix", str(prefix),
    ])
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["closed_form_speed"] - 2.0 * 0.6 * math.sqrt(2)) < 1e-10

    curve_lines = (tmp_path / "run_curve.csv").read_text().splitlines()
    assert curve_lines[0].startswith("# lagrass sample")
    assert curve_lines[1] == "t,eps_0_0,eps_0_1,eps_1_0,eps_1_1"
    assert len(curve_lines) == 2 + 21
    row = curve_lines[2].split(",")
    assert float(row[0]) == 0.0
    assert abs(float(row[1]) - 1.0) < 1e-15

    speed_lines = (tmp_path / "run_speed.csv").read_text().splitlines()
    assert speed_lines[1] == "t,speed_2"
    # interior rows of a geodesic report constant speed up to grid error
    mid = float(speed_lines[2 + 10].split(",")[1])
    assert abs(mid - payload["closed_form_speed"]) < 5e-3


# ---------------------------------------------------------------------------
# graph-recover and spectral-curve


def test_graph_recover_residuals(tmp_path, capsys):
    a = [[0.8, 0.1], [0.1, -0.3]]
    path = write_problem(tmp_path / "g.json", {"dim": 4, "subspace": {"graph_of": a}})
    code, out = run_cli(capsys, ["graph-recover", path])
    assert code == 0
    payload = json.loads(out)
    assert max_abs(np.array(payload["operator"]) - np.array(a)) < 1e-10
    assert payload["residual_vertical_chart"] < 1e-9
    assert payload["residual_identity_chart"] < 1e-9


def test_spectral_curve_outputs(tmp_path, capsys):
    y = [[0.3, 0.0], [0.0, -0.2]]
    path = write_problem(tmp_path / "y.json", {"matrix": y})
    out_csv = tmp_path / "curve.csv"
    code, out = run_cli(capsys, [
        "spectral-curve", path, "--grid", "41", "--out", str(out_csv),
    ])
    assert code == 0
    verdict = json.loads(out)
    assert verdict["trivial_flow"] is True
    assert abs(verdict["det_phase_change"] - (-4.0 * (0.3 - 0.2))) < 1e-10
    assert verdict["closed_form_max_error"] < 1e-10
    assert verdict["skipped_times"] == 0

    lines = out_csv.read_text().splitlines()
    assert lines[1] == "t,phase_0,phase_1,min_gap_to_minus_one"
    assert len(lines) == 2 + 41


def test_spectral_curve_rejects_wide_spectrum(tmp_path, capsys):
    path = write_problem(tmp_path / "y.json",
                         {"matrix": [[math.pi / 2 + 0.2, 0.0], [0.0, 0.0]]})
    code, _ = run_cli(capsys, ["spectral-curve", path])
    assert code == 3


# ---------------------------------------------------------------------------
# determinism and reproducibility


def test_repeated_runs_are_byte_identical(tmp_path, capsys):
    first = line_file(tmp_path, 0.1, "a.json")
    second = line_file(tmp_path, 0.9, "b.json")
    outputs = []
    for _ in range(2):
        code, out = run_cli(capsys, ["connect", first, second])
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_random_pair_reproducible(tmp_path, capsys):
    blobs = []
    for tag in ("x", "y"):
        prefix = tmp_path / tag
        code, out = run_cli(capsys, [
            "random-pair", "--dim-half", "3", "--seed", "42",
            "--out-prefix", str(prefix),
        ])
        assert code == 0
        payload = json.loads(out)
        assert payload["seed"] == 42
        blobs.append((tmp_path / f"{tag}_first.json").read_bytes()
                     + (tmp_path / f"{tag}_second.json").read_bytes())
    assert blobs[0] == blobs[1]
    # the generated pair must be consumable by the other commands
    code, out = run_cli(capsys, [
        "distance", str(tmp_path / "x_first.json"), str(tmp_path / "x_second.json"),
    ])
    assert code == 0
    assert json.loads(out)["distance"] > 0.0


def test_tolerance_flags_recorded(tmp_path, capsys):
    path = line_file(tmp_path, 0.3, "sub.json")
    code, out = run_cli(capsys, ["--tol-sym", "1e-8", "validate", path])
    assert code == 0
    assert json.loads(out)["provenance"]["tolerances"]["sym"] == 1e-8


def test_installed_entry_point(tmp_path):
    path = line_file(tmp_path, 0.25, "sub.json")
    proc = subprocess.run(
        [sys.executable, "-m", "lagrass.cli", "validate", path],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["lagrangian"] is True


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
