"""Scene files and the command-line surface: exit codes, reports, CSV output,
and run-to-run determinism."""

import json
import math
import subprocess
import sys

import pytest

from nccausal.cli import main
from nccausal.errors import SceneError
from nccausal.scene import Scene, default_scene, load_scene, save_scene


def run_cli(*argv):
    return main(list(argv))


def test_scene_round_trip_is_identity():
    scene = default_scene()
    assert Scene.from_json(scene.to_json()) == scene


def test_scene_round_trip_through_file(tmp_path):
    scene = default_scene()
    path = tmp_path / "scene.json"
    save_scene(scene, str(path))
    assert load_scene(str(path)) == scene


def test_scene_rejects_duplicate_names():
    data = default_scene().to_dict()
    data["states"].append(dict(data["states"][0]))
    with pytest.raises(SceneError):
        Scene.from_dict(data)


def test_scene_rejects_degenerate_dirac():
    data = default_scene().to_dict()
    data["dirac"] = {"d1": 1.0, "d2": 1.0}
    with pytest.raises(SceneError):
        Scene.from_dict(data)


def test_scene_rejects_bad_json():
    with pytest.raises(SceneError):
        Scene.from_json("{not json")


def test_check_related_exit_zero(capsys):
    assert run_cli("check", "origin", "timelike") == 0
    out = capsys.readouterr().out
    assert "verdict: Related" in out
    assert "speed_margin" in out


def test_check_not_related_exit_ten(capsys):
    assert run_cli("check", "origin", "spacelike") == 10
    out = capsys.readouterr().out
    assert "reason: base" in out

    assert run_cli("check", "origin", "north_pole") == 10
    out = capsys.readouterr().out
    assert "reason: latitude" in out

    assert run_cli("check", "origin", "fast_rotation") == 10
    out = capsys.readouterr().out
    assert "reason: speed" in out


def test_check_unknown_name_exit_two(capsys):
    assert run_cli("check", "origin", "nope") == 2
    assert "error:" in capsys.readouterr().err


def test_degenerate_scene_file_exit_two(tmp_path, capsys):
    data = default_scene().to_dict()
    data["dirac"] = {"d1": 2.0, "d2": 2.0}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert run_cli("check", "--scene", str(path), "origin", "timelike") == 2


def test_distance_internal_report(capsys):
    assert run_cli("distance", "internal", "origin", "fast_rotation") == 0
    out = capsys.readouterr().out
    value = float(out.strip().rsplit(" ", 1)[-1])
    # equator pair at dtheta = 3: closed form 2 sin(1.5)
    assert abs(value - 2.0 * math.sin(1.5)) <= 1e-6


def test_distance_internal_infinite(capsys):
    assert run_cli("distance", "internal", "origin", "north_pole") == 0
    assert "infinite" in capsys.readouterr().out


def test_distance_functional_reports_gap(capsys, tmp_path):
    out_csv = tmp_path / "distance.csv"
    assert run_cli("distance", "functional", "origin", "timelike", "--out", str(out_csv)) == 0
    out = capsys.readouterr().out
    assert "functional distance" in out
    assert "absolute gap" in out
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "name1,name2,kind,value"
    assert lines[1].startswith("origin,timelike,functional,")


def test_distance_csv_infinite_marker(tmp_path):
    out_csv = tmp_path / "distance.csv"
    assert run_cli("distance", "internal", "origin", "north_pole", "--out", str(out_csv)) == 0
    assert out_csv.read_text().splitlines()[1].endswith(",inf")


def test_reachable_command(capsys):
    assert run_cli("reachable", "origin", "--t", "2.0", "--x", "0.5") == 0
    out = capsys.readouterr().out
    assert "kind: arc" in out


def test_reachable_pole_exit_two(capsys):
    assert run_cli("reachable", "north_pole", "--t", "2.0", "--x", "0.0") == 2


def test_scan_grid_row_count(tmp_path):
    out_csv = tmp_path / "scan.csv"
    assert (
        run_cli("scan", "origin", "--nt", "3", "--nx", "3", "--out", str(out_csv)) == 0
    )
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "t,x,theta_min,theta_max,reachable"
    assert len(lines) == 1 + 9


def test_scan_flags_cover_empty_arc_and_full(tmp_path):
    out_csv = tmp_path / "scan.csv"
    assert (
        run_cli(
            "scan",
            "origin",
            "--t-min", "-1.0", "--t-max", "4.0",
            "--x-min", "-1.0", "--x-max", "1.0",
            "--nt", "6", "--nx", "3",
            "--out", str(out_csv),
        )
        == 0
    )
    flags = {line.rsplit(",", 1)[-1] for line in out_csv.read_text().splitlines()[1:]}
    assert flags == {"0", "1", "2"}


def test_scan_requires_resolution_two(capsys):
    assert run_cli("scan", "origin", "--nt", "1") == 2


def test_scan_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli("scan", "origin", "--out", str(a)) == 0
    assert run_cli("scan", "origin", "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_clifford_suite(tmp_path, capsys):
    out_csv = tmp_path / "verify.csv"
    assert run_cli("verify", "--suite", "clifford", "--out", str(out_csv)) == 0
    out = capsys.readouterr().out
    assert "PASS  clifford.clifford_relations" in out
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "suite,check,passed,value"
    assert all(line.split(",")[2] == "1" for line in lines[1:])


def test_verify_runs_only_requested_suite(capsys):
    assert run_cli("verify", "--suite", "clifford") == 0
    out = capsys.readouterr().out
    assert "finite." not in out and "product." not in out


def test_cli_entry_point_runs_as_module():
    proc = subprocess.run(
        [sys.executable, "-m", "nccausal", "check", "origin", "timelike"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "verdict: Related" in proc.stdout
