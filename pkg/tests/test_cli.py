"""End-to-end CLI behaviour: formats, determinism, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from qsing.cli import main

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"


def run_cli(args, capsys) -> tuple[int, dict]:
    code = main(args)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else {}


class TestBasicCommands:
    def test_dim_conifold(self, capsys):
        code, report = run_cli(["dim", str(FIXTURES / "conifold.json")], capsys)
        assert code == 0
        assert report["result"]["expected_dim"] == 3
        assert report["schema_version"] == 1

    def test_classify_with_defect(self, capsys):
        code, report = run_cli(
            ["classify", str(FIXTURES / "quantum_plane_origin.json"), "--dimx", "2"],
            capsys,
        )
        assert code == 0
        assert report["result"]["defect"] == 1
        assert report["result"]["smooth"] is True

    def test_reduce_round_trips_setting(self, capsys, tmp_path):
        setting = {"dims": [1], "arrows": [[3]], "marked_loops": [0]}
        path = tmp_path / "loops.json"
        path.write_text(json.dumps(setting))
        code, report = run_cli(["reduce", str(path)], capsys)
        assert code == 0
        assert report["result"]["z"] == 3
        assert report["result"]["reduced"] == {
            "dims": [1],
            "arrows": [[0]],
            "marked_loops": [0],
        }
        assert len(report["result"]["trace"]) == 3

    def test_local_and_strata(self, capsys):
        code, report = run_cli(
            [
                "local",
                str(FIXTURES / "conifold.json"),
                "--tau",
                "[[1,[1,0]],[1,[0,1]]]",
            ],
            capsys,
        )
        assert code == 0
        assert report["result"]["local_setting"]["dims"] == [1, 1]
        assert report["result"]["classification"]["smooth"] is False

        code, report = run_cli(["strata", str(FIXTURES / "conifold.json")], capsys)
        assert code == 0
        assert len(report["result"]["strata"]) == 2

    def test_selftest_passes(self, capsys):
        code, report = run_cli(["selftest"], capsys)
        assert code == 0
        assert report["result"]["all_passed"] is True

    def test_conifold_verify_passes(self, capsys):
        code, report = run_cli(
            ["conifold-verify", "--triples", "20", "--points", "10"], capsys
        )
        assert code == 0
        assert report["result"]["all_passed"] is True
        names = {c["check"] for c in report["result"]["checks"]}
        assert any("jacobian" in n for n in names)


class TestToricCommands:
    def test_invariants(self, capsys):
        code, report = run_cli(
            ["toric", "invariants", str(FIXTURES / "conifold.json")], capsys
        )
        assert code == 0
        assert len(report["result"]["generators"]) == 4
        assert len(report["result"]["arrow_legend"]) == 4

    def test_relations(self, capsys):
        code, report = run_cli(
            ["toric", "relations", str(FIXTURES / "conifold.json")], capsys
        )
        assert code == 0
        assert len(report["result"]["relations"]) == 1

    def test_semistable(self, capsys):
        code, report = run_cli(
            [
                "toric",
                "semistable",
                str(FIXTURES / "conifold.json"),
                "--theta=-1,1",
                "--support",
                "0",
            ],
            capsys,
        )
        assert code == 0
        assert report["result"]["verdict"]["stable"] is True
        assert report["result"]["verdicts_agree"] is True

    def test_charts_and_fiber(self, capsys):
        code, report = run_cli(
            ["toric", "charts", str(FIXTURES / "conifold.json"), "--theta=-1,1"],
            capsys,
        )
        assert code == 0
        assert len(report["result"]["charts"]) == 2
        assert all(c["smooth"] for c in report["result"]["charts"])

        code, report = run_cli(
            ["toric", "fiber", str(FIXTURES / "conifold.json"), "--theta=-1,1"],
            capsys,
        )
        assert code == 0
        assert report["result"]["max_orbit_space_dim"] == 1
        stable = [s for s in report["result"]["strata"] if s["stable"]]
        assert len(stable) == 3


class TestEnumerateCommand:
    def test_dim3_writes_files(self, capsys, tmp_path):
        out = tmp_path / "found"
        code = main(["enumerate", "--dim", "3", "--out", str(out)])
        capsys.readouterr()
        assert code == 0
        files = sorted(out.glob("setting_*.json"))
        assert len(files) == 1
        summary = json.loads((out / "summary.json").read_text())
        assert summary["result"]["setting_count"] == 1
        assert summary["result"]["type_count"] == 1
        assert summary["result"]["type_count_matches"] is True

    def test_dim4_count(self, capsys):
        code, report = run_cli(["enumerate", "--dim", "4"], capsys)
        assert code == 0
        assert report["result"]["setting_count"] == 3
        assert report["result"]["type_count"] == 3


class TestReportContract:
    def test_determinism_byte_identical(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            target = tmp_path / name
            code = main(
                ["classify", str(FIXTURES / "conifold.json"), "--out", str(target)]
            )
            assert code == 0
            outs.append(target.read_bytes())
        assert outs[0] == outs[1]

    def test_timings_excluded_by_default(self, capsys):
        _, report = run_cli(["dim", str(FIXTURES / "conifold.json")], capsys)
        assert "timings" not in report
        _, report = run_cli(
            ["dim", str(FIXTURES / "conifold.json"), "--timings"], capsys
        )
        assert "timings" in report

    def test_fixture_round_trip(self):
        from qsing.core import MarkedQuiverSetting

        for path in FIXTURES.glob("*.json"):
            data = json.loads(path.read_text())
            setting = MarkedQuiverSetting.from_json(data)
            assert json.loads(json.dumps(setting.to_json())) == setting.to_json()
            assert MarkedQuiverSetting.from_json(setting.to_json()) == setting

    def test_bad_input_exit_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(SystemExit) as info:
            main(["dim", str(bad)])
        assert info.value.code == 2

    def test_missing_file_exit_two(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["dim", str(tmp_path / "absent.json")])
        assert info.value.code == 2

    def test_malformed_theta_exit_two(self):
        with pytest.raises(SystemExit) as info:
            main(
                [
                    "toric",
                    "charts",
                    str(FIXTURES / "conifold.json"),
                    "--theta=a,b",
                ]
            )
        assert info.value.code == 2

    def test_unknown_command_exit_two(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2

    def test_domain_error_exit_one(self, capsys, tmp_path):
        # toric ops reject non-all-ones settings with a domain error
        setting = {"dims": [2], "arrows": [[2]], "marked_loops": [0]}
        path = tmp_path / "dim2.json"
        path.write_text(json.dumps(setting))
        code = main(["toric", "invariants", str(path)])
        capsys.readouterr()
        assert code == 1


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qsing.cli", "dim", str(FIXTURES / "conifold.json")],
            capture_output=True,
            text=True,
            cwd=REPO,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["result"]["expected_dim"] == 3
