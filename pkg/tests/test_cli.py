import csv
import io
import json
import re
import subprocess
import sys

import pytest

from fareytiles import cli
from fareytiles.enumeration import tessellation
from fareytiles.svg import render_svg
from fareytiles.verify import Check

F8 = ("0/1 1/8 1/7 1/6 1/5 1/4 2/7 1/3 3/8 2/5 3/7 1/2 4/7 3/5 5/8 2/3 5/7 "
      "3/4 4/5 5/6 6/7 7/8 1/1")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out), out


class TestCommands:
    def test_polys(self, capsys):
        code, out, _ = run(capsys, "polys", "--tuple", "1,2,3", "--tuple", "2,3")
        assert code == 0
        assert out == "p(1, 2, 3) = 2\np(2, 3) = 5\n"

    def test_polys_json(self, capsys):
        doc, _ = run_json(capsys, "polys", "--tuple", "5,1,4,1")
        row = doc["results"][0]
        assert row["symmetric"] and row["reduction_identity"]

    def test_farey_sequence(self, capsys):
        code, out, _ = run(capsys, "farey", "--Q", "8")
        assert code == 0 and out.strip() == F8

    def test_farey_windows(self, capsys):
        doc, _ = run_json(capsys, "farey", "--Q", "8", "--r", "1")
        assert doc["results"]["chains"] == [[1], [2], [3], [5], [7]]

    def test_farey_oracle(self, capsys):
        doc, _ = run_json(capsys, "farey", "--chain", "2,1,6", "--Q-max", "200")
        assert doc["results"]["admissible"]
        _, out, _ = run(capsys, "farey", "--chain", "1,1", "--Q-max", "50")
        assert out.strip() == "not-found-below(50)"

    def test_chains_json(self, capsys):
        doc, _ = run_json(capsys, "chains", "--r", "2", "--cap", "9")
        assert doc["command"] == "chains"
        assert doc["params"] == {"r": 2, "norm_cap": 9}
        assert (doc["results"]["count"], doc["results"]["delta"]) == (21, 3)

    def test_chains_csv(self, capsys):
        code, out, _ = run(capsys, "chains", "--r", "2", "--cap", "4", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == '"chain","norm"'
        assert '"1,2",2' in lines
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert len(rows) == 11 and all(len(r) == 2 for r in rows)

    def test_tiles_are_exact(self, capsys):
        doc, _ = run_json(capsys, "tiles", "--chain", "2")
        tile = doc["results"][0]
        assert tile["status"] == "nonempty-with-interior"
        assert {tuple(v) for v in tile["vertices"]} == {("1/3", "2/3"), ("1/2", "1/2"), ("1/1", "2/3"), ("1/1", "1/1")}

    def test_tiles_csv_has_no_decimals(self, capsys):
        _, out, _ = run(capsys, "tiles", "--r", "2", "--cap", "6", "--format", "csv")
        assert not re.search(r"\d\.\d", out)

    def test_constants(self, capsys):
        code, out, _ = run(capsys, "constants", "--r-max", "10")
        assert code == 0
        assert "C(2) = 3" in out and "C(10) = 721" in out
        assert "MISMATCH" not in out

    def test_verify_quick(self, capsys):
        code, out, _ = run(capsys, "verify", "--quick")
        assert code == 0
        assert out.strip().endswith("checks passed")

    def test_render_to_file(self, capsys, tmp_path):
        target = tmp_path / "t.svg"
        code, out, _ = run(capsys, "render", "--r", "1", "--cap", "3", "-o", str(target))
        assert code == 0 and out == ""
        assert target.read_text().count('class="tile"') == 3


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["chains", "--r", "2"],
        ["chains", "--r", "0", "--cap", "4"],
        ["constants", "--r-max", "3", "--confirm-window", "1"],
        ["farey"],
        ["polys"],
        ["chains", "--r", "2", "--cap", "4", "--format", "svg"],
        ["chains", "--r", "2", "--cap", "4", "--workers", "0"],
    ])
    def test_usage(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2
        assert out == "" and err

    def test_argparse_rejects_bad_tuple(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["polys", "--tuple", "1,x"])
        assert exc.value.code == 2

    def test_verify_failure(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "run_all", lambda quick, workers: [
            Check("fine", True), Check("broken", False, "counterexample")])
        code, out, _ = run(capsys, "verify")
        assert code == 3
        assert "1/2 checks passed" in out

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "fareytiles", "chains", "--r", "2"],
                              capture_output=True, text=True)
        assert proc.returncode == 2


class TestJsonReports:
    @pytest.mark.parametrize("argv", [
        ["chains", "--r", "3", "--cap", "6", "--list"],
        ["tiles", "--r", "2", "--cap", "5"],
        ["constants", "--r-max", "4"],
        ["farey", "--Q", "6"],
        ["verify", "--quick"],
    ])
    def test_round_trip(self, capsys, argv):
        doc, text = run_json(capsys, *argv)
        assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == text
        assert set(doc) <= {"command", "params", "results", "invariant_ledger"}

    def test_verify_ledger(self, capsys):
        doc, _ = run_json(capsys, "verify", "--quick")
        assert doc["results"]["passed"]
        assert all(entry["passed"] for entry in doc["invariant_ledger"])

    def test_vertices_in_lowest_terms(self, capsys):
        doc, _ = run_json(capsys, "tiles", "--r", "3", "--cap", "8")
        from math import gcd
        for tile in doc["results"]:
            for v in tile["vertices"]:
                for s in v:
                    num, den = map(int, s.split("/"))
                    assert den > 0 and gcd(num, den) == 1


class TestSvg:
    def test_empty_is_outline_only(self):
        svg = render_svg([])
        assert svg.count("<path") == 1
        assert 'class="outline"' in svg
        assert 'viewBox="0 0 800 800"' in svg

    def test_three_tiles(self):
        svg = render_svg(tessellation(1, 3), 300)
        assert svg.count('class="tile"') == 3
        assert svg.count("<path") == 4

    def test_top_right_corner_is_flipped(self):
        svg = render_svg([], 100)
        # (0,1) -> (0,0), (1,0) -> (100,100), (1,1) -> (100,0)
        assert 'class="outline" d="M 0 0 L 100 100 L 100 0 Z"' in svg

    def test_deterministic(self):
        tiles = tessellation(2, 6)
        assert render_svg(tiles) == render_svg(tessellation(2, 6))

    def test_cli_is_deterministic(self, capsys):
        _, a, _ = run(capsys, "render", "--r", "2", "--cap", "5")
        _, b, _ = run(capsys, "render", "--r", "2", "--cap", "5")
        assert a == b and a.startswith("<")
