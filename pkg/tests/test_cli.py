"""Map parsing, the run driver, serialization round trips, and the CSV
side channel."""

import csv
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from minres.cli import ParseError, RunConfig, parse_map, run
from minres.dynrep import DegenerateMapError
from minres.pwl import PWLFunc

F = Fraction


class TestParseMap:
    def test_example_21(self):
        pm = parse_map("(z^3-5)/z^2", 5)
        assert pm.d == 3
        assert list(pm.a) == [1, 0, 0, -5] and list(pm.b) == [0, 1, 0, 0]

    def test_polynomial(self):
        pm = parse_map("z^2", 3)
        assert pm.d == 2 and list(pm.a) == [1, 0, 0] and list(pm.b) == [0, 0, 1]

    def test_degenerate(self):
        with pytest.raises((ParseError, DegenerateMapError)):
            parse_map("(z^2-1)/(z^2-1)", 3)

    def test_list_form(self):
        pm = parse_map("F=[1,0,0,-5];G=[0,1,0,0]", 5)
        assert pm.d == 3 and list(pm.a) == [1, 0, 0, -5]

    def test_content_cleared(self):
        pm = parse_map("(2*z^2-2)/(4*z)", 2)
        assert list(pm.a) == [1, 0, -1] and list(pm.b) == [0, 2, 0]

    def test_rational_coefficients(self):
        pm = parse_map("(z^2/3 - 1)/z", 3)
        assert list(pm.a) == [1, 0, -3] and list(pm.b) == [0, 3, 0]

    def test_parse_errors(self):
        for bad in ("z**", "(z", "z^z", "w + 1"):
            with pytest.raises(ParseError):
                parse_map(bad, 5)


class TestRun:
    def test_example_21_json(self):
        code, out = run(RunConfig(prime=5, algorithm="a", output="json"), "(z^3-5)/z^2")
        assert code == 0
        doc = json.loads(out)
        assert doc["min_value"] == "0"
        assert doc["potential_good_reduction"] is True
        assert doc["locus"]["anchors"][0]["s"] == "-1/3"
        # byte-identical round trip
        assert json.dumps(doc, sort_keys=True, separators=(",", ":")) == out

    def test_example_22_algorithm_b(self):
        code, out = run(RunConfig(prime=2, algorithm="b", output="json"), "(z^2-1)/(2*z)")
        doc = json.loads(out)
        assert code == 0 and doc["hv_min"] == "2" and doc["hv_absolute"] is False

    def test_degree_one_auto(self):
        code, out = run(RunConfig(prime=7, algorithm="auto", output="json"), "7*z")
        doc = json.loads(out)
        assert code == 0 and doc["locus"]["kind"] == "path" and doc["min_value"] == "1"

    def test_text_json_agree(self):
        cfg_t = RunConfig(prime=5, algorithm="both", output="text")
        cfg_j = RunConfig(prime=5, algorithm="both", output="json")
        _, text = run(cfg_t, "(z^3-5)/z^2")
        _, js = run(cfg_j, "(z^3-5)/z^2")
        doc = json.loads(js)
        for key in ("min_value", "ordres_at_gauss", "hv_min"):
            assert f"{key}: {doc[key]}" in text

    def test_exit_codes(self):
        code, _ = run(RunConfig(prime=3), "(z^2-1)/(z^2-1)")
        assert code == 2
        code, _ = run(RunConfig(prime=3), "not a map @@")
        assert code == 2
        code, _ = run(RunConfig(prime=5, algorithm="a", max_ext_degree=2), "(z^3-5)/z^2")
        assert code == 3  # needs a cubic tower

    def test_emit_pwl_reconstructs(self, tmp_path):
        out_csv = tmp_path / "pwl.csv"
        cfg = RunConfig(prime=5, algorithm="a", output="json", emit_pwl=str(out_csv))
        code, out = run(cfg, "(z^3-5)/z^2")
        assert code == 0
        rows = list(csv.DictReader(open(out_csv)))
        assert rows
        by_path = {}
        for row in rows:
            by_path.setdefault(row["path_id"], []).append(
                (int(row["slope"]), F(int(row["intercept_num"]), int(row["intercept_den"])))
            )
        from minres.analysis import analyze
        rep = analyze(parse_map("(z^3-5)/z^2", 5))
        for pd in rep.per_path:
            assert PWLFunc(by_path[str(pd.root_id)]) == pd.chi


class TestCommandLine:
    def test_analyze_subcommand(self):
        r = subprocess.run(
            [sys.executable, "-m", "minres.cli", "analyze", "--phi", "(z^3-5)/z^2",
             "--prime", "5", "--json"],
            capture_output=True, text=True,
        )
        assert r.returncode == 0
        assert json.loads(r.stdout)["min_value"] == "0"

    def test_batch(self, tmp_path):
        batch = tmp_path / "maps.txt"
        batch.write_text("# demo\n5 (z^3-5)/z^2\n2 (z^2-1)/(2*z)\n")
        r = subprocess.run(
            [sys.executable, "-m", "minres.cli", "batch", "--input", str(batch), "--json"],
            capture_output=True, text=True,
        )
        assert r.returncode == 0
        lines = [l for l in r.stdout.splitlines() if l.startswith("{")]
        assert len(lines) == 2
        assert json.loads(lines[0])["potential_good_reduction"] is True
