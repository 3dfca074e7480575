"""Command-line interface: rendered output, exit codes, file round trips."""

import csv
import io
import json
import re

import pytest

from skewsum.cli import main, parse_distribution
from skewsum.distributions import MixtureNormal, Normal
from skewsum.errors import InvalidArgumentError
from skewsum.tables import dump_table_asset


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestTestCommand:
    def test_published_case_renders_reject(self, capsys):
        code, out, _ = run_cli(capsys, "test", "--scenario", "s1", "--a", "2.25",
                               "--m", "16", "--b", "74.25", "--n", "40")
        assert code == 0
        assert "T1 = 0.618" in out
        assert "critical = 0.319" in out
        assert "Reject" in out

    def test_symmetric_s2_not_rejected(self, capsys):
        code, out, _ = run_cli(capsys, "test", "--scenario", "s2", "--q1", "1",
                               "--m", "2", "--q3", "3", "--n", "21")
        assert code == 0
        assert "T2 = 0.000" in out
        assert "Not reject" in out

    def test_degenerate_range_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "test", "--scenario", "s1", "--a", "5",
                               "--m", "5", "--b", "5", "--n", "9")
        assert code == 1
        assert "zero" in err or "degenerate" in err.lower()

    def test_invalid_flags_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["test", "--scenario", "s1", "--a", "oops", "--m", "1",
                  "--b", "2", "--n", "9"])
        assert exc.value.code == 2

    def test_validation_error_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "test", "--scenario", "s1", "--a", "3",
                               "--m", "1", "--b", "5", "--n", "9")
        assert code == 2
        assert "ordering" in err

    def test_json_format_round_trips(self, capsys):
        code, out, _ = run_cli(capsys, "test", "--scenario", "s1", "--a", "2.25",
                               "--m", "16", "--b", "74.25", "--n", "40",
                               "--format", "json")
        payload = json.loads(out)
        assert payload["reject"] is True
        assert payload["statistic"] == pytest.approx(0.618, abs=0.001)

    def test_json_numbers_carry_six_significant_digits(self, capsys):
        _, out, _ = run_cli(capsys, "test", "--scenario", "s1", "--a", "2.25",
                            "--m", "16", "--b", "74.25", "--n", "40",
                            "--format", "json")
        stat = re.search(r'"statistic": ([0-9.]+)', out).group(1)
        assert len(stat.replace(".", "").lstrip("0")) >= 6

    def test_csv_format(self, capsys):
        _, out, _ = run_cli(capsys, "test", "--scenario", "s1", "--a", "2.25",
                            "--m", "16", "--b", "74.25", "--n", "40",
                            "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "scenario"
        assert rows[1][0] == "s1"


class TestEstimateCommand:
    def test_known_values(self, capsys):
        code, out, _ = run_cli(capsys, "estimate", "--scenario", "s1", "--a",
                               "16.75", "--m", "39.75", "--b", "89.25", "--n", "15")
        assert code == 0
        assert "44.31" in out
        assert "20.84" in out

    def test_mean_sd_passthrough(self, capsys):
        code, out, _ = run_cli(capsys, "estimate", "--scenario", "mean_sd",
                               "--mean", "46.5", "--sd", "18.5", "--n", "24",
                               "--format", "json")
        payload = json.loads(out)
        assert payload["mean"] == 46.5 and payload["sd"] == 18.5


class TestCritvalCommand:
    def test_table_lookup(self, capsys):
        code, out, _ = run_cli(capsys, "critval", "--scenario", "s3", "--n", "5")
        assert code == 0
        assert "1.0129" in out
        assert "table" in out

    def test_unsupported_alpha_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "critval", "--scenario", "s1", "--n", "21",
                               "--alpha", "0.01")
        assert code == 2
        assert "alpha" in err


class TestMetaCommand:
    def test_bundled_run_summary(self, capsys, tmp_path):
        forest = tmp_path / "forest.csv"
        code, out, _ = run_cli(capsys, "meta", "--forest-out", str(forest))
        assert code == 0
        assert "6 total, 4 included, 2 excluded" in out
        assert "fixed effect" in out and "random effect" in out
        rows = list(csv.reader(io.StringIO(forest.read_text())))
        assert rows[0] == ["id", "md", "ci_low", "ci_high", "weight_pct", "model"]
        assert len(rows) == 1 + 4 + 2

    def test_missing_file_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "meta", "--input", "/no/such/file.csv")
        assert code == 1

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "meta", "--format", "json")
        payload = json.loads(out)
        assert payload["fixed"]["pooled_md"] == pytest.approx(-16.97, abs=0.05)
        assert len(payload["forest"]) == 6

    def test_force_include_flag(self, capsys):
        code, out, _ = run_cli(capsys, "meta", "--force-include",
                               "davies-1985,grange-1985", "--format", "json")
        payload = json.loads(out)
        assert all(d["included"] for d in payload["decisions"])


class TestSimulateCommand:
    def test_identical_output_files(self, capsys, tmp_path):
        args = ["simulate", "--experiment", "type1", "--scenario", "s1",
                "--n-grid", "5", "--reps", "1000", "--seed", "7"]
        first = tmp_path / "one"
        second = tmp_path / "two"
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        capsys.readouterr()
        assert (first / "type1.csv").read_text() == (second / "type1.csv").read_text()
        assert (first / "type1.json").read_text() == (second / "type1.json").read_text()

    def test_csv_to_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--experiment", "type1",
                               "--scenario", "s2", "--n-grid", "9",
                               "--reps", "1000", "--seed", "3")
        assert code == 0
        header = out.splitlines()[0]
        assert header == "experiment,scenario,n,rate,se,reps,seed"

    def test_fixed_threshold_csv(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--experiment", "fixed-threshold",
                               "--reps", "2000", "--seed", "5")
        assert code == 0
        assert "type1_rate" in out and "power" in out

    def test_off_grid_rejected_without_flag(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--experiment", "type1",
                               "--scenario", "s1", "--n-grid", "20",
                               "--reps", "1000", "--seed", "1")
        assert code == 2
        assert "4Q + 1" in err


class TestDistributionParsing:
    def test_presets(self):
        assert parse_distribution("mixture") == MixtureNormal(0.3, -2.0, 1.0, 2.0, 1.0)
        assert parse_distribution("normal:3,2") == Normal(3.0, 2.0)

    def test_unknown_name(self):
        with pytest.raises(InvalidArgumentError):
            parse_distribution("cauchy")


class TestDumpTables:
    def test_dump_is_byte_identical_to_asset(self, capsys):
        code, out, _ = run_cli(capsys, "dump-tables")
        assert code == 0
        assert out == dump_table_asset()
