import json

import pytest
from click.testing import CliRunner

from sarkisov_links.main import cli


@pytest.fixture
def runner():
    return CliRunner()


class TestClassifyCommand:
    def test_case_99_text(self, runner):
        """(8, 5) prints an E1-E1 report and exits 0."""
        result = runner.invoke(cli, ["classify", "-d", "8", "-g", "5"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "verdict: E1-E1" in lines
        assert "partner d=8 g=5 (P3)" in lines
        assert "flopping curves: 10" in lines

    def test_case_76_json(self, runner):
        """JSON output parses and names the partner."""
        result = runner.invoke(cli, ["classify", "-d", "10", "-g", "11", "--format", "json"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["verdict"] == "E1_E1"
        assert payload["flopping_curves"] == 20
        assert (payload["partners"][0]["d_plus"], payload["partners"][0]["g_plus"]) == (10, 11)

    def test_csv(self, runner):
        """CSV output is a header and one row."""
        result = runner.invoke(cli, ["classify", "-d", "8", "-g", "5", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("8,5,8,10,SMALL_CERTIFIED,E1_E1,8,5,10,")

    def test_not_weak_fano_is_conclusive(self, runner):
        """(9, 5) is a definite answer."""
        result = runner.invoke(cli, ["classify", "-d", "9", "-g", "5"])
        assert result.exit_code == 0
        assert "verdict: NOT_WEAK_FANO" in result.stdout

    def test_inconclusive(self, runner):
        """(8, 3) has no partner and exits 2."""
        result = runner.invoke(cli, ["classify", "-d", "8", "-g", "3"])
        assert result.exit_code == 2
        assert "verdict: INCONCLUSIVE" in result.stdout

    def test_no_k3_hypothesis(self, runner):
        """Without the K3 assumption (8, 5) is inconclusive."""
        result = runner.invoke(cli, ["classify", "-d", "8", "-g", "5", "--no-k3-hypothesis"])
        assert result.exit_code == 2

    def test_degree_below_range(self, runner):
        """d < 5 is a usage error."""
        result = runner.invoke(cli, ["classify", "-d", "4", "-g", "0"])
        assert result.exit_code == 1

    def test_missing_genus(self, runner):
        """Both d and g are required."""
        result = runner.invoke(cli, ["classify", "-d", "8"])
        assert result.exit_code == 1

    def test_unknown_ambient(self, runner):
        """Unknown labels are reported on stderr."""
        result = runner.invoke(cli, ["classify", "-d", "8", "-g", "5", "--ambient", "P4"])
        assert result.exit_code == 1
        assert "unknown ambient label 'P4'" in result.stderr

    def test_catalog_file(self, runner, tmp_path):
        """A catalog without P3 cannot place the curve."""
        path = tmp_path / "catalog.txt"
        path.write_text("Q 3 54\n")
        result = runner.invoke(cli, ["classify", "-d", "8", "-g", "5", "--catalog", str(path)])
        assert result.exit_code == 1

    def test_invalid_config(self, runner, tmp_path):
        """A bad configuration file value is a usage error."""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"partner_box": 0}))
        result = runner.invoke(cli, ["--config", str(path), "classify", "-d", "8", "-g", "5"])
        assert result.exit_code == 1
        assert "partner_box must be positive" in result.stderr


class TestScanCommand:
    def test_csv_rows(self, runner):
        """One header and one row per cell."""
        result = runner.invoke(
            cli, ["scan", "--d-min", "8", "--d-max", "8", "--g-min", "4", "--g-max", "5", "--box", "30"]
        )
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].startswith("d,g,anticanonical_cube")
        assert len(lines) == 3
        assert lines[2].startswith("8,5,8,10,SMALL_CERTIFIED,E1_E1")

    def test_output_file(self, runner, tmp_path):
        """--output writes the table and reports on stderr."""
        path = tmp_path / "scan.csv"
        result = runner.invoke(
            cli,
            ["scan", "--d-min", "10", "--d-max", "10", "--g-min", "11", "--g-max", "11", "--output", str(path)],
        )
        assert result.exit_code == 0
        assert result.stdout == ""
        assert "Wrote 1 rows" in result.stderr
        assert path.read_text().splitlines()[1].startswith("10,11,4,20,SMALL_CERTIFIED,E1_E1,10,11,20,")

    def test_empty_range(self, runner):
        """An empty genus range is an error."""
        result = runner.invoke(cli, ["scan", "--d-max", "8", "--g-min", "5", "--g-max", "4"])
        assert result.exit_code == 1
        assert "empty genus range" in result.stderr


class TestHelperCommands:
    def test_k3_nef_and_free(self, runner):
        """4H_S - C on the (8, 5) quartic lattice."""
        result = runner.invoke(cli, ["k3", "--d", "8", "--g", "5"])
        assert result.exit_code == 0
        assert result.stdout.strip() == "nef: yes, free: yes"

    def test_k3_not_nef(self, runner):
        """3H_S - C is neither nef nor free."""
        result = runner.invoke(cli, ["k3", "--d", "8", "--g", "5", "--k", "3"])
        assert result.stdout.strip() == "nef: no, free: no"

    def test_k3_invalid(self, runner):
        """Negative genus is rejected."""
        result = runner.invoke(cli, ["k3", "--d", "8", "--g=-1"])
        assert result.exit_code == 1

    def test_secants(self, runner):
        """N(8, 5) = 10."""
        result = runner.invoke(cli, ["secants", "--d", "8", "--g", "5"])
        assert result.exit_code == 0
        assert result.stdout.strip() == "10"

    def test_secants_out_of_domain(self, runner):
        """d = 4 is outside the formula's domain."""
        result = runner.invoke(cli, ["secants", "--d", "4", "--g", "0"])
        assert result.exit_code == 1

    @pytest.mark.parametrize(
        "classes, expected",
        [(["4H-1E", "4H-1E", "4H-1E"], "8"), (["4H-1E", "4H-1E", "3H-1E"], "0"), (["E", "E", "E"], "-40")],
    )
    def test_triple(self, runner, classes, expected):
        """Triple products on Bl_C(P3) for (8, 5)."""
        result = runner.invoke(cli, ["triple", *classes, "--d", "8", "--g", "5"])
        assert result.exit_code == 0
        assert result.stdout.strip() == expected

    def test_triple_parse_error(self, runner):
        """The offending token is named."""
        result = runner.invoke(cli, ["triple", "4H-1X", "E", "E", "--d", "8", "--g", "5"])
        assert result.exit_code == 1
        assert "'-1X'" in result.stderr

    def test_catalog(self, runner):
        """The built-in catalog lists P3 first."""
        result = runner.invoke(cli, ["catalog"])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[2].split()[:2] == ["P3", "4"]

    def test_catalog_raw(self, runner):
        """--raw prints the catalog file format."""
        result = runner.invoke(cli, ["catalog", "--raw"])
        assert result.stdout.startswith("# source: builtin\n")
        assert "P3 4 64\n" in result.stdout

    def test_catalog_bad_file(self, runner, tmp_path):
        """Malformed catalogs name the line."""
        path = tmp_path / "bad.txt"
        path.write_text("P3 4 64\nQ 3\n")
        result = runner.invoke(cli, ["catalog", "--catalog", str(path)])
        assert result.exit_code == 1
        assert "line 2" in result.stderr
