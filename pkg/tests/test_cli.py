import json

import pytest

from egyfrac.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCompute:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "2", "--a", "1", "--solutions")
        assert code == 0
        assert "R by bruteforce  = 3" in out
        assert "1/2 = 1/3 + 1/6" in out
        assert "agreement: yes" in out

    def test_divisor_path(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "4", "--a", "3")
        assert code == 0
        assert "R by divisor     = 2" in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "7", "--a", "5",
                           "--format", "json", "--solutions")
        assert code == 0
        payload = json.loads(out)
        assert payload["agree"] is True
        assert payload["methods"]["characters"] == payload["methods"]["bruteforce"]

    def test_skips_bruteforce_beyond_budget(self, capsys):
        code, out, _ = run(capsys, "compute", "--n", "1000000", "--a", "3",
                           "--budget", "1000")
        assert code == 0
        assert "bruteforce" not in out


class TestUsageErrors:
    def test_unknown_flag_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["scan", "--bogus"])
        assert exc.value.code == 1

    def test_bad_modulus_exits_1(self, capsys):
        code, _, err = run(capsys, "compute", "--n", "5", "--a", "20000")
        assert code == 1
        assert "error" in err

    def test_bad_checkpoints_exit_1(self, capsys):
        code, _, err = run(capsys, "scan", "--a", "3", "--nmax", "100",
                           "--checkpoints", "abc")
        assert code == 1


class TestScan:
    def test_stdout_rows(self, capsys):
        code, out, _ = run(capsys, "scan", "--a", "3", "--nmax", "1000")
        assert code == 0
        assert "D=0.0" in out  # every character mod 3 squares to principal

    def test_writes_files_and_thread_determinism(self, capsys, tmp_path):
        base1 = tmp_path / "t1" / "scan"
        base8 = tmp_path / "t8" / "scan"
        for base, threads in ((base1, "1"), (base8, "8")):
            code, _, _ = run(capsys, "scan", "--a", "5", "--nmax", "20000",
                             "--out", str(base), "--threads", threads,
                             "--no-plot")
            assert code == 0
        for ext in (".csv", ".json"):
            b1 = (base1.with_suffix(ext)).read_bytes()
            b8 = (base8.with_suffix(ext)).read_bytes()
            assert b1 == b8

    def test_csv_schema_and_json_config(self, capsys, tmp_path):
        base = tmp_path / "scan"
        code, _, _ = run(capsys, "scan", "--a", "5", "--nmax", "5000",
                         "--checkpoints", "1000,5000", "--out", str(base),
                         "--no-plot")
        assert code == 0
        lines = base.with_suffix(".csv").read_text().splitlines()
        assert lines[0] == "# schema=egyfrac.scan/v1"
        assert lines[1].startswith("n_max,s1,s2,d_times_phi_sq,d,d_over_nlog2n")
        assert len(lines) == 2 + 2  # schema + header + two checkpoints
        payload = json.loads(base.with_suffix(".json").read_text())
        assert payload["schema_version"] == 1
        assert payload["config"]["a"] == 5
        assert payload["config"]["checkpoints"] == [1000, 5000]
        assert "threads" not in payload["config"]

    def test_json_format_inlines_rows(self, capsys, tmp_path):
        base = tmp_path / "scanj"
        code, _, _ = run(capsys, "scan", "--a", "3", "--nmax", "1000",
                         "--out", str(base), "--format", "json", "--no-plot")
        assert code == 0
        assert not base.with_suffix(".csv").exists()
        payload = json.loads(base.with_suffix(".json").read_text())
        assert payload["results"]["rows"]

    def test_renders_figure(self, capsys, tmp_path):
        base = tmp_path / "scanfig"
        code, _, _ = run(capsys, "scan", "--a", "3", "--nmax", "2000",
                         "--out", str(base))
        assert code == 0
        png = base.with_suffix(".png").read_bytes()
        assert png[:8] == b"\x89PNG\r\n\x1a\n"


class TestDist:
    def test_files_and_grid(self, capsys, tmp_path):
        base = tmp_path / "dist"
        code, out, _ = run(capsys, "dist", "--a", "1", "--nmax", "20000",
                           "--out", str(base), "--no-plot")
        assert code == 0
        assert "KS distance" in out
        text = base.with_suffix(".csv").read_text()
        lines = text.splitlines()
        assert lines[0] == "# schema=egyfrac.dist/v1"
        assert lines[1] == "z,empirical,gaussian,abs_diff"
        assert len(lines) == 2 + 25
        # plain decimal floats only, never numpy scalar reprs
        assert "np." not in text
        assert all(len(line.split(",")) == 4 for line in lines[2:])
        payload = json.loads(base.with_suffix(".json").read_text())
        res = payload["results"]
        assert res["excluded_small_n"] == 2
        assert len(res["empirical_eligible_denominator"]) == 25
        assert len(res["empirical_all_n_denominator"]) == 25

    def test_zero_R_reported(self, capsys, tmp_path):
        base = tmp_path / "dist5"
        code, _, _ = run(capsys, "dist", "--a", "5", "--nmax", "20000",
                         "--out", str(base), "--no-plot")
        assert code == 0
        payload = json.loads(base.with_suffix(".json").read_text())
        assert payload["results"]["excluded_zero_R"] > 0

    def test_smoke_small(self, capsys):
        code, out, _ = run(capsys, "dist", "--a", "1", "--nmax", "100")
        assert code == 0
        assert "eligible=98" in out


class TestCoeff:
    def test_output_and_files(self, capsys, tmp_path):
        base = tmp_path / "coeff"
        code, out, _ = run(capsys, "coeff", "--a", "1", "--pmax", "10000",
                           "--out", str(base), "--no-plot")
        assert code == 0
        assert "leading coefficient" in out
        payload = json.loads(base.with_suffix(".json").read_text())
        res = payload["results"]
        assert res["value"] > 0
        assert "negative" in res["sign_note"]
        lines = base.with_suffix(".csv").read_text().splitlines()
        assert lines[1] == "p_cutoff,value"

    def test_prefactor_path_a2(self, capsys):
        code, out, _ = run(capsys, "coeff", "--a", "2", "--pmax", "1000")
        assert code == 0
        assert "a=2" in out


class TestVerify:
    def test_quick_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "quick")
        assert code == 0
        assert "FAIL" not in out
        assert "checks passed" in out

    def test_characters_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "characters")
        assert code == 0
        assert out.count("PASS") == 2
