import json

import pytest

from crankrank import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSptOspt:
    def test_first_rows(self, capsys):
        code, out, _ = run_cli(capsys, "spt-ospt", "--nmax", "5")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "N,spt,ospt"
        assert lines[1:] == ["1,1,1", "2,3,1", "3,5,1", "4,10,2", "5,14,2"]

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "spt-ospt", "--nmax", "3",
                               "--format", "json")
        assert code == 0
        assert json.loads(out) == [[1, "1", "1"], [2, "3", "1"], [3, "5", "1"]]


class TestTables:
    def test_nmax_zero_single_row(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--nmax", "0")
        assert code == 0
        assert out == "kind,n,m,coefficient\ncrank,0,0,1\n"

    def test_combinatorial_convention(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--nmax", "1",
                               "--convention", "combinatorial")
        assert code == 0
        assert out == "kind,n,m,coefficient\ncrank,0,0,1\ncrank,1,0,1\n"

    def test_generating_function_convention(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--nmax", "1")
        lines = out.strip().split("\n")
        assert lines[1:] == ["crank,0,0,1", "crank,1,-1,1", "crank,1,0,-1",
                             "crank,1,1,1"]

    def test_both_kinds(self, capsys):
        code, out, _ = run_cli(capsys, "tables", "--nmax", "2", "--kind", "both")
        assert code == 0
        assert "rank,2," in out and "crank,2," in out


class TestVerify:
    def test_small_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--nmax", "40")
        assert code == 0
        assert "FAIL" not in out
        assert "PASS table-vs-brute-crank" in out

    def test_json_report(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, _, _ = run_cli(capsys, "verify", "--nmax", "25", "--out", str(path))
        assert code == 0
        data = json.loads(path.read_text())
        assert data["passed"] is True
        assert any(c["name"] == "parity-predictor" for c in data["checks"])

    def test_failure_exits_two(self, capsys, monkeypatch):
        from crankrank import verification

        def fake_suite(nmax, brute_nmax=None, ctx=None):
            return [verification.CheckResult(
                "stub-check", False, "forced failure",
                counterexample={"N": 7},
            )]

        monkeypatch.setattr(verification, "run_suite", fake_suite)
        code, out, _ = run_cli(capsys, "verify", "--nmax", "5")
        assert code == 2
        assert "FAIL stub-check" in out
        assert "first counterexample" in out


class TestMoments:
    def test_positive_default(self, capsys):
        code, out, _ = run_cli(capsys, "moments", "--nmax", "6", "--r", "1")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "kind,variant,r,ell,N,value"
        assert "crank,positive,1,1,4,6" in lines
        assert "rank,positive,1,3,4,4" in lines

    def test_symmetrized(self, capsys):
        code, out, _ = run_cli(capsys, "moments", "--nmax", "4", "--r", "2",
                               "--variant", "symmetrized", "--ell", "1")
        assert code == 0
        assert "crank,symmetrized,2,1,2,1" in out

    def test_bad_order(self, capsys):
        code, _, err = run_cli(capsys, "moments", "--nmax", "4", "--r", "0")
        assert code == 1
        assert "usage error" in err


class TestParityCommand:
    def test_rows(self, capsys):
        code, out, _ = run_cli(capsys, "parity", "--nmax", "6")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("N,24N-1")
        assert lines[1] == "1,23,23,1,1,1"
        assert len(lines) == 7


class TestAsym:
    def test_small_ladder_report(self, capsys):
        code, out, _ = run_cli(capsys, "asym", "--ladder", "60,120,240",
                               "--r", "2")
        assert code == 0
        data = json.loads(out)
        targets = {t["target"] for t in data["trends"]}
        assert targets == {"M_pos", "N_pos", "diff"}
        assert len(data["ospt_vs_quarter_p"]["ratios"]) == 3

    def test_ladder_validation(self, capsys):
        code, _, err = run_cli(capsys, "asym", "--ladder", "100,50,200")
        assert code == 1
        assert "increasing" in err


class TestCircleCommand:
    def test_single_report(self, capsys):
        code, out, _ = run_cli(capsys, "circle", "--ladder", "50",
                               "--r", "3", "--ell", "1")
        assert code == 0
        data = json.loads(out)
        assert len(data) == 1
        assert data[0]["relative_error"] < 1e-6

    def test_bound_grid_csv(self, capsys):
        code, out, _ = run_cli(capsys, "circle", "--ladder", "50,100",
                               "--r", "3", "--ell", "1", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "N,x,y,lhs,rhs_bound,ratio"
        assert len(lines) == 13  # 6 window samples per ladder point
        ratios = [float(ln.split(",")[-1]) for ln in lines[1:]]
        assert all(0 <= x < 1 for x in ratios)

    def test_bound_grid_needs_single_pair(self, capsys):
        code, _, err = run_cli(capsys, "circle", "--ladder", "50",
                               "--format", "csv")
        assert code == 1
        assert "exactly one" in err


class TestUsage:
    def test_unknown_command(self, capsys):
        assert run_cli(capsys, "mystery")[0] == 1

    def test_unknown_flag(self, capsys):
        assert run_cli(capsys, "tables", "--mystery")[0] == 1

    def test_bad_int_list(self, capsys):
        assert run_cli(capsys, "asym", "--ladder", "a,b")[0] == 1

    def test_resource_exit_code(self, capsys):
        # nmax far past the enumeration cap still works for series routes;
        # force the brute cap through verify
        code, _, err = run_cli(capsys, "tables", "--nmax", "-3")
        assert code == 1


class TestDeterminism:
    def test_identical_output(self, capsys):
        _, out1, _ = run_cli(capsys, "spt-ospt", "--nmax", "12")
        _, out2, _ = run_cli(capsys, "spt-ospt", "--nmax", "12")
        assert out1 == out2

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        path = tmp_path / "x.csv"
        _, out, _ = run_cli(capsys, "parity", "--nmax", "5")
        code, _, _ = run_cli(capsys, "parity", "--nmax", "5", "--out", str(path))
        assert code == 0
        assert path.read_text() == out
