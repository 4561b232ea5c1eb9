import pytest

from terncwc.cli import main


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestPlan:
    def test_example_block(self, capsys):
        rc, out, _ = run(capsys, ["plan", "-n", "29", "-w", "5"])
        assert rc == 0
        assert "branch: T1_NONDIV" in out
        assert "x: 23" in out
        assert "upper bound: 52" in out
        assert "balanced: impossible (y = 28.5)" in out
        assert "regime: ok" in out

    def test_below_regime_flag(self, capsys):
        rc, out, _ = run(capsys, ["plan", "-n", "3", "-w", "5"])
        assert rc == 0
        assert "upper bound: 1" in out
        assert "regime: below asymptotic regime" in out

    def test_bad_weight(self, capsys):
        rc, _, err = run(capsys, ["plan", "-n", "10", "-w", "2"])
        assert rc == 2
        assert "error" in err


class TestBuild:
    def test_roundtrip(self, capsys, tmp_path):
        out_path = tmp_path / "c125.cwc1"
        rc, out, _ = run(capsys, ["build", "-n", "125", "-w", "5", "-o", str(out_path)])
        assert rc == 0
        assert "sub-code check: ok" in out
        assert "quotient 700" in out
        assert out_path.exists()
        layout = (out_path.parent / (out_path.name + ".layout")).read_text()
        assert "group cyclic: [0, 125)" in layout

        rc, out, _ = run(capsys, ["verify", str(out_path)])
        assert rc == 0
        assert "valid: true" in out

    def test_out_of_regime(self, capsys, tmp_path):
        rc, _, err = run(
            capsys, ["build", "-n", "29", "-w", "5", "-o", str(tmp_path / "x.cwc1")]
        )
        assert rc == 2
        assert "requires h > 5m = 1255" in err

    def test_with_packing_table(self, capsys, tmp_path):
        out_path = tmp_path / "c125.cwc1"
        rc, out, _ = run(
            capsys,
            ["build", "-n", "125", "-w", "5", "-o", str(out_path), "--with-packing"],
        )
        assert rc == 0
        assert "x_target" in out and "x_achieved" in out
        row = out.splitlines()[-1].split()
        assert row[0] == "125" and row[3] == "700"

    def test_sidecar_override(self, capsys, tmp_path):
        out_path = tmp_path / "c.cwc1"
        side = tmp_path / "custom.layout"
        rc, _, _ = run(
            capsys,
            ["build", "-n", "125", "-w", "5", "-o", str(out_path), "--sidecar", str(side)],
        )
        assert rc == 0
        assert side.exists()


class TestVerify:
    def test_duplicate_word_invalid(self, capsys, tmp_path):
        path = tmp_path / "dup.cwc1"
        path.write_text("3 5 8\n122\n122\n")
        rc, out, _ = run(capsys, ["verify", str(path)])
        assert rc == 1
        assert "valid: false" in out
        assert "duplicates: 1" in out

    def test_truncated_line_parse_error(self, capsys, tmp_path):
        path = tmp_path / "bad.cwc1"
        path.write_text("3 5 8\n122\n12\n")
        rc, _, err = run(capsys, ["verify", str(path)])
        assert rc == 3
        assert "line 3: expected 3 symbols, got 2" in err

    def test_missing_file(self, capsys, tmp_path):
        rc, _, err = run(capsys, ["verify", str(tmp_path / "nope.cwc1")])
        assert rc == 3
        assert "i/o error" in err

    def test_weight_mismatch_vs_header(self, capsys, tmp_path):
        path = tmp_path / "w.cwc1"
        path.write_text("4 4 6\n1220\n")
        rc, out, _ = run(capsys, ["verify", str(path)])
        assert rc == 1
        assert "words have weight 5, header says 4" in out

    def test_mixed_weights_invalid(self, capsys, tmp_path):
        path = tmp_path / "m.cwc1"
        path.write_text("4 4 6\n1120\n1100\n")
        rc, out, _ = run(capsys, ["verify", str(path)])
        assert rc == 1
        assert "weight mismatch" in out


class TestOracle:
    def test_tiny(self, capsys):
        rc, out, _ = run(capsys, ["oracle", "-n", "3", "-w", "5"])
        assert rc == 0
        assert "A3 = 1" in out

    def test_witness_and_table(self, capsys, tmp_path):
        wit = tmp_path / "wit.cwc1"
        table = tmp_path / "t.csv"
        rc, out, _ = run(
            capsys,
            ["oracle", "-n", "6", "-w", "4", "--witness", str(wit), "--table", str(table)],
        )
        assert rc == 0
        assert "A3 = 5" in out
        rc, out, _ = run(capsys, ["verify", str(wit)])
        assert rc == 0
        assert table.read_text().startswith("n,d,w,A3,runtime_s\n6,6,4,5,")

    def test_guard_exit_code(self, capsys, monkeypatch):
        monkeypatch.setenv("TERNCWC_ORACLE_GUARD", "10")
        rc, _, err = run(capsys, ["oracle", "-n", "9", "-w", "5"])
        assert rc == 2
        assert "guard" in err

    def test_explicit_distance(self, capsys):
        rc, out, _ = run(capsys, ["oracle", "-n", "6", "-w", "3", "-d", "4"])
        assert rc == 0
        assert "A3 = 9" in out


class TestModuleEntry:
    def test_python_dash_m(self):
        import subprocess
        import sys

        out = subprocess.run(
            [sys.executable, "-m", "terncwc", "plan", "-n", "29", "-w", "5"],
            capture_output=True,
            text=True,
        )
        assert out.returncode == 0
        assert "T1_NONDIV" in out.stdout
