"""End-to-end command-line behaviour: exit codes, determinism, output formats."""

import json
from fractions import Fraction

import pytest

from saxl.cli import main


@pytest.fixture()
def frobenius_catalogue(tmp_path):
    """A five-point Frobenius group of order 20; every distinct pair is a base."""
    text = (
        "name F20\n"
        "degree 5\n"
        "gen (1,2,3,4,5)\n"
        "gen (2,3,5,4)\n"
        "expect order 20\n"
    )
    path = tmp_path / "cat.txt"
    path.write_text(text)
    return str(path)


class TestExitCodes:
    def test_cap_exceeded_is_2(self, capsys):
        code = main(["graph", "--ksubsets", "6", "2", "--point-cap", "5"])
        assert code == 2
        assert "cap exceeded" in capsys.readouterr().err

    def test_unknown_catalogue_name_is_1(self, capsys):
        code = main(["analyze", "--catalogue", "NoSuchEntry"])
        assert code == 1
        err = capsys.readouterr().err
        assert "unknown catalogue entry" in err
        assert "M11_2S4" in err  # the error lists what is available

    def test_unknown_sweep_is_1(self, capsys):
        code = main(["verify", "frobnicate"])
        assert code == 1
        assert "unknown sweep" in capsys.readouterr().err

    def test_psl2_without_q_is_1(self, capsys):
        assert main(["graph", "--psl2", "c2"]) == 1
        assert "--q" in capsys.readouterr().err

    def test_no_action_spec_is_1(self, capsys):
        assert main(["analyze"]) == 1
        assert "exactly one" in capsys.readouterr().err

    def test_two_action_specs_is_1(self, capsys):
        assert main(["analyze", "--ksubsets", "5", "2", "--psl2", "c2", "--q", "9"]) == 1
        assert "exactly one" in capsys.readouterr().err

    def test_nonpositive_cap_is_1(self, capsys):
        assert main(["analyze", "--ksubsets", "5", "2", "--point-cap", "0"]) == 1
        assert "positive" in capsys.readouterr().err

    def test_missing_catalogue_file_is_1(self, capsys, tmp_path):
        path = str(tmp_path / "absent.txt")
        assert main(["analyze", "--catalogue", "X", "--catalogue-path", path]) == 1

    def test_bad_threads_env_is_1(self, capsys, monkeypatch):
        monkeypatch.setenv("SAXL_THREADS", "-1")
        assert main(["analyze", "--ksubsets", "5", "2"]) == 1
        monkeypatch.setenv("SAXL_THREADS", "lots")
        assert main(["analyze", "--ksubsets", "5", "2"]) == 1

    def test_usage_error_exits_1(self):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 1


class TestAnalyze:
    def test_frobenius_report(self, capsys, frobenius_catalogue):
        code = main(["analyze", "--catalogue", "F20", "--catalogue-path", frobenius_catalogue])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["schema"] == 1
        assert report["name"] == "F20"
        assert report["n"] == 5
        assert report["stab_order"] == 4
        assert Fraction(report["q_exact"]["num"], report["q_exact"]["den"]) == Fraction(1, 5)
        assert report["regular_count"] == 1
        assert report["star_ok"] is True

    def test_byte_identical_runs(self, capsys):
        assert main(["analyze", "--psl2", "c2", "--q", "9"]) == 0
        first = capsys.readouterr().out
        assert main(["analyze", "--psl2", "c2", "--q", "9"]) == 0
        assert capsys.readouterr().out == first

    def test_q5_warning_lands_in_report(self, capsys):
        assert main(["analyze", "--psl2", "c2", "--q", "5"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert any("q = 5" in w for w in report["warnings"])

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        assert main(["analyze", "--ksubsets", "5", "2"]) == 0
        stdout = capsys.readouterr().out
        target = tmp_path / "report.json"
        assert main(["analyze", "--ksubsets", "5", "2", "--out", str(target)]) == 0
        assert target.read_text() == stdout

    def test_section_toggles(self, capsys):
        assert main(["analyze", "--ksubsets", "5", "2", "--no-classes", "--no-star"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["q_hat"] is None
        assert report["star_ok"] is None

    def test_exact_search(self, capsys):
        assert main(["analyze", "--ksubsets", "5", "2", "--alternating", "--exact"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["clique_exact"] == 4
        assert report["independence_exact"] == 2


class TestGraph:
    def test_complete_graph_edges(self, capsys, frobenius_catalogue):
        code = main([
            "graph", "--catalogue", "F20", "--catalogue-path", frobenius_catalogue,
            "--format", "edges",
        ])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 10  # K5
        assert lines[0] == "0 1"

    def test_dot_format_default(self, capsys, frobenius_catalogue):
        code = main(["graph", "--catalogue", "F20", "--catalogue-path", frobenius_catalogue])
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("graph {")
        assert "0 -- 1;" in out

    def test_q5_warning_goes_to_stderr(self, capsys):
        assert main(["graph", "--psl2", "c2", "--q", "5"]) == 0
        captured = capsys.readouterr()
        assert "q = 5" in captured.err
        assert captured.out.startswith("graph {")

    def test_variant_selector(self, capsys):
        assert main(["graph", "--psl2", "c2", "--q", "9", "--variant", "psigma", "--format", "edges"]) == 0
        psigma = capsys.readouterr().out
        assert main(["graph", "--psl2", "c2", "--q", "9", "--format", "edges"]) == 0
        psl = capsys.readouterr().out
        # extending the group can only delete base pairs
        assert set(psigma.splitlines()) <= set(psl.splitlines())


class TestVerify:
    def test_euler_sweep_payload(self, capsys):
        code = main(["verify", "euler", "--nmax", "20000"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["sweep"] == "euler"
        assert payload["ok"] is True
        assert payload["checks"]
        assert all(c["ok"] for c in payload["checks"])
        assert {"name", "ok", "detail"} <= set(payload["checks"][0])

    def test_johnson_sweep(self, capsys):
        code = main(["verify", "johnson"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is True

    def test_verify_out_file(self, capsys, tmp_path):
        target = tmp_path / "euler.json"
        code = main(["verify", "euler", "--nmax", "5000", "--out", str(target)])
        assert code == 0
        assert json.loads(target.read_text())["ok"] is True
