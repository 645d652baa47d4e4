"""recdet CLI: golden outputs, exit-code contract, bench CSV."""

import json
import subprocess
import sys

import pytest

from recdet.cli import main
from recdet.specfiles import spec_path

NATURALS_JSON = (
    '{"size":3,"ring":"rational",'
    '"entries":[["1","1","1"],["-1","1","0"],["0","-1","1"]]}'
)


@pytest.fixture(autouse=True)
def plain_output(monkeypatch):
    monkeypatch.setenv("RECDET_COLOR", "0")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_fibonacci_file_prints_terms_up_to_13(self, capsys):
        code, out, _ = run(capsys, "eval", str(spec_path("fibonacci-num")), "--n", "7")
        assert code == 0
        assert out.splitlines() == [
            "1: 1", "2: 1", "3: 2", "4: 3", "5: 5", "6: 8", "7: 13",
        ]

    def test_n_equals_one_prints_the_initial_only(self, capsys):
        code, out, _ = run(capsys, "eval", str(spec_path("naturals")), "--n", "1")
        assert code == 0
        assert out == "1: 1\n"

    def test_ode_sixth_term(self, capsys):
        code, out, _ = run(capsys, "eval", str(spec_path("ode-example")), "--n", "6")
        assert code == 0
        assert out.splitlines()[-1] == "6: -1/10"

    def test_family_name_fallback(self, capsys):
        code, out, _ = run(capsys, "eval", "fibonacci-num", "--n", "7")
        assert code == 0
        assert out.splitlines()[-1] == "7: 13"


class TestMatrix:
    def test_naturals_size_three_json_golden(self, capsys):
        code, out, _ = run(capsys, "matrix", "naturals", "--k", "3", "--format", "json")
        assert code == 0
        assert out.strip() == NATURALS_JSON

    def test_size_one_matrix_is_the_initial_coefficient(self, capsys):
        code, out, _ = run(capsys, "matrix", "naturals", "--k", "1")
        assert code == 0
        assert out.strip() == "[ 1 ]"

    def test_fibonacci_latex_band(self, capsys):
        code, out, _ = run(
            capsys, "matrix", "fibonacci-num", "--k", "4", "--format", "latex"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "\\begin{vmatrix}"
        assert lines[1] == "1 & 1 & 0 & 0 \\\\"
        assert lines[2] == "-1 & 1 & 1 & 0 \\\\"
        assert lines[4] == "0 & 0 & -1 & 1 \\\\"

    def test_fixed_order_file_uses_the_banded_embedding(self, capsys):
        code, out, _ = run(
            capsys, "matrix", str(spec_path("naturals")), "--k", "3", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["entries"] == [
            ["1", "2", "0"], ["-1", "0", "-1"], ["0", "-1", "2"],
        ]


class TestVerify:
    def test_hermite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", str(spec_path("hermite")), "--max-n", "10")
        assert code == 0
        assert "result: pass (10 checks)" in out

    def test_json_report(self, capsys):
        code, out, _ = run(
            capsys, "verify", str(spec_path("legendre")), "--max-n", "12",
            "--method", "bareiss", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert len(payload["checks"]) == 12

    def test_corrupted_entry_exits_three_and_reports_first_failure(self, capsys):
        code, out, _ = run(
            capsys, "verify", "naturals", "--max-n", "8", "--corrupt", "1,2"
        )
        assert code == 3
        assert "FAIL at k = 2" in out

    def test_laplace_is_refused_past_its_size_limit(self, capsys):
        code, _, err = run(
            capsys, "verify", "naturals", "--max-n", "9", "--method", "laplace"
        )
        assert code == 2
        assert "up to 8" in err

    def test_every_shipped_spec_verifies(self, capsys):
        from recdet.specfiles import available

        for name in available():
            code, _, err = run(
                capsys, "verify", str(spec_path(name)), "--max-n", "10"
            )
            assert code == 0, f"{name}: {err}"


class TestFamily:
    def test_chebyshev_t_golden_line(self, capsys):
        code, out, _ = run(capsys, "family", "chebyshev-t", "--n", "3")
        assert code == 0
        assert out.splitlines() == ["1: x", "2: 2*x^2 - 1", "3: 4*x^3 - 3*x"]

    def test_naturals_prints_one_through_five(self, capsys):
        code, out, _ = run(capsys, "family", "naturals", "--n", "5")
        assert code == 0
        assert out.splitlines() == ["1: 1", "2: 2", "3: 3", "4: 4", "5: 5"]

    def test_continuant_with_params(self, capsys):
        code, out, _ = run(
            capsys, "family", "continuant", "--params", "1,2,3", "--n", "3"
        )
        assert code == 0
        assert out.splitlines()[-1] == "3: 10"

    def test_list_names_all_families(self, capsys):
        code, out, _ = run(capsys, "family", "--list")
        assert code == 0
        names = out.split()
        assert len(names) == 13
        assert "laguerre" in names

    def test_unknown_family_exits_one_with_the_valid_names(self, capsys):
        code, _, err = run(capsys, "family", "smith", "--n", "3")
        assert code == 1
        assert "chebyshev-t" in err

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys, "family", "legendre", "--n", "2", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["values"][1] == {"n": 2, "value": "3/2*x^2 - 1/2"}

    def test_missing_params_is_a_usage_error(self, capsys):
        code, _, err = run(capsys, "family", "horner", "--n", "3")
        assert code == 1
        assert "coefficient list" in err

    def test_params_shorter_than_n_is_an_evaluation_error(self, capsys):
        code, _, err = run(
            capsys, "family", "continuant", "--params", "1,2", "--n", "4"
        )
        assert code == 2


class TestExitCodes:
    def test_bad_syntax_file_exits_one(self, capsys):
        code, _, err = run(
            capsys, "eval", str(spec_path("bad-syntax", negative=True)), "--n", "3"
        )
        assert code == 1
        assert "line 5" in err

    def test_bad_semantic_file_exits_one(self, capsys):
        code, _, err = run(
            capsys, "eval", str(spec_path("bad-semantic", negative=True)), "--n", "3"
        )
        assert code == 1
        assert "full-history" in err

    def test_bad_eval_file_exits_two_past_the_singularity(self, capsys):
        path = str(spec_path("bad-eval", negative=True))
        code, out, _ = run(capsys, "eval", path, "--n", "8")
        assert code == 0
        code, _, err = run(capsys, "eval", path, "--n", "12")
        assert code == 2
        assert "k = 9" in err

    def test_unknown_spec_token_exits_one(self, capsys):
        code, _, err = run(capsys, "eval", "no-such-thing", "--n", "3")
        assert code == 1
        assert "families:" in err

    def test_missing_subcommand_exits_one(self, capsys):
        assert run(capsys)[0] == 1

    def test_nonpositive_n_exits_one(self, capsys):
        assert run(capsys, "eval", "naturals", "--n", "0")[0] == 1

    def test_unknown_flag_exits_one(self, capsys):
        assert run(capsys, "eval", "naturals", "--n", "3", "--frobnicate")[0] == 1


class TestBench:
    def test_csv_header_records_and_crlf(self, capsys):
        code, out, err = run(
            capsys, "bench", "--sizes", "4", "--methods", "fast,bareiss,laplace",
            "--seed", "5",
        )
        assert code == 0
        lines = out.split("\r\n")
        assert lines[0] == "method,size,ring_ops,ms,max_bits"
        assert len(lines) == 5  # header + 3 records + trailing empty
        assert lines[1].startswith("fast,4,")
        assert "agree" in err

    def test_identical_seeds_give_identical_counts(self, capsys):
        def counts():
            _, out, _ = run(
                capsys, "bench", "--sizes", "5,9", "--methods", "fast,bareiss",
                "--seed", "123",
            )
            return [
                (r.split(",")[0], r.split(",")[1], r.split(",")[2], r.split(",")[4])
                for r in out.split("\r\n")[1:] if r
            ]

        assert counts() == counts()

    def test_laplace_refusal_leaves_other_pairs_running(self, capsys):
        code, out, err = run(
            capsys, "bench", "--sizes", "4,10", "--methods", "laplace"
        )
        assert code == 0
        assert "refused for size 10" in err
        assert sum(1 for r in out.split("\r\n")[1:] if r) == 1

    def test_all_pairs_refused_exits_one(self, capsys):
        code, _, err = run(capsys, "bench", "--sizes", "10", "--methods", "laplace")
        assert code == 1
        assert "refused" in err

    def test_unknown_method_exits_one(self, capsys):
        assert run(capsys, "bench", "--sizes", "4", "--methods", "gauss")[0] == 1

    def test_poly_ring_runs(self, capsys):
        code, out, _ = run(
            capsys, "bench", "--sizes", "5", "--methods", "fast", "--ring", "poly"
        )
        assert code == 0
        assert out.split("\r\n")[1].startswith("fast,5,")


class TestColor:
    def test_color_env_zero_strips_ansi(self, capsys):
        _, out, _ = run(capsys, "verify", "naturals", "--max-n", "3")
        assert "\x1b[" not in out

    def test_color_env_one_forces_ansi(self, capsys, monkeypatch):
        monkeypatch.setenv("RECDET_COLOR", "1")
        _, out, _ = run(capsys, "verify", "naturals", "--max-n", "3")
        assert "\x1b[32m" in out


def test_console_script_end_to_end():
    proc = subprocess.run(
        [sys.executable, "-m", "recdet.cli", "matrix", "naturals", "--k", "3",
         "--format", "json"],
        capture_output=True,
        text=True,
        env={"PATH": "", "RECDET_COLOR": "0"},
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == NATURALS_JSON
