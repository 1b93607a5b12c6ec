"""Command-line surface: formats, round trips, exit codes, and the repl."""

import io
import json
from fractions import Fraction

import pytest

from gibonacci.cli import main, run_repl
from gibonacci.exactnum import poly_from_strings, rational
from gibonacci.game import GameConfig
from gibonacci.polys import GibParams, sign_alternating_poly


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPoly:
    def test_text_fixture(self, capsys):
        code, out, _ = run_cli(capsys, "poly", "--alpha", "2", "--beta", "1", "--k", "7")
        assert code == 0
        assert out.strip() == "x^3 - 7x^2 + 14x - 7"

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(
            capsys, "poly", "--alpha", "5", "--beta", "2", "--k", "9", "--format", "json"
        )
        assert code == 0
        parsed = poly_from_strings(json.loads(out))
        assert parsed == sign_alternating_poly(GibParams.of(5, 2), 9).poly

    def test_rational_seeds(self, capsys):
        code, out, _ = run_cli(capsys, "poly", "--alpha", "7/3", "--beta", "1/2", "--k", "2")
        assert code == 0
        assert "7/3" in out or "x" in out


class TestArray:
    def test_json_rows_round_trip(self, capsys):
        code, out, _ = run_cli(
            capsys, "array", "--alpha", "2", "--beta", "1", "--rows", "8", "--format", "json"
        )
        assert code == 0
        rows = [[rational(v) for v in row] for row in json.loads(out)]
        assert rows[7] == [1, 7, 14, 7]


class TestRootsCommand:
    def test_root_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "roots", "--alpha", "5", "--beta", "2", "--k", "5", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["bound"] == "25/6"
        decimals = [r["decimal"] for r in payload["roots"]]
        assert decimals[0].startswith("1.5")
        assert decimals[1].startswith("4")

    def test_root_table_round_trip(self, capsys):
        from gibonacci.exactnum import Interval
        from gibonacci.roots import roots_of

        code, out, _ = run_cli(
            capsys, "roots", "--alpha", "2", "--beta", "1", "--k", "6", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        live = roots_of(GibParams.of(2, 1), 6)
        for entry, root in zip(payload["roots"], live.roots):
            assert poly_from_strings(entry["defining"]) == root.defining
            assert Interval.from_json(entry["enclosure"]) == root.enclosure


class TestBinet:
    def test_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "binet", "--alpha", "1", "--beta", "1", "--k", "6", "--x", "5"
        )
        assert code == 0
        want = sign_alternating_poly(GibParams.of(1, 1), 6).poly(Fraction(5))
        assert out.startswith(f"{want.numerator}/{want.denominator}")

    def test_repeated_eigenvalue_is_domain_error(self, capsys):
        code, _, err = run_cli(
            capsys, "binet", "--alpha", "1", "--beta", "1", "--k", "6", "--x", "4"
        )
        assert code == 1
        assert "error:" in err and "eigenvalue" in err


class TestGameCommands:
    ARGS = ["--alpha", "5", "--beta", "2", "--p", "7/2", "--q", "8/7"]

    def test_classify_text(self, capsys):
        code, out, _ = run_cli(capsys, "game", "classify", *self.ARGS)
        assert code == 0
        assert "all-terminate" in out and "strongly convergent" in out and "row 5" in out

    def test_classify_divergent(self, capsys):
        code, out, _ = run_cli(
            capsys, "game", "classify", "--alpha", "1", "--beta", "1", "--p", "2", "--q", "2"
        )
        assert code == 0
        assert out.strip().startswith("all-diverge; strongly convergent")

    def test_play_jsonl(self, capsys):
        code, out, _ = run_cli(
            capsys, "game", "play", *self.ARGS,
            "--a", "1", "--b", "1", "--first", "g1", "--format", "json",
        )
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert lines[-1] == {"outcome": "terminated", "moves": 6}
        assert lines[0]["node"] == "g1"
        assert rational(lines[-2]["u"]) == -1 and rational(lines[-2]["v"]) == -1

    def test_predict(self, capsys):
        code, out, _ = run_cli(
            capsys, "game", "predict", *self.ARGS, "--a", "0", "--b", "1", "--first", "g2"
        )
        assert code == 0 and out.strip() == "5"

    def test_illegal_start_is_domain_error(self, capsys):
        code, _, err = run_cli(
            capsys, "game", "play", *self.ARGS, "--a", "0", "--b", "0", "--first", "g1"
        )
        assert code == 1 and "error:" in err


class TestPosetCommands:
    def test_enum_json_count(self, capsys):
        code, out, _ = run_cli(
            capsys, "poset", "enum", "--n", "4", "--k", "3", "--alpha", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["elements"]) == 48
        assert payload["elements"] == sorted(payload["elements"])  # stable lexicographic

    def test_enum_dot(self, capsys):
        code, out, _ = run_cli(
            capsys, "poset", "enum", "--n", "3", "--k", "2", "--alpha", "2", "--format", "dot"
        )
        assert code == 0
        assert out.startswith("digraph poset {") and "->" in out

    def test_rgf_text(self, capsys):
        code, out, _ = run_cli(capsys, "poset", "rgf", "--n", "4", "--k", "3", "--alpha", "3")
        assert code == 0
        assert out.strip() == "q^9 + 3q^8 + 6q^7 + 6q^6 + 8q^5 + 8q^4 + 6q^3 + 6q^2 + 3q + 1"

    def test_check_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "poset", "check", "--n", "4", "--k", "2", "--alpha", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["distributive"] is False and payload["maximal_count"] >= 2

    def test_invalid_sizes_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "poset", "enum", "--n", "3", "--k", "2", "--alpha", "3")
        assert code == 1 and "error:" in err


class TestTriangle:
    def test_row_text(self, capsys):
        code, out, _ = run_cli(capsys, "triangle", "--alpha", "3", "--n", "4", "--k", "3")
        assert code == 0
        assert out.split() == ["1", "3", "6", "6", "8", "8", "6", "6", "3", "1"]

    def test_row_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "triangle", "--alpha", "3", "--n", "4", "--k", "1", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "r,entry" and lines[1] == "-3,1"

    def test_row_polynomial(self, capsys):
        code, out, _ = run_cli(
            capsys, "triangle", "--alpha", "1", "--n", "3", "--k", "1", "--as-poly"
        )
        assert code == 0
        assert out.strip() == "q^2 + q + 1"


class TestErrorsAndEnv:
    def test_decimal_rejected(self, capsys):
        code, _, err = run_cli(capsys, "poly", "--alpha", "2.5", "--beta", "1", "--k", "3")
        assert code == 1
        assert "decimal" in err

    def test_unknown_subcommand_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_env_default_format(self, capsys, monkeypatch):
        monkeypatch.setenv("GIBONACCI_FORMAT", "json")
        code, out, _ = run_cli(capsys, "poly", "--alpha", "2", "--beta", "1", "--k", "7")
        assert code == 0
        assert json.loads(out) == ["-7/1", "14/1", "-7/1", "1/1"]


class TestVerifyCommand:
    def test_arrays_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "arrays")
        assert code == 0
        assert "PASS  array-fixtures" in out
        assert "all checks passed" in out

    def test_unknown_suite_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "everything"])
        assert exc.value.code == 2


class TestRepl:
    CFG = GameConfig.rational(GibParams.of(5, 2), Fraction(7, 2), Fraction(8, 7))

    def run(self, inputs, a=1, b=1):
        out = io.StringIO()
        code = run_repl(self.CFG, a, b, iter(inputs), out.write, digits=12)
        return code, out.getvalue()

    def test_full_game(self):
        code, text = self.run(["g1", "g2", "g1", "g2", "g1", "g2"])
        assert code == 0
        assert "terminated after 6 moves" in text
        assert "u = -1/1" in text and "v = -1/1" in text

    def test_intermediate_pairs_match_worked_game(self):
        # a = b = 1 specializes the displayed symbolic pairs:
        # (-59/7, 12), (37/7, -12), (-37/7, 13/2), (15/7, -13/2), (-15/7, 1)
        code, text = self.run(["g1", "g2", "g1", "g2", "g1", "g2"])
        assert code == 0
        for token in ("-59/7", "37/7", "13/2", "15/7"):
            assert token in text

    def test_illegal_move_reported_and_state_kept(self):
        # g1 is the only legal reply after a g1 opening ... g2 after g2
        code, text = self.run(["g1", "g1", "g2", "g2", "g1", "g2", "g1", "g2"])
        assert code == 0
        assert "illegal:" in text
        assert "terminated after 6 moves" in text

    def test_quit_immediately(self):
        code, text = self.run(["quit"])
        assert code == 0 and "bye" in text

    def test_eof_exits_cleanly(self):
        code, text = self.run([])
        assert code == 0 and "bye" in text

    def test_unknown_token_reprompts(self):
        code, text = self.run(["nonsense", "quit"])
        assert code == 0 and "unknown node" in text

    def test_zero_coordinate_opening_rule(self):
        out = io.StringIO()
        code = run_repl(self.CFG, 0, 1, iter(["g1", "g2", "g1", "g2", "g1", "g2"]), out.write)
        text = out.getvalue()
        assert code == 0
        assert "illegal:" in text  # g1 opening refused when a = 0
        assert "terminated after 5 moves" in text
