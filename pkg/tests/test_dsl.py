"""Text format round-trips, parse errors with locations, expressions, configs."""

import math
import os

import pytest

from kahnets import (ArityMismatch, ConfigError, DslSyntaxError, GenParams,
                     UndeclaredPort, UnknownSymbol, find_iso, gen_random_net,
                     validate)
from kahnets.config import parse_config
from kahnets.dsl import format_document, net_to_def, parse_document, NetDocument
from kahnets.exprs import parse_expr
from kahnets.stdnets import STD_SIG, build

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")

PAPER_DOC = """
sig alpha 2 1
sig beta 2 2

net main : 2 -> 2
  ports p0 p1 p2 p3 p4
  op x0 alpha (p0 p4) -> (p2)
  op x1 beta (p2 p1) -> (p3 p4)
  in p0 p1
  out p3 p4
"""


class TestParse:
    def test_paper_example_parses_to_the_built_net(self):
        doc = parse_document(PAPER_DOC)
        net = doc.net("main")
        assert validate(net, doc.signature).ok
        assert find_iso(net, build("paper_example")) is not None

    def test_fixture_files_parse_and_validate(self):
        for name in ("paper_example", "running_sum", "constant",
                     "differentiation", "integration"):
            with open(os.path.join(FIXTURES, f"{name}.net")) as handle:
                doc = parse_document(handle.read())
            for nd in doc.nets:
                assert validate(nd.to_net(), doc.signature).ok, name

    def test_unknown_symbol_with_location(self):
        bad = "net n : 0 -> 0\n  ports p0\n  op x0 gamma (p0) -> ()\n"
        with pytest.raises(UnknownSymbol) as err:
            parse_document(bad)
        assert err.value.line == 3 and err.value.col is not None

    def test_undeclared_port_with_location(self):
        bad = "sig iota 1 1\nnet n : 1 -> 1\n  ports a\n  op x0 iota (b) -> (a)\n  in a\n  out a\n"
        with pytest.raises(UndeclaredPort) as err:
            parse_document(bad)
        assert err.value.line == 4

    def test_operator_arity_mismatch(self):
        bad = "sig plus 2 1\nnet n : 1 -> 1\n  ports a b\n  op x0 plus (a) -> (b)\n  in a\n  out b\n"
        with pytest.raises(ArityMismatch) as err:
            parse_document(bad)
        assert err.value.line == 4

    def test_boundary_count_mismatch(self):
        bad = "net n : 2 -> 0\n  ports a\n  in a\n"
        with pytest.raises(ArityMismatch):
            parse_document(bad)

    def test_syntax_error_reports_line_and_col(self):
        with pytest.raises(DslSyntaxError) as err:
            parse_document("net n 2 -> 2\n")
        assert err.value.line == 1 and err.value.col is not None
        with pytest.raises(DslSyntaxError):
            parse_document("ports a b\n")  # outside a net block

    def test_duplicate_declarations_rejected(self):
        with pytest.raises(DslSyntaxError):
            parse_document("sig a 1 1\nsig a 2 1\n")
        with pytest.raises(DslSyntaxError):
            parse_document("net n : 0 -> 0\n  ports a a\n")

    def test_comments_and_blank_lines_ignored(self):
        doc = parse_document("# header\n\nsig iota 1 1  # trailing\n")
        assert "iota" in doc.signature

    def test_missing_net_name(self):
        doc = parse_document(PAPER_DOC)
        with pytest.raises(DslSyntaxError):
            doc.net("nope")


class TestRoundTrip:
    def test_parse_print_parse_is_identity(self):
        doc = parse_document(PAPER_DOC)
        again = parse_document(format_document(doc))
        assert again == doc

    def test_printing_is_canonical(self):
        doc = parse_document(PAPER_DOC)
        assert format_document(parse_document(format_document(doc))) == format_document(doc)

    def test_generated_nets_round_trip_up_to_iso(self):
        for seed in range(40):
            net = gen_random_net(GenParams(seed=seed, signature=STD_SIG))
            doc = NetDocument(STD_SIG, (net_to_def(net, "n"),))
            back = parse_document(format_document(doc)).net("n")
            assert find_iso(net, back) is not None, f"seed {seed}"


class TestExpressions:
    CASES = [
        ("1.5", 0.0, 1.5),
        ("t", 2.5, 2.5),
        ("t*t - 1", 3.0, 8.0),
        ("sin(t)", 0.7, math.sin(0.7)),
        ("cos(t) * exp(t)", 0.3, math.cos(0.3) * math.exp(0.3)),
        ("abs(t - 0.5)", 0.2, 0.3),
        ("-t + 2", 0.5, 1.5),
        ("(1 + t) / 2", 3.0, 2.0),
        ("2e-3 * t", 10.0, 0.02),
    ]

    def test_evaluates_like_the_closed_form(self):
        for text, at, expected in self.CASES:
            assert parse_expr(text)(at) == pytest.approx(expected, abs=1e-12), text

    def test_errors(self):
        for bad in ("", "sin", "sin(", "1 +", "(t", "t)", "log(t)", "t t"):
            with pytest.raises(ConfigError):
                parse_expr(bad)


class TestConfig:
    def test_full_config(self):
        cfg = parse_config(
            "delta = 1e-3\ntmax = 1.05\ntol = 1e-2\n"
            "schedule = 1e-2, 5e-3, 2.5e-3\nprobes = 0.5, 1.0\n"
            "input.0 = expr: sin(t)\n")
        assert cfg.delta == 1e-3 and cfg.tmax == 1.05
        assert cfg.schedule.deltas == (1e-2, 5e-3, 2.5e-3)
        assert cfg.schedule.tol == 1e-2
        assert cfg.probes == (0.5, 1.0)
        assert cfg.inputs[0](0.25) == math.sin(0.25)

    def test_default_schedule_halves_delta(self):
        cfg = parse_config("delta = 8e-3\ntmax = 1.0\n")
        assert cfg.schedule.deltas == (8e-3, 4e-3, 2e-3, 1e-3, 5e-4)

    def test_missing_keys_and_bad_lines(self):
        with pytest.raises(ConfigError):
            parse_config("tmax = 1.0\n")
        with pytest.raises(ConfigError):
            parse_config("delta = 1e-3\ntmax = 1\nwhatever = 3\n")
        with pytest.raises(ConfigError) as err:
            parse_config("delta 1e-3\n")
        assert err.value.line == 1

    def test_sparse_inputs_rejected(self):
        with pytest.raises(ConfigError):
            parse_config("delta = 1e-3\ntmax = 1\ninput.1 = expr: t\n")

    def test_csv_input(self, tmp_path):
        path = tmp_path / "ramp.csv"
        path.write_text("t,value\n0,0\n1,2\n")
        cfg = parse_config(f"delta = 0.25\ntmax = 1\ninput.0 = csv: {path}\n")
        assert cfg.inputs[0](0.5) == 1.0

    def test_bad_csv(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n0,0\n")
        with pytest.raises(ConfigError):
            parse_config(f"delta = 0.25\ntmax = 1\ninput.0 = csv: {path}\n")
