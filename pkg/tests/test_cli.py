"""The dcalc command-line front end, driven through main()."""

import json

import pytest

from dcalc.cli import main
from dcalc.corpus import corpus_text

OMEGA = "([x:tau](x x) [x:tau](x x))"


@pytest.fixture
def corpus_file(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.dc"
        p.write_text(corpus_text(name))
        return str(p)

    return write


def test_check_reports_ok(corpus_file, capsys):
    path = corpus_file("logic")
    assert main(["check", path]) == 0
    out = capsys.readouterr().out
    assert out.startswith(f"{path}: ok (")
    assert "declarations, " in out and "deductions, " in out


def test_check_multiple_files_with_gates(corpus_file, capsys):
    paths = [corpus_file("minimal"), corpus_file("classical"), corpus_file("casting")]
    assert main(["check", "--axioms", "neg,cast", *paths]) == 0
    out = capsys.readouterr().out
    assert out.count(": ok (") == 3


def test_check_json_report(corpus_file, capsys):
    path = corpus_file("minimal")
    assert main(["check", "--json", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["file"] == path
    assert report["declarations_checked"] == 8
    assert report["deductions_checked"] == 2
    assert report["errors"] == []
    assert report["elapsed"] >= 0


def test_check_missing_file(tmp_path, capsys):
    path = str(tmp_path / "absent.dc")
    assert main(["check", path]) == 1
    captured = capsys.readouterr()
    assert "1 error(s)" in captured.out
    assert "IOError @ root" in captured.err


def test_check_parse_error(tmp_path, capsys):
    p = tmp_path / "broken.dc"
    p.write_text("context C { x : }\n")
    assert main(["check", str(p)]) == 1
    assert "ParseError" in capsys.readouterr().err


def test_check_typing_error(tmp_path, capsys):
    p = tmp_path / "wrong.dc"
    p.write_text("context C { a : tau }\ncheck tau : a\n")
    assert main(["check", str(p)]) == 1
    captured = capsys.readouterr()
    assert "1 error(s)" in captured.out
    assert "Mismatch" in captured.err


def test_check_trace_prints_deduction_steps(tmp_path, capsys):
    p = tmp_path / "steps.dc"
    p.write_text("context C { a : tau }\ncheck ([x:tau]x a) : tau\n")
    assert main(["check", "--trace", str(p)]) == 0
    out = capsys.readouterr().out
    assert ": ok (" in out
    assert "beta1 @ root : a" in out


def test_type_command(capsys):
    assert main(["type", "[x:tau]x"]) == 0
    assert capsys.readouterr().out.strip() == "[x:tau]tau"


def test_type_reports_typing_errors(capsys):
    assert main(["type", "(tau tau)"]) == 1
    assert "NotAFunction" in capsys.readouterr().err
    assert main(["type", "--json", "(tau tau)"]) == 1
    diag = json.loads(capsys.readouterr().err)
    assert diag["kind"] == "NotAFunction"
    assert diag["path"] == "root"


def test_type_with_context_file(tmp_path, capsys):
    p = tmp_path / "ctx.dc"
    p.write_text("context C { a : tau; x : a }\n")
    assert main(["type", "x", "--context", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "a"


def test_type_rejects_an_invalid_context_file(tmp_path, capsys):
    p = tmp_path / "ctx.dc"
    p.write_text("context C { x : y }\n")
    assert main(["type", "x", "--context", str(p)]) == 1
    assert "ContextError" in capsys.readouterr().err


def test_nf_command(capsys):
    assert main(["nf", "~[x:tau]x"]) == 0
    assert capsys.readouterr().out.strip() == "[x!tau]~x"


def test_trace_command(capsys):
    assert main(["trace", "~~tau"]) == 0
    assert capsys.readouterr().out.splitlines() == ["nu1 @ root : tau", "tau"]
    assert main(["trace", "tau"]) == 0
    assert capsys.readouterr().out.splitlines() == ["tau"]


def test_trace_json(capsys):
    assert main(["trace", "--json", "~~tau"]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert lines == [{"axiom": "nu1", "path": "root", "term": "tau"}, {"nf": "tau"}]


def test_sem_command(capsys):
    assert main(["sem", "[x:tau][y:x]y"]) == 0
    assert capsys.readouterr().out.strip() == "\\x.\\y.y"
    assert main(["sem", "--strip", "[x:tau][y:x]y"]) == 0
    assert capsys.readouterr().out.strip() == "\\x.\\y.y"
    assert main(["sem", "--encode", "[x:tau][y:x]y"]) == 0
    assert capsys.readouterr().out.strip() == "\\z.((z pi^) \\x.\\z1.((z1 x) \\y.y))"


def test_norm_command(tmp_path, capsys):
    assert main(["norm", "[x:tau]x"]) == 0
    assert capsys.readouterr().out.strip() == "[*,*]"
    assert main(["norm", "x"]) == 0
    assert capsys.readouterr().out.strip() == "undefined"
    p = tmp_path / "ctx.dc"
    p.write_text("context C { a : tau; x : a }\n")
    assert main(["norm", "x", "--context", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "*"


def test_fuel_flag_bounds_reduction(capsys):
    assert main(["nf", "--fuel", "20", OMEGA]) == 1
    assert "FuelExhausted" in capsys.readouterr().err


def test_fuel_environment_fallback(monkeypatch, capsys):
    monkeypatch.setenv("DCALC_FUEL", "20")
    assert main(["nf", OMEGA]) == 1
    assert "FuelExhausted" in capsys.readouterr().err
    # an explicit flag wins over the environment
    monkeypatch.setenv("DCALC_FUEL", "1000000")
    assert main(["nf", "--fuel", "20", OMEGA]) == 1
    capsys.readouterr()


def test_axiom_gating(capsys):
    assert main(["nf", "negaxp{a,b}"]) == 1
    assert "is not enabled here" in capsys.readouterr().err
    assert main(["nf", "--axioms", "neg", "negaxp{a,b}"]) == 0
    assert capsys.readouterr().out.startswith("negaxp_")
    assert main(["nf", "--axioms", "all", "castin{a}"]) == 0
    assert capsys.readouterr().out.startswith("castin_")


def test_unknown_axiom_token(capsys):
    assert main(["nf", "--axioms", "bogus", "tau"]) == 2
    assert capsys.readouterr().err.startswith("error: unknown axiom scheme: bogus")
