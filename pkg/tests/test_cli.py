import json
from io import StringIO

import pytest

from ufrlab.cli import main


def run(*argv):
    out = StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_lengths_command():
    assert run("lengths", "Z(4)", "4") == (0, "{2,4}\n")
    assert run("lengths", "Z(4)", "5") == (0, "{3,5}\n")


def test_element_classification_command():
    code, text = run("classify", "Z(2)xZ(2)", "(0,1)")
    assert code == 0
    assert "m-irreducible: yes" in text
    assert "very strongly irreducible: no" in text


def test_polynomial_classification_command():
    code, text = run("classify", "Z(4)", "X^3+2")
    assert code == 0
    assert "irreducible: yes" in text


def test_factor_command_text_and_json():
    code, text = run("factor", "Z(4)", "X^2", "--no-cache")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("# tier: exact")
    assert sorted(lines[1:]) == ["X^2 = (X+2) * (X+2)", "X^2 = X * X"]
    code, text = run("factor", "Z(4)", "X^2", "--no-cache", "--format", "json")
    data = json.loads(text)
    assert data["subject"] == "X^2" and len(data["factorizations"]) == 2


def test_factor_rejects_units_and_unflagged_zero(capsys):
    assert run("factor", "Z(4)", "1+2X")[0] == 2
    assert run("factor", "Z(4)", "0")[0] == 2
    assert "allow-zero" in capsys.readouterr().err


def test_ring_commands():
    code, text = run("ring", "describe", "Z(6)")
    assert code == 0
    assert "units: {1, 5}" in text
    code, text = run("ring", "classify", "Z(4)")
    assert code == 0
    assert "ufr: yes" in text.splitlines()
    assert "R[X] ufr: no (theorem)" in text
    code, text = run("ring", "classify", "Z(6)", "--format", "json")
    data = json.loads(text)
    assert data["ring"]["ufr"] is False
    assert data["polynomial_ring"]["flags"]["bfr"]["value"] is False


def test_probe_command():
    code, text = run("probe", "weakly-prime", "Z(4)", "--deg-bound", "2")
    assert code == 0
    assert "2: none at bound" in text
    assert run("probe", "weakly-prime", "Z(5)", "--deg-bound", "1")[1].endswith("no weakly prime elements\n")


def test_verify_exit_codes(tmp_path):
    assert run("verify", "--checks", "thm6.2")[0] == 0
    corpus = tmp_path / "z4.txt"
    corpus.write_text("Z(4)\n")
    code, text = run("verify", "--checks", "lengths-z4", "--corpus", str(corpus))
    assert code == 1
    assert text.startswith("# bounds:")
    out = tmp_path / "report.json"
    code, _ = run("verify", "--checks", "cor4.4", "--corpus", str(corpus), "--format", "json", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text())["checks"][0]["status"] == "pass"


def test_verify_lists_checks():
    code, text = run("verify", "--list")
    assert code == 0
    assert any(line.startswith("lengths-z4") for line in text.splitlines())


@pytest.mark.parametrize(
    "argv",
    [
        ["lengths", "Z(1)", "2"],
        ["lengths", "Z(4)", "0"],
        ["factor", "Z(4)", "X^^2"],
        ["bogus"],
        ["verify", "--checks", "no-such-check"],
        ["verify", "--bounds", "depth=3"],
        ["verify", "--corpus", "/nonexistent/corpus.txt"],
    ],
)
def test_usage_errors_exit_with_two(argv, capsys):
    assert run(*argv)[0] == 2
    assert "ufrlab" in capsys.readouterr().err


def test_bad_ring_spec_prints_the_grammar(capsys):
    assert run("ring", "describe", "Z(4")[0] == 2
    assert "expr :=" in capsys.readouterr().err


def test_verify_reports_build_errors_with_exit_two(tmp_path):
    corpus = tmp_path / "bad.txt"
    corpus.write_text("Z(4)\nZ(0)\n")
    code, text = run("verify", "--checks", "ring-axioms", "--corpus", str(corpus))
    assert code == 2
    assert "error  Z(0)" in text
