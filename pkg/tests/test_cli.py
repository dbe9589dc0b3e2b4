from __future__ import annotations

import io
import subprocess
import sys

import pytest

from ftag.cli import _Out, main
from ftag.grammar_io import bundled_path

S1 = "A man arrived who knew Mary"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_sentence_1():
    code, out, _ = run("parse", "-g", "extraposition.ftag", "-s", S1)
    assert code == 0
    assert out.startswith("1 derivation for: a man arrived who knew mary\n")
    assert "(N' eps:i1)" in out and "adjoin []: beta_extraposed" in out


def test_parse_where():
    code, out, _ = run("parse", "-g", "ppx.ftag", "-s", "Where did Mary walk to",
                       "--show-features")
    assert code == 0 and "1 derivation" in out
    assert "(NP [displ_const_index=i1] where)" in out and "eps:i1" in out


def test_parse_rejection_with_explanation():
    code, out, _ = run("parse", "-g", "ppx.ftag", "-s", "Did Mary walk to", "--explain")
    assert code == 1
    assert "0 derivations" in out and "clash at alpha_walk@[] on displ_const" in out


def test_records_format():
    code, out, _ = run("parse", "-g", "figure1.ftag", "--tokens",
                       "john,walked,to,philadelphia", "--format", "records")
    assert code == 0
    lines = [line.split("\t") for line in out.splitlines()]
    assert lines[0] == ["sentence", "john walked to philadelphia"]
    assert lines[1] == ["derivations", "1"]
    assert ["record", "1", "alpha_walked", "substitution", "[1]", "alpha_john", "-"] in lines
    assert lines[-1][0] == "tree"


def test_output_is_deterministic():
    argv = ("parse", "-g", "bundled.ftag", "-s", S1, "--show-features")
    assert run(*argv) == run(*argv)


def test_validate_and_lint():
    assert run("validate", "-g", "bundled.ftag")[0] == 0
    code, out, _ = run("lint-extraction", "-g", "bundled.ftag", "--triple",
                       "eps=beta_np_eps", "filler=beta_extraposed", "host=alpha_arrive")
    assert code == 0 and out.strip() == "0 violation(s)"


def test_lint_mutated_foot(tmp_path):
    text = bundled_path("bundled.ftag").read_text()
    mutated = text.replace("(NP* [t: displ_const=-])", "(NP* [t: displ_const=+])", 1)
    assert mutated != text
    path = tmp_path / "mutated.ftag"
    path.write_text(mutated)
    code, out, _ = run("lint-extraction", "-g", str(path), "--triple",
                       "eps=beta_np_eps", "filler=beta_extraposed", "host=alpha_arrive")
    assert code == 1
    assert "clause (c) beta_np_eps@[1]" in out and "1 violation(s)" in out


def test_validate_reports_violations(tmp_path):
    path = tmp_path / "bad.ftag"
    path.write_text('grammar bad start=S\ntree b auxiliary { (VP (V "x")) }\n')
    code, out, _ = run("validate", "-g", str(path), "--format", "records")
    assert code == 1 and out.startswith("violation\tb\t[]\tfoot-count")


def test_compare_equal_and_broken(tmp_path):
    code, out, _ = run("compare", "-g", "extraposition.ftag", "-m", "extraposition.mctag",
                       "-s", S1)
    assert code == 0 and out.rstrip().endswith("equal")
    text = bundled_path("extraposition.mctag").read_text()
    broken = text.replace('(S\' @NA [t: index=#1]\n      (NP @NA "who")',
                          '(S\' @NA\n      (NP @NA "who")', 1)
    assert broken != text
    path = tmp_path / "broken.mctag"
    path.write_text(broken)
    code, out, _ = run("compare", "-g", "extraposition.ftag", "-m", str(path), "-s", S1)
    assert code == 1 and "not equal" in out


def test_sample():
    code, out, _ = run("sample", "-g", "figure1.ftag", "--max-len", "4")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = run("sample", "-g", "ppx.ftag", "-m", "ppx.mctag", "--max-len", "8")
    assert code == 0 and out.splitlines()[-1] == "identical"


def test_derive():
    code, out, _ = run("derive", "-g", "figure1.ftag", "-d",
                       "(alpha_walked (sub 1 alpha_john) (adj 2 (beta_to_pp "
                       "(sub 2.2 alpha_philadelphia))))")
    assert code == 0 and out.splitlines()[1] == "yield: john walked to philadelphia"
    code, out, _ = run("derive", "-g", "extraposition.ftag", "-d",
                       "(alpha_arrive (sub 1 (alpha_a_man (adj . beta_np_eps))))")
    assert code == 1 and out.startswith("rejected: clash at alpha_arrive@[]")
    code, _, err = run("derive", "-g", "figure1.ftag", "-d", "(alpha_walked (adj 7 beta_to_pp))")
    assert code == 2 and "no node" in err


@pytest.mark.parametrize("argv", [
    ["parse", "-g", "missing.ftag", "-s", "x"],
    ["parse", "-g", "figure1.ftag"],
    ["frobnicate"],
    ["sample", "-g", "figure1.ftag"],
    ["lint-extraction", "-g", "bundled.ftag", "--triple", "eps=x"],
    ["derive", "-g", "figure1.ftag", "-d", "(alpha_walked"],
    ["parse", "-g", "figure1.ftag", "-s", "x", "--max-trees", "many"],
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2 and err.startswith("ftag: ") and out == ""


def test_bad_grammar_file(tmp_path):
    path = tmp_path / "broken.ftag"
    path.write_text("grammar g start=S\ntree a initial { (S \"x\" }\n")
    code, _, err = run("validate", "-g", str(path))
    assert code == 2 and "line 2" in err


class _Tty(io.StringIO):
    def isatty(self):
        return True


def test_color_only_on_terminals(monkeypatch):
    monkeypatch.delenv("FTAG_COLOR", raising=False)
    assert _Out(_Tty(), "pretty").color
    assert not _Out(io.StringIO(), "pretty").color
    assert not _Out(_Tty(), "records").color
    monkeypatch.setenv("FTAG_COLOR", "0")
    assert not _Out(_Tty(), "pretty").color


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "ftag.cli", "validate", "-g", "figure1.ftag"],
                          capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout == "4 trees, 0 violation(s)\n"
