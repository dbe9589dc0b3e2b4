from __future__ import annotations

import pytest

from ftag import Rejected, bundled_grammar, finalize, parse, realize, tokenize, tree_yield
from ftag.oracle import oracle_derivations, oracle_language
from ftag.parser import (
    check_derivation, diagnose, enumerate_derivations, explain, parse_bag, select_trees,
)
from ftag.derivation import parse_derivation

FIG1_STRINGS = {
    ("john", "walked"), ("philadelphia", "walked"),
    ("john", "walked", "to", "john"), ("john", "walked", "to", "philadelphia"),
    ("philadelphia", "walked", "to", "john"),
    ("philadelphia", "walked", "to", "philadelphia"),
}


@pytest.fixture(scope="module")
def g():
    return bundled_grammar("bundled")


@pytest.fixture(scope="module")
def fig1():
    return bundled_grammar("figure1")


def test_tokenize():
    assert tokenize("Where did Mary walk to?") == ["where", "did", "mary", "walk", "to"]
    assert tokenize("  A man ,  arrived. ") == ["a", "man", "arrived"]
    assert tokenize("") == []


def test_select_trees_respects_multiplicity(g):
    chosen = select_trees(g, ["a", "man", "arrived"])
    assert {"alpha_a_man", "alpha_arrive", "beta_np_eps"} <= chosen
    assert "alpha_a_hard_time" not in chosen


@pytest.mark.parametrize("sentence, count", [
    ("A man arrived", 1),
    ("A man arrived who knew Mary", 1),
    ("John gave everyone a hard time who knew Mary", 1),
    ("I told John yesterday that I wanted pizza", 1),
    ("Where did Mary walk to", 1),
    ("Which gate did you leave from", 1),
    ("I knew which book the students would forget who wrote", 1),
    ("Did Mary walk to", 0),
    ("arrived a man", 0),
    ("A man arrived who knew", 0),
    ("Mary walk to", 0),
])
def test_counts(g, sentence, count):
    assert len(parse(g, tokenize(sentence)).derivations) == count


def test_results_are_sound(g):
    tokens = tokenize("John gave everyone a hard time who knew Mary")
    for d, final in parse(g, tokens).derivations:
        assert tree_yield(final) == tokens
        assert check_derivation(g, d) == final


def test_deterministic(g):
    tokens = tokenize("I knew which book the students would forget who wrote")
    a = parse(g, tokens)
    b = parse(bundled_grammar("bundled"), tokens)
    assert [(str(d), f.bracket(True)) for d, f in a.derivations] == \
        [(str(d), f.bracket(True)) for d, f in b.derivations]


def test_explain_names_the_clash():
    ppx = bundled_grammar("ppx")
    diags = explain(ppx, tokenize("Did Mary walk to"))
    assert [str(x) for x in diags] == ["clash at alpha_walk@[] on displ_const"]
    assert str(diags[0].derivation) == "(alpha_walk (sub 2 alpha_mary) (adj 3 beta_to_stranded))"


def test_explain_reports_word_order(fig1):
    diags = explain(fig1, ["walked", "john"])
    assert [d.reason for d in diags] == ["word order"]
    assert diags[0].detail == "john walked"


def test_uncovered_words(fig1):
    r = parse(fig1, ["john", "ran"], explain=True)
    assert r.uncovered == ["ran"] and r.status == "no parse"
    assert str(r.rejected[0]) == "no candidate trees (for ran)"


def test_tree_budget_and_result_limit(fig1):
    tokens = ["john", "walked", "to", "philadelphia"]
    cut = parse(fig1, tokens, max_trees=3)
    assert cut.derivations == [] and cut.tree_limit_cut
    assert len(parse(fig1, tokens)) == 1
    limited = parse(fig1, tokens, max_results=0)
    assert limited.status == "limit" and limited.derivations == []


def test_diagnose(g):
    good = parse_derivation("(alpha_arrive (sub 1 alpha_a_man))")
    assert diagnose(g, good) is None
    bad = parse_derivation("(alpha_arrive (sub 1 (alpha_a_man (adj . beta_np_eps))))")
    assert str(diagnose(g, bad)) == "clash at alpha_arrive@[] on displ_const"


def test_parse_bag_covers_every_ordering(fig1):
    out = parse_bag(fig1, ["philadelphia", "walked", "john", "to"])
    assert set(out) == {("john", "walked", "to", "philadelphia"),
                        ("philadelphia", "walked", "to", "john")}
    for y, ds in out.items():
        assert [d for d, _ in parse(fig1, y).derivations] == ds


def test_oracle_figure1(fig1):
    assert oracle_language(fig1, 6, 5) == FIG1_STRINGS
    derivs = oracle_derivations(fig1, 6, 5)
    assert all(len(ds) == 1 for ds in derivs.values())


@pytest.mark.parametrize("name", ["figure1", "ppx", "indirect"])
def test_enumeration_matches_oracle(name):
    grammar = bundled_grammar(name)
    found = {}
    for d in enumerate_derivations(grammar, 6, 5):
        try:
            final = finalize(realize(grammar, d))
        except Rejected:
            continue
        found.setdefault(tuple(tree_yield(final)), set()).add(d)
    assert found == oracle_derivations(grammar, 6, 5)
