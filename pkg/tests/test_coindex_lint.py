from __future__ import annotations

import pytest

from ftag import FeatureStructure, bundled_grammar, lint_extraction_pair, parse, tokenize
from ftag.coindex import (
    c_commands, dominates, fillers, first_difference, skeleton, traces, unbound_traces,
)
from ftag.composer import FinalNode, FinalTree
from ftag.trees import ANCHOR, EPSILON, INTERIOR, NodeLabel

from test_acceptance import TRIPLES, _edit, _mutations


def _n(cat, *kids, word=None, eps=None, **feats):
    if eps is not None:
        return FinalNode(NodeLabel(cat), EPSILON, FeatureStructure({"index": eps}))
    kind = ANCHOR if word else INTERIOR
    return FinalNode(NodeLabel(cat), kind, FeatureStructure(feats), tuple(kids), word)


def test_dominance_is_reflexive():
    assert dominates((1,), (1, 2)) and dominates((1,), (1,))
    assert not dominates((1, 2), (1,))


def test_c_command():
    # (S (NP a) (VP (V b) (NP eps)))
    t = FinalTree(_n("S", _n("NP", word="a"), _n("VP", _n("V", word="b"), _n("NP", eps="i1"))))
    assert c_commands(t, (1,), (2, 2))
    assert c_commands(t, (2, 1), (2, 2))
    assert not c_commands(t, (2, 2), (1,))
    assert not c_commands(t, (2,), (2, 2))
    assert not c_commands(t, (), (1,))


def test_unary_branches_are_skipped():
    # the NP's first branching ancestor is S, through a unary X
    t = FinalTree(_n("S", _n("X", _n("NP", word="a")), _n("VP", _n("NP", eps="i1"))))
    assert c_commands(t, (1, 1), (2, 1))


def test_bound_and_unbound_traces():
    good = FinalTree(_n("S", _n("NP", word="a", index="i1"), _n("VP", _n("NP", eps="i1"))))
    assert traces(good) == {(2, 1): "i1"} and fillers(good) == {(1,): "i1"}
    assert unbound_traces(good) == []
    # the filler sits inside a sister of the trace's ancestor: no c-command
    bad = FinalTree(_n("S", _n("VP", _n("NP", eps="i1"), _n("V", word="b")),
                       _n("PP", _n("P", word="p"), _n("NP", word="a", index="i1"))))
    assert unbound_traces(bad) == [((1, 1), "i1")]
    lonely = FinalTree(_n("S", _n("NP", eps="i2"), _n("V", word="b")))
    assert unbound_traces(lonely) == [((1,), "i2")]


def test_a_node_containing_its_trace_is_no_filler():
    t = FinalTree(_n("S", _n("NP", _n("NP", word="a"), _n("N'", eps="i1"),
                             displ_const_index="i1"),
                     _n("S'", word="w", displ_const_index="i1")))
    assert fillers(t) == {(2,): "i1"}


def test_skeleton_renumbers_indices():
    a = FinalTree(_n("S", _n("NP", word="a", index="i7"), _n("NP", eps="i7")))
    b = FinalTree(_n("S", _n("NP", word="a", index="i1"), _n("NP", eps="i1")))
    assert skeleton(a) == skeleton(b)
    assert skeleton(a).render() == "(S (NP_1 a) (NP_1 eps))"
    c = FinalTree(_n("S", _n("NP", word="a"), _n("NP", eps="i1")))
    assert first_difference(skeleton(a), skeleton(c))[0] == (1,)
    d = FinalTree(_n("S", _n("NP", word="a")))
    assert first_difference(skeleton(c), skeleton(d)) == ((), "2 vs 1 daughters at []")


@pytest.mark.parametrize("sentence", [
    "A man arrived who knew Mary", "John gave everyone a hard time who knew Mary",
    "I told John yesterday that I wanted pizza", "Where did Mary walk to",
    "Which gate did you leave from",
    "I knew which book the students would forget who wrote",
])
def test_parsed_traces_are_bound(sentence):
    g = bundled_grammar("bundled")
    for _, final in parse(g, tokenize(sentence)).derivations:
        assert traces(final) and unbound_traces(final) == []


# -- lint ------------------------------------------------------------------

@pytest.fixture(scope="module")
def g():
    return bundled_grammar("bundled")


@pytest.mark.parametrize("triple", sorted(TRIPLES))
def test_triples_lint_clean(g, triple):
    assert lint_extraction_pair(*(g.trees[n] for n in TRIPLES[triple])) == []


def test_from_triple_lints_clean(g):
    names = ("beta_from_stranded", "beta_which_gate", "alpha_leave")
    assert lint_extraction_pair(*(g.trees[n] for n in names)) == []


@pytest.mark.parametrize("key", ["a", "b", "c1", "c2", "d1", "d2"])
def test_each_mutation_breaks_one_clause(g, key):
    what, slot, mutated = _mutations(g)[key]
    triple = [g.trees[n] for n in TRIPLES["extraposition"]]
    triple[slot] = mutated
    found = lint_extraction_pair(*triple)
    assert [v.rule for v in found] == [key[0]], what


def test_host_clause(g):
    host = g.trees["alpha_arrive"]
    broken = _edit(host, (), top=host.root.top.set("displ_const", "+"))
    eps, filler, _ = (g.trees[n] for n in TRIPLES["extraposition"])
    assert [v.rule for v in lint_extraction_pair(eps, filler, broken)] == ["e"]
    plain = _edit(host, (1,), smallest=False)
    assert [v.rule for v in lint_extraction_pair(eps, filler, plain)] == ["e"]


def test_wrong_tree_kinds(g):
    found = lint_extraction_pair(g.trees["alpha_s_eps"], g.trees["alpha_arrive"],
                                 g.trees["beta_np_eps"])
    assert sorted({v.rule for v in found}) == ["a", "d", "e"]
