from __future__ import annotations

import pytest

from ftag import (
    CompositionError, FeatureStructure, Rejected, adjoin, bracket, bundled_grammar,
    finalize, instantiate, load_grammar, parse_derivation, realize, substitute,
    tree_yield,
)
from ftag.features import fresh_ids, resolve, unify

from conftest import FIXTURES


@pytest.fixture
def make():
    fresh = fresh_ids("t")

    def inst(grammar, name):
        return instantiate(grammar.trees[name], fresh)
    return inst


@pytest.fixture(scope="module")
def fig1():
    return bundled_grammar("figure1")


@pytest.fixture(scope="module")
def ext():
    return bundled_grammar("extraposition")


def test_figure1_steps(fig1, make):
    step1 = substitute(make(fig1, "alpha_walked"), (1,), make(fig1, "alpha_john"))
    step2 = substitute(make(fig1, "beta_to_pp"), (2, 2), make(fig1, "alpha_philadelphia"))
    step3 = adjoin(step1, (2,), step2)
    assert bracket(finalize(step3)) == (FIXTURES / "figure1e.txt").read_text().strip()
    assert tree_yield(step3) == ["john", "walked", "to", "philadelphia"]
    assert step3.pending == []


def test_yield_splices_around_the_foot(fig1, make):
    host = substitute(make(fig1, "alpha_walked"), (1,), make(fig1, "alpha_john"))
    aux = substitute(make(fig1, "beta_to_pp"), (2, 2), make(fig1, "alpha_philadelphia"))
    before = tree_yield(host)
    after = tree_yield(adjoin(host, (2,), aux))
    # the VP subtree yields "walked"; the auxiliary tree wraps it
    assert before == ["john", "walked"]
    assert after == ["john"] + ["walked"] + ["to", "philadelphia"]


def test_adjunction_feature_schema(make):
    g = load_grammar("""
    grammar s start=S
    tree host initial { (S (VP [t: a=+] [b: b=-] (V "v"))) }
    tree aux auxiliary { (VP [t: c=+] [b: d=+] (VP* [t: e=-] [b: f=+]) (Adv "x")) }
    """)
    host, aux = make(g, "host"), make(g, "aux")
    out = adjoin(host, (1,), aux)
    expected_top = resolve(unify(host.top((1,)), aux.top(()))[0], out.env)
    assert out.top((1,)) == expected_top == FeatureStructure({"a": "+", "c": "+"})
    assert out.bottom((1,)) == FeatureStructure({"d": "+"})
    # the foot position keeps the host node's original bottom
    assert out.top((1, 1)) == FeatureStructure({"e": "-"})
    assert out.bottom((1, 1)) == FeatureStructure({"b": "-"})


def test_order_of_adjunction_does_not_change_the_result(ext, make):
    def rc():
        return substitute(make(ext, "beta_extraposed"), (2, 2, 2), make(ext, "alpha_mary"))

    def host():
        return substitute(make(ext, "alpha_arrive"), (1,), make(ext, "alpha_a_man"))

    a = adjoin(adjoin(host(), (), rc()), (1, 1), make(ext, "beta_np_eps"))
    b = adjoin(adjoin(host(), (1,), make(ext, "beta_np_eps")), (), rc())
    assert finalize(a) == finalize(b)
    assert tree_yield(a) == "a man arrived who knew mary".split()


def test_substitution_order_does_not_change_the_result(ext, make):
    def wanted():
        return make(ext, "alpha_wanted")
    a = substitute(substitute(wanted(), (1,), make(ext, "alpha_i")), (2, 2),
                   make(ext, "alpha_pizza"))
    b = substitute(substitute(wanted(), (2, 2), make(ext, "alpha_pizza")), (1,),
                   make(ext, "alpha_i"))
    assert finalize(a) == finalize(b)


def test_partial_derivations_fail_where_expected(ext, make):
    rc = substitute(make(ext, "beta_extraposed"), (2, 2, 2), make(ext, "alpha_mary"))
    host = substitute(make(ext, "alpha_arrive"), (1,), make(ext, "alpha_a_man"))
    with pytest.raises(Rejected) as info:
        finalize(adjoin(host, (), rc))
    assert info.value.location == ("alpha_arrive", (1,))
    assert info.value.reason == "clash" and info.value.attribute == "displ_const"
    with pytest.raises(Rejected) as info:
        finalize(adjoin(host, (1,), make(ext, "beta_np_eps")))
    assert info.value.location == ("alpha_arrive", ())


def test_single_adjunction_per_node(fig1):
    d = parse_derivation("(alpha_walked (sub 1 alpha_john) (adj 2 beta_to_pp) "
                         "(adj 2 (beta_to_pp (sub 2.2 alpha_john))))")
    with pytest.raises(Rejected) as info:
        realize(fig1, d)
    assert info.value.reason == "adjoined"


def test_constraints(make):
    g = load_grammar("""
    grammar c start=S
    tree h initial { (S (A @NA "a") (B @SA(ok) "b") (NP!) (C @OA "c")) }
    tree ok auxiliary { (B (B*) (X "x")) }
    tree bad auxiliary { (B (B*) (Y "y")) }
    tree c auxiliary { (C (C*) (Z "z")) }
    tree n initial { (NP "n") }
    tree v initial { (VP "v") }
    tree a auxiliary { (A (A*) (W "w")) }
    """)
    h = make(g, "h")
    with pytest.raises(Rejected, match="NA"):
        adjoin(h, (1,), make(g, "a"))
    with pytest.raises(Rejected, match="SA"):
        adjoin(h, (2,), make(g, "bad"))
    adjoin(h, (2,), make(g, "ok"))
    with pytest.raises(Rejected, match="category"):
        substitute(h, (3,), make(g, "v"))
    with pytest.raises(Rejected, match="category"):
        adjoin(h, (4,), make(g, "ok"))
    with pytest.raises(Rejected, match="unfilled site"):
        finalize(h)
    h = substitute(h, (3,), make(g, "n"))
    with pytest.raises(Rejected, match="OA not discharged"):
        finalize(h)
    done = finalize(adjoin(h, (4,), make(g, "c")))
    assert tree_yield(done) == ["a", "b", "n", "c", "z"]


def test_feature_clash_acts_as_obligatory_adjunction(make):
    g = load_grammar("""
    grammar o start=S
    tree h initial { (S (VP [t: f=+] [b: f=-] (V "v"))) }
    tree a auxiliary { (VP [b: f=+] (VP* [t: f=-]) (Adv "x")) }
    """)
    with pytest.raises(Rejected) as info:
        finalize(make(g, "h"))
    assert info.value.reason == "clash" and info.value.location == ("h", (1,))
    assert tree_yield(finalize(adjoin(make(g, "h"), (1,), make(g, "a")))) == ["v", "x"]


def test_wrong_operations_are_errors(fig1, make):
    with pytest.raises(CompositionError):
        substitute(make(fig1, "alpha_walked"), (2,), make(fig1, "alpha_john"))
    with pytest.raises(CompositionError):
        substitute(make(fig1, "beta_to_pp"), (2, 2), make(fig1, "beta_to_pp"))
    with pytest.raises(CompositionError):
        adjoin(make(fig1, "alpha_walked"), (2,), make(fig1, "alpha_john"))
    with pytest.raises(CompositionError):
        realize(fig1, parse_derivation("(alpha_walked (adj 9 beta_to_pp))"))
    with pytest.raises(CompositionError):
        realize(fig1, parse_derivation("(nope)"))


def test_indices_are_named_in_preorder(ext):
    d = parse_derivation("(alpha_arrive (adj . (beta_extraposed (sub 2.2.2 alpha_mary))) "
                         "(sub 1 (alpha_a_man (adj . beta_np_eps))))")
    final = finalize(realize(ext, d))
    assert "eps:i1" in bracket(final)
    assert finalize(realize(ext, d)) == final


def test_instances_get_fresh_variables(ext, make):
    a, b = make(ext, "beta_np_eps"), make(ext, "beta_np_eps")
    va = {v for _, n in a.nodes() for fs in (n.top, n.bottom) for v in fs.variables()}
    vb = {v for _, n in b.nodes() for fs in (n.top, n.bottom) for v in fs.variables()}
    assert va and vb and not va & vb
