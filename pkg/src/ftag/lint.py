"""Structural and feature-passing checks for extraction tree triples.

A triple is (trace tree, filler tree, host tree).  The clauses are:

(a) the trace tree's root has exactly two daughters, its foot and a node
    dominating an empty category;
(b) the root's top ``displ_const_index`` is the same variable as the
    ``index`` of that daughter;
(c) the trace tree's foot has top ``displ_const=-`` and its root has bottom
    ``displ_const=+``;
(d) the filler tree's root daughters share one ``displ_const_index``
    variable and its foot is an S with top ``displ_const=+``;
(e) the host's root has top ``displ_const=-``; every node annotated
    ``@smallest`` has bottom ``displ_const=-`` and its top ``displ_const`` and
    ``displ_const_index`` are the variables on the bottom of the root.
"""
from __future__ import annotations

from typing import List

from .features import Var
from .trees import (
    AUXILIARY, EPSILON, FOOT, INITIAL, ElementaryTree, TreeNode, Violation,
    iter_nodes,
)

__all__ = ["lint_extraction_pair", "DC", "DCI"]

DC = "displ_const"
DCI = "displ_const_index"


def _dominates_eps(node: TreeNode) -> bool:
    return any(n.kind == EPSILON for _, n in iter_nodes(node))


def _lint_trace(t: ElementaryTree) -> List[Violation]:
    out = []

    def bad(clause, addr, msg):
        out.append(Violation(t.name, addr, clause, msg))

    root = t.root
    if t.kind != AUXILIARY:
        bad("a", (), "trace tree must be an auxiliary tree")
        return out
    kids = root.children
    foot_i = [i for i, c in enumerate(kids, 1) if c.kind == FOOT]
    eps_i = [i for i, c in enumerate(kids, 1) if c.kind != FOOT and _dominates_eps(c)]
    if len(kids) != 2 or len(foot_i) != 1 or len(eps_i) != 1:
        bad("a", (), f"root has {len(kids)} daughters; expected a foot and one "
                     "node dominating an empty category")
    if eps_i:
        i = eps_i[0]
        index = kids[i - 1].top.get("index")
        dci = root.top.get(DCI)
        if not (isinstance(dci, Var) and dci == index):
            bad("b", (i,), f"root top {DCI} is not coindexed with the index of "
                           "the daughter dominating the empty category")
    foot_addr = t.foot_address
    if foot_addr is not None:
        foot = _at(t.root, foot_addr)
        if foot.top.get(DC) != "-":
            bad("c", foot_addr, f"foot top {DC} must be '-', "
                                f"found {foot.top.get(DC)!r}")
    if root.bottom.get(DC) != "+":
        bad("c", (), f"root bottom {DC} must be '+', found {root.bottom.get(DC)!r}")
    return out


def _at(node: TreeNode, addr) -> TreeNode:
    for i in addr:
        node = node.children[i - 1]
    return node


def _lint_filler(t: ElementaryTree) -> List[Violation]:
    out = []

    def bad(addr, msg):
        out.append(Violation(t.name, addr, "d", msg))

    if t.kind != AUXILIARY:
        bad((), "filler tree must be an auxiliary tree")
        return out
    if any(n.kind == EPSILON for _, n in t.nodes()):
        bad((), "filler tree must not contain an empty category")
    kids = t.root.children
    feet = [c for c in kids if c.kind == FOOT]
    if len(kids) != 2 or len(feet) != 1:
        bad((), "root must have two daughters, one of them the foot")
    else:
        a, b = (c.top.get(DCI) for c in kids)
        if not (isinstance(a, Var) and a == b):
            bad((), f"{DCI} is not coindexed between the two daughters of the root")
    foot_addr = t.foot_address
    if foot_addr is not None:
        foot = _at(t.root, foot_addr)
        if foot.category != "S":
            bad(foot_addr, f"foot category must be S, found {foot.category}")
        if foot.top.get(DC) != "+":
            bad(foot_addr, f"foot top {DC} must be '+', found {foot.top.get(DC)!r}")
    return out


def _lint_host(t: ElementaryTree) -> List[Violation]:
    out = []

    def bad(addr, msg):
        out.append(Violation(t.name, addr, "e", msg))

    if t.kind != INITIAL:
        bad((), "host must be an initial tree")
    root = t.root
    if root.top.get(DC) != "-":
        bad((), f"root top {DC} must be '-'")
    smallest = [(a, n) for a, n in t.nodes() if n.smallest]
    if not smallest:
        bad((), "no node is annotated @smallest")
    for addr, node in smallest:
        if node.bottom.get(DC) != "-":
            bad(addr, f"smallest constituent bottom {DC} must be '-'")
        for attr in (DC, DCI):
            v = node.top.get(attr)
            if not (isinstance(v, Var) and v == root.bottom.get(attr)):
                bad(addr, f"{attr} not coindexed between root bottom and "
                          "smallest constituent top")
    return out


def lint_extraction_pair(eps_tree: ElementaryTree, filler_tree: ElementaryTree,
                         host: ElementaryTree) -> List[Violation]:
    """All clause violations of one trace/filler/host triple."""
    return _lint_trace(eps_tree) + _lint_filler(filler_tree) + _lint_host(host)
