"""Brute-force derivation enumeration, used to cross-check the parser.

Nothing here shares code with the parser's search.  Starting from every
initial tree of the start category, the oracle attaches one fresh
elementary tree at a time, at every node of the growing derived tree and
by both operations, and lets the composer decide what is legal.  Partial
trees that differ only in the order of their steps are merged by their
canonical derivation.
"""
from __future__ import annotations

from typing import Dict, Set, Tuple

from .composer import (
    CompositionError, DerivedTree, Rejected, adjoin, finalize, instantiate,
    substitute, tree_yield,
)
from .derivation import Derivation, derivation_of
from .features import fresh_ids
from .trees import AUXILIARY, INITIAL, SUBST, Grammar

__all__ = ["oracle_language", "oracle_derivations"]


def _anchors(tree: DerivedTree) -> int:
    return sum(1 for _, n in tree.nodes() if n.word is not None)


def _open_sites(tree: DerivedTree) -> int:
    return sum(1 for _, n in tree.nodes() if n.kind == SUBST)


def _extensions(grammar: Grammar, tree: DerivedTree, fresh, max_len: int):
    room = max_len - _anchors(tree)
    for addr, node in list(tree.nodes()):
        for name in sorted(grammar.trees):
            et = grammar.trees[name]
            if len(et.anchors) > room:
                continue
            if node.kind == SUBST:
                if et.kind != INITIAL:
                    continue
                op = substitute
            else:
                if et.kind != AUXILIARY:
                    continue
                op = adjoin
            try:
                yield op(tree, addr, instantiate(et, fresh))
            except (Rejected, CompositionError):
                continue


def oracle_derivations(grammar: Grammar, max_len: int,
                       max_trees: int) -> Dict[Tuple[str, ...], Set[Derivation]]:
    """Every accepted derivation with at most ``max_trees`` elementary trees
    and ``max_len`` words, keyed by yield."""
    fresh = fresh_ids("o")
    frontier: Dict[Derivation, DerivedTree] = {}
    for name in sorted(grammar.singles if grammar.treesets else grammar.trees):
        et = grammar.trees[name]
        if et.kind == INITIAL and et.category == grammar.start:
            t = instantiate(et, fresh)
            if _anchors(t) <= max_len and 1 + _open_sites(t) <= max_trees:
                frontier[derivation_of(t)] = t
    out: Dict[Tuple[str, ...], Set[Derivation]] = {}
    seen = set(frontier)
    size = 1
    while frontier:
        for d, t in frontier.items():
            try:
                final = finalize(t)
            except Rejected:
                continue
            out.setdefault(tuple(tree_yield(final)), set()).add(d)
        if size == max_trees:
            break
        nxt: Dict[Derivation, DerivedTree] = {}
        for t in frontier.values():
            for u in _extensions(grammar, t, fresh, max_len):
                if size + 1 + _open_sites(u) > max_trees:
                    continue
                d = derivation_of(u)
                if d not in seen:
                    seen.add(d)
                    nxt[d] = u
        frontier = nxt
        size += 1
    return out


def oracle_language(grammar: Grammar, max_len: int, max_trees: int) -> Set[Tuple[str, ...]]:
    return set(oracle_derivations(grammar, max_len, max_trees))
