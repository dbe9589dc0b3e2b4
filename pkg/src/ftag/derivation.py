"""Derivation trees: which elementary tree went where, by which operation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .composer import (
    ADJUNCTION, SUBSTITUTION, CompositionError, DerivedTree, Rejected, adjoin,
    find_origin, instantiate, substitute,
)
from .features import fresh_ids
from .trees import ANCHOR, FOOT, SUBST, Address, Grammar, TreeNode, format_address, node_at

__all__ = [
    "CompositionRecord", "Derivation", "derivation_of", "realize", "parse_derivation",
    "derivation_yield",
]

_OP_RANK = {SUBSTITUTION: 0, ADJUNCTION: 1}


@dataclass(frozen=True)
class CompositionRecord:
    parent: str
    operation: str
    address: Address
    child: str
    treeset: Optional[str] = None

    def __str__(self) -> str:
        verb = "substitutes at" if self.operation == SUBSTITUTION else "adjoins at"
        s = f"{self.child} {verb} {format_address(self.address)} of {self.parent}"
        return s + (f" (tree set {self.treeset})" if self.treeset else "")

    def describe(self, grammar: Grammar) -> str:
        """Like ``str`` but naming the node, e.g. ``... at the NP_0 node of ...``."""
        label = node_at(grammar.trees[self.parent], self.address).label
        verb = "substitutes at" if self.operation == SUBSTITUTION else "adjoins to"
        s = f"{self.child} {verb} the {label} node of {self.parent}"
        return s + (f" (tree set {self.treeset})" if self.treeset else "")


@dataclass(frozen=True)
class Derivation:
    """A derivation tree in canonical form.

    Children are kept sorted by (address, operation), so two derivations
    that differ only in the order the operations were carried out compare
    equal.
    """

    tree: str
    children: Tuple[Tuple[CompositionRecord, "Derivation"], ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.children, key=lambda rc: (
            rc[0].address, _OP_RANK[rc[0].operation], rc[0].treeset or "",
            rc[1].sort_key())))
        object.__setattr__(self, "children", ordered)

    def sort_key(self) -> tuple:
        return (self.tree, tuple((r.address, _OP_RANK[r.operation], r.treeset or "",
                                  d.sort_key()) for r, d in self.children))

    def __lt__(self, other: "Derivation") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def size(self) -> int:
        return 1 + sum(d.size for _, d in self.children)

    def trees(self) -> Iterator[str]:
        yield self.tree
        for _, d in self.children:
            yield from d.trees()

    def records(self) -> Iterator[CompositionRecord]:
        """All composition records, preorder."""
        for r, d in self.children:
            yield r
            yield from d.records()

    def pretty(self, indent: int = 0) -> str:
        lines = [" " * indent + self.tree]
        for r, d in self.children:
            op = "subst" if r.operation == SUBSTITUTION else "adjoin"
            tag = f" [{r.treeset}]" if r.treeset else ""
            sub = d.pretty(indent + 4).lstrip()
            lines.append(" " * (indent + 2) + f"{op} {format_address(r.address)}{tag}: {sub}")
        return "\n".join(lines)

    def __str__(self) -> str:
        if not self.children:
            return self.tree
        inner = " ".join(
            f"({'sub' if r.operation == SUBSTITUTION else 'adj'}"
            f"{':' + r.treeset if r.treeset else ''} "
            f"{'.'.join(map(str, r.address)) or '.'} {d})"
            for r, d in self.children)
        return f"({self.tree} {inner})"


def derivation_of(tree: DerivedTree) -> Derivation:
    """Rebuild the derivation tree from a derived tree's composition log."""
    names = tree.tree_names
    kids: Dict[str, List[tuple]] = {}
    for parent, op, addr, child in tree.records:
        kids.setdefault(parent, []).append((op, addr, child))

    def build(inst: str) -> Derivation:
        return Derivation(names[inst], tuple(
            (CompositionRecord(names[inst], op, addr, names[c]), build(c))
            for op, addr, c in kids.get(inst, ())))

    return build(tree.root_instance)


def parse_derivation(text: str) -> Derivation:
    """Read the compact form ``(alpha_walked (sub 1 alpha_john) (adj 2 (beta ...)))``.

    Steps that belong to a tree set carry its name: ``(adj:ext_relative 1 beta)``.
    """
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of derivation")
        pos += 1
        return tokens[pos - 1]

    def node() -> Derivation:
        tok = take()
        if tok != "(":
            return Derivation(tok)
        name = take()
        children = []
        while pos < len(tokens) and tokens[pos] != ")":
            if take() != "(":
                raise ValueError("expected '(' before composition step")
            op, _, treeset = take().partition(":")
            if op not in ("sub", "adj"):
                raise ValueError(f"unknown operation {op!r}")
            addr_text = take()
            addr = () if addr_text == "." else tuple(int(x) for x in addr_text.split("."))
            child = node()
            if take() != ")":
                raise ValueError("expected ')' after composition step")
            operation = SUBSTITUTION if op == "sub" else ADJUNCTION
            children.append((CompositionRecord(name, operation, addr, child.tree,
                                               treeset or None), child))
        take()
        return Derivation(name, tuple(children))

    d = node()
    if pos != len(tokens):
        raise ValueError("trailing text after derivation")
    return d


def realize(grammar: Grammar, derivation: Derivation, fresh=None) -> DerivedTree:
    """Compose the derived tree of ``derivation``.

    Raises :class:`Rejected` if some step fails, and
    :class:`CompositionError` if the derivation names a missing node.
    """
    fresh = fresh_ids() if fresh is None else fresh
    if derivation.tree not in grammar.trees:
        raise CompositionError(f"unknown tree {derivation.tree!r}")
    host = instantiate(grammar.trees[derivation.tree], fresh)
    inst = host.root_instance
    for rec, child in derivation.children:
        arg = realize(grammar, child, fresh)
        addr = find_origin(host, inst, rec.address)
        if addr is None:
            where = (inst, derivation.tree, rec.address)
            if where in host.adjoined:
                raise Rejected("adjoined", rec.address, where)
            if find_origin(host, inst, rec.address, site=True) is not None:
                raise Rejected("NA", rec.address, where, detail="substitution site")
            raise CompositionError(
                f"{derivation.tree} has no node at {format_address(rec.address)}")
        if rec.operation == SUBSTITUTION:
            if node_at(host, addr).kind != SUBST:
                raise CompositionError(
                    f"{derivation.tree}@{format_address(rec.address)} is not a substitution site")
            host = substitute(host, addr, arg)
        else:
            host = adjoin(host, addr, arg, tree_name=child.tree)
    return host


def derivation_yield(grammar: Grammar, derivation: Derivation) -> Tuple[str, ...]:
    """Words the derivation would produce, read off the trees without features.

    This is only the shape of the answer: whether the derivation is
    accepted still takes :func:`realize` and finalization.
    """
    def of(d: Derivation, foot: Tuple[str, ...] = ()) -> Tuple[str, ...]:
        subs, adjs = {}, {}
        for rec, child in d.children:
            (subs if rec.operation == SUBSTITUTION else adjs)[rec.address] = child

        def walk(node: TreeNode, addr: Address) -> Tuple[str, ...]:
            if node.kind == ANCHOR:
                inner = (node.word,)
            elif node.kind == SUBST:
                child = subs.get(addr)
                inner = of(child) if child is not None else (f"⟨{node.category}!⟩",)
            elif node.kind == FOOT:
                inner = foot
            else:
                inner = tuple(w for i, c in enumerate(node.children, 1)
                              for w in walk(c, addr + (i,)))
            aux = adjs.get(addr)
            return of(aux, inner) if aux is not None else inner

        return walk(grammar.trees[d.tree].root, ())

    return of(derivation)
