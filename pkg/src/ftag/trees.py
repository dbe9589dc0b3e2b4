"""Elementary trees, grammars and structural validation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .features import EMPTY, FeatureStructure

__all__ = [
    "INTERIOR", "SUBST", "FOOT", "ANCHOR", "EPSILON",
    "INITIAL", "AUXILIARY",
    "Address", "AddressError",
    "NodeLabel", "TreeNode", "ElementaryTree", "TreeSet", "Grammar",
    "Violation", "node_at", "iter_nodes", "validate_tree", "validate_grammar",
    "format_address", "parse_address", "evolve",
]

INTERIOR = "interior"
SUBST = "substitution"
FOOT = "foot"
ANCHOR = "anchor"
EPSILON = "epsilon"

INITIAL = "initial"
AUXILIARY = "auxiliary"

Address = Tuple[int, ...]


class AddressError(LookupError):
    pass


@dataclass(frozen=True)
class NodeLabel:
    category: str
    tag: Optional[str] = None

    def __str__(self) -> str:
        return self.category if self.tag is None else f"{self.category}_{self.tag}"

    @classmethod
    def parse(cls, text: str) -> "NodeLabel":
        cat, sep, tag = text.partition("_")
        if not cat:
            raise ValueError(f"empty category in label {text!r}")
        return cls(cat, tag if sep else None)


def evolve(obj, **changes):
    """``dataclasses.replace`` without re-running ``__init__``.

    Only for frozen dataclasses with no ``__post_init__``; derivation code
    copies nodes often enough for the difference to matter.
    """
    new = object.__new__(type(obj))
    new.__dict__.update(obj.__dict__)
    new.__dict__.update(changes)
    return new


@dataclass(frozen=True)
class TreeNode:
    """One node of an elementary or derived tree.

    ``origin`` and ``site`` are only set on nodes of derived trees; they
    are ``(instance, tree_name, address)`` triples naming the elementary
    tree node a derived node came from (``site`` is the substitution site
    a merged argument root replaced).  ``home`` is set on the lower half of
    an adjunction: the origin of the node whose bottom features it keeps.
    """

    label: NodeLabel
    kind: str = INTERIOR
    top: FeatureStructure = EMPTY
    bottom: FeatureStructure = EMPTY
    constraint: Optional[str] = None
    selective: Tuple[str, ...] = ()
    children: Tuple["TreeNode", ...] = ()
    word: Optional[str] = None
    smallest: bool = False
    origin: Optional[tuple] = field(default=None, compare=False)
    site: Optional[tuple] = field(default=None, compare=False)
    home: Optional[tuple] = field(default=None, compare=False)

    @property
    def category(self) -> str:
        return self.label.category

    @property
    def effective_constraint(self) -> Optional[str]:
        # feet and substitution sites are closed to adjunction unless told otherwise
        if self.constraint is None and self.kind in (FOOT, SUBST):
            return "NA"
        return self.constraint

    @property
    def is_frontier(self) -> bool:
        return not self.children

    @property
    def index(self):
        """The coindexation value of an epsilon node, if any."""
        return self.top.get("index") if self.kind == EPSILON else None

    def with_children(self, children) -> "TreeNode":
        return evolve(self, children=tuple(children))


def iter_nodes(node: TreeNode, address: Address = ()) -> Iterator[Tuple[Address, TreeNode]]:
    """Preorder walk yielding ``(address, node)``."""
    stack = [(address, node)]
    while stack:
        addr, n = stack.pop()
        yield addr, n
        kids = n.children
        for i in range(len(kids), 0, -1):
            stack.append((addr + (i,), kids[i - 1]))


def _root_of(tree) -> TreeNode:
    return tree if isinstance(tree, TreeNode) else tree.root


def node_at(tree, address: Address):
    """Return the node at a Gorn address (1-based children, root = ())."""
    node = _root_of(tree)
    for depth, i in enumerate(address):
        if not 1 <= i <= len(node.children):
            raise AddressError(
                f"address {format_address(address)} out of range at depth {depth}")
        node = node.children[i - 1]
    return node


def format_address(address: Address) -> str:
    return "[" + ",".join(str(i) for i in address) + "]"


def parse_address(text: str) -> Address:
    """Accepts ``[2,2]``, ``[]``, ``2.2`` and ``.`` (root)."""
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        body = text[1:-1].strip()
        parts = [p for p in body.split(",") if p.strip()]
    elif text in (".", ""):
        parts = []
    else:
        parts = text.split(".")
    try:
        address = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad Gorn address {text!r}") from None
    if any(i < 1 for i in address):
        raise ValueError(f"bad Gorn address {text!r}: children are 1-based")
    return address


@dataclass(frozen=True)
class ElementaryTree:
    name: str
    kind: str
    root: TreeNode
    comment: str = field(default="", compare=False)

    def nodes(self) -> Iterator[Tuple[Address, TreeNode]]:
        return iter_nodes(self.root)

    @property
    def is_auxiliary(self) -> bool:
        return self.kind == AUXILIARY

    @property
    def category(self) -> str:
        return self.root.category

    @property
    def foot_address(self) -> Optional[Address]:
        for addr, node in self.nodes():
            if node.kind == FOOT:
                return addr
        return None

    @property
    def anchors(self) -> Tuple[str, ...]:
        return tuple(n.word for _, n in self.nodes() if n.kind == ANCHOR)


@dataclass(frozen=True)
class TreeSet:
    """Ordered group of trees composed tree-locally as one unit."""

    name: str
    members: Tuple[str, ...]
    links: Tuple[str, ...] = ()


@dataclass
class Grammar:
    name: str
    start: str
    trees: Dict[str, ElementaryTree] = field(default_factory=dict)
    treesets: Dict[str, TreeSet] = field(default_factory=dict)

    # identity hashing lets parse caches key on a loaded grammar
    __hash__ = object.__hash__

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return (self.name, self.start, self.trees, self.treesets) == (
            other.name, other.start, other.trees, other.treesets)

    def __getitem__(self, name: str) -> ElementaryTree:
        return self.trees[name]

    @property
    def vocabulary(self) -> List[str]:
        return sorted({w for t in self.trees.values() for w in t.anchors})

    @property
    def set_members(self) -> set:
        return {m for ts in self.treesets.values() for m in ts.members}

    @property
    def singles(self) -> Dict[str, ElementaryTree]:
        """Trees usable on their own (not only as members of a tree set)."""
        members = self.set_members
        return {n: t for n, t in self.trees.items() if n not in members}


@dataclass(frozen=True)
class Violation:
    tree: str
    address: Address
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.tree} {format_address(self.address)} {self.rule}: {self.message}"


def validate_tree(tree: ElementaryTree) -> List[Violation]:
    """Every violated elementary-tree invariant, with the offending address."""
    out = []

    def bad(addr, rule, msg):
        out.append(Violation(tree.name, addr, rule, msg))

    if tree.kind not in (INITIAL, AUXILIARY):
        bad((), "kind", f"unknown tree kind {tree.kind!r}")
    feet = []
    for addr, node in tree.nodes():
        if node.kind in (SUBST, FOOT, ANCHOR, EPSILON) and node.children:
            bad(addr, "leaf-children", f"{node.kind} node has children")
        if node.kind == INTERIOR and not node.children:
            bad(addr, "bare-frontier",
                "frontier node is not a substitution site, anchor, foot or epsilon")
        if node.kind == ANCHOR and not node.word:
            bad(addr, "anchor-word", "anchor without a word")
        if node.kind in (FOOT, SUBST) and node.effective_constraint == "OA":
            bad(addr, "closed-node", f"{node.kind} node cannot carry OA")
        if node.kind == FOOT:
            feet.append((addr, node))
        if node.kind in (FOOT, SUBST) and addr == ():
            bad(addr, "root-leaf", f"root cannot be a {node.kind} node")
    if tree.kind == INITIAL:
        for addr, _ in feet:
            bad(addr, "foot-in-initial", "initial tree contains a foot node")
    elif tree.kind == AUXILIARY:
        if not feet:
            bad((), "foot-count", "auxiliary tree has no foot node")
        elif len(feet) > 1:
            for addr, _ in feet[1:]:
                bad(addr, "foot-count", "auxiliary tree has multiple foot nodes")
        for addr, node in feet:
            if node.category != tree.root.category:
                bad(addr, "foot-category",
                    f"foot category {node.category} differs from root category "
                    f"{tree.root.category}")
    return out


def validate_grammar(grammar: Grammar) -> List[Violation]:
    out = []
    for name, tree in grammar.trees.items():
        out.extend(validate_tree(tree))
        for addr, node in tree.nodes():
            for ref in node.selective:
                if ref not in grammar.trees:
                    out.append(Violation(name, addr, "sa-reference",
                                         f"SA names unknown tree {ref!r}"))
    for ts in grammar.treesets.values():
        for m in ts.members:
            if m not in grammar.trees:
                out.append(Violation(ts.name, (), "treeset-member",
                                     f"tree set member {m!r} is not defined"))
        if not ts.members:
            out.append(Violation(ts.name, (), "treeset-member", "empty tree set"))
    return out
