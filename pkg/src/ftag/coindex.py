"""Coindexation in finished trees: traces, their fillers, c-command."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .composer import FinalNode, FinalTree
from .trees import EPSILON, Address, format_address, iter_nodes

__all__ = [
    "traces", "fillers", "dominates", "c_commands", "unbound_traces",
    "skeleton", "Skeleton", "first_difference",
]

_INDEX_ATTRS = ("index", "displ_const_index")


def traces(tree: FinalTree) -> Dict[Address, str]:
    """Address of every indexed empty category, with its index."""
    return {a: n.index for a, n in tree.nodes()
            if n.kind == EPSILON and n.index is not None}


def _eps_below(node: FinalNode, idx: str) -> bool:
    return any(n.kind == EPSILON and n.index == idx for _, n in iter_nodes(node))


def fillers(tree: FinalTree) -> Dict[Address, str]:
    """Nodes that carry a trace's index without containing that trace.

    A node qualifies when its ``index`` or ``displ_const_index`` equals the
    index of some empty category and it does not dominate an empty category
    with the same index.
    """
    wanted = set(traces(tree).values())
    out = {}
    for addr, node in tree.nodes():
        if node.kind == EPSILON:
            continue
        for attr in _INDEX_ATTRS:
            v = node.features.get(attr)
            if v in wanted and not _eps_below(node, v):
                out[addr] = v
                break
    return out


def dominates(a: Address, b: Address) -> bool:
    """Reflexive dominance between addresses."""
    return b[:len(a)] == a


def c_commands(tree: FinalTree, a: Address, b: Address) -> bool:
    """Whether the node at ``a`` c-commands the node at ``b``.

    ``a`` c-commands ``b`` when ``a``'s first branching ancestor dominates
    ``b`` and ``a`` does not dominate ``b``.
    """
    if dominates(a, b):
        return False
    nodes = dict(tree.nodes())
    up = a[:-1]
    while up and len(nodes[up].children) < 2:
        up = up[:-1]
    if not a or len(nodes[up].children) < 2:
        return False
    return dominates(up, b)


def unbound_traces(tree: FinalTree) -> List[Tuple[Address, str]]:
    """Traces not c-commanded by any filler with their index."""
    fill = fillers(tree)
    bad = []
    for addr, idx in sorted(traces(tree).items()):
        if not any(i == idx and c_commands(tree, f, addr) for f, i in fill.items()):
            bad.append((addr, idx))
    return bad


@dataclass(frozen=True)
class Skeleton:
    """A tree with features erased except trace/filler indices."""

    category: str
    kind: str
    word: Optional[str]
    index: Optional[int]
    children: Tuple["Skeleton", ...]

    def render(self) -> str:
        head = self.category + (f"_{self.index}" if self.index is not None else "")
        if self.word is not None:
            return f"({head} {self.word})"
        if self.kind == EPSILON:
            return f"({head} eps)"
        return "(" + head + "".join(" " + c.render() for c in self.children) + ")"


def skeleton(tree: FinalTree) -> Skeleton:
    """Project ``tree``; indices are renumbered 1, 2, ... in preorder."""
    marked = dict(traces(tree))
    marked.update(fillers(tree))
    order: Dict[str, int] = {}
    for addr, _ in tree.nodes():
        if addr in marked and marked[addr] not in order:
            order[marked[addr]] = len(order) + 1

    def build(node: FinalNode, addr: Address) -> Skeleton:
        idx = order[marked[addr]] if addr in marked else None
        kids = tuple(build(c, addr + (i,)) for i, c in enumerate(node.children, 1))
        return Skeleton(node.category, node.kind, node.word, idx, kids)

    return build(tree.root, ())


def first_difference(a: Skeleton, b: Skeleton,
                     addr: Address = ()) -> Optional[Tuple[Address, str]]:
    """Address and description of the first preorder mismatch, or ``None``."""
    for field in ("category", "kind", "word", "index"):
        x, y = getattr(a, field), getattr(b, field)
        if x != y:
            return addr, f"{field} {x!r} vs {y!r} at {format_address(addr)}"
    for i, (ca, cb) in enumerate(zip(a.children, b.children), 1):
        d = first_difference(ca, cb, addr + (i,))
        if d:
            return d
    if len(a.children) != len(b.children):
        return addr, (f"{len(a.children)} vs {len(b.children)} daughters "
                      f"at {format_address(addr)}")
    return None
