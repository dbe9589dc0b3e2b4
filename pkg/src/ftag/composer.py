"""Substitution, adjunction, finalization and yields.

Adjunction follows the usual FTAG node-splitting schema: when auxiliary
tree ``aux`` adjoins at node ``n`` with features (t, b), and aux has root
features (tr, br) and foot features (tf, bf), the upper node ends up with
top ``t ⊔ tr`` and bottom ``br``, and the foot position with top ``tf``
and bottom ``b``.  The top-side unification happens immediately; the
foot pair is left for :func:`finalize`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .features import (
    EMPTY, FeatureStructure, Var, find_clash, format_fs, rename, resolve,
    unify, walk,
)
from .trees import (
    ANCHOR, AUXILIARY, EPSILON, FOOT, INITIAL, SUBST,
    Address, ElementaryTree, TreeNode, evolve, format_address, iter_nodes, node_at,
)

__all__ = [
    "SUBSTITUTION", "ADJUNCTION",
    "Rejected", "CompositionError",
    "DerivedTree", "FinalNode", "FinalTree",
    "instantiate", "substitute", "adjoin", "finalize", "tree_yield",
    "find_origin", "bracket",
]

SUBSTITUTION = "substitution"
ADJUNCTION = "adjunction"


class CompositionError(ValueError):
    """The caller asked for an impossible operation (not a rejection)."""


class Rejected(Exception):
    """A composition or finalization step failed for grammatical reasons.

    ``reason`` is one of ``category``, ``clash``, ``NA``, ``SA``,
    ``OA not discharged`` and ``unfilled site``.
    """

    def __init__(self, reason: str, address: Address = (), origin=None,
                 attribute: Optional[str] = None, detail: str = "", host_site=None):
        self.reason = reason
        self.address = address
        self.origin = origin
        self.host_site = host_site
        self.attribute = attribute
        self.detail = detail
        super().__init__(self.describe())

    @property
    def site(self) -> str:
        """Human-readable elementary-tree location of the failure."""
        where = self.host_site or self.origin
        if where is None:
            return format_address(self.address)
        _, tree, addr = where
        return f"{tree}@{format_address(addr)}"

    @property
    def location(self):
        """``(tree name, address)`` of the failing node, host side first."""
        where = self.host_site or self.origin
        return None if where is None else (where[1], where[2])

    def describe(self) -> str:
        msg = f"{self.reason} at {self.site}"
        if self.attribute:
            msg += f" on {self.attribute}"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


@dataclass(frozen=True)
class DerivedTree:
    root: TreeNode
    env: Dict[Var, object] = field(default_factory=dict)
    kind: str = INITIAL
    root_instance: str = ""
    instances: Tuple[Tuple[str, str], ...] = ()
    records: Tuple[Tuple[str, str, Address, str], ...] = ()
    adjoined: FrozenSet[tuple] = frozenset()
    member: Optional[tuple] = None

    @property
    def tree_names(self) -> Dict[str, str]:
        return dict(self.instances)

    @property
    def pending(self) -> List[Address]:
        """Unfilled substitution sites and undischarged OA nodes."""
        return [a for a, n in iter_nodes(self.root)
                if n.kind == SUBST or n.effective_constraint == "OA"]

    def nodes(self):
        return iter_nodes(self.root)

    def top(self, address: Address) -> FeatureStructure:
        return resolve(node_at(self, address).top, self.env)

    def bottom(self, address: Address) -> FeatureStructure:
        return resolve(node_at(self, address).bottom, self.env)


def _renamed(node: TreeNode, fresh, mapping, inst, tree_name, address=()) -> TreeNode:
    top, bottom = node.top, node.bottom
    return evolve(
        node,
        top=rename(top, fresh, mapping) if top else top,
        bottom=rename(bottom, fresh, mapping) if bottom else bottom,
        origin=(inst, tree_name, address),
        children=tuple([_renamed(c, fresh, mapping, inst, tree_name, address + (i,))
                        for i, c in enumerate(node.children, 1)]),
    )


def instantiate(tree: ElementaryTree, fresh: Iterator[str],
                mapping: Optional[dict] = None, member=None) -> DerivedTree:
    """Copy ``tree`` with fresh variables; each call is a new instance.

    Passing a shared ``mapping`` makes several instantiations share the
    variables named in it (tree-set links rely on this).
    """
    inst = next(fresh)
    mapping = {} if mapping is None else mapping
    root = _renamed(tree.root, fresh, mapping, inst, tree.name)
    return DerivedTree(root=root, kind=tree.kind, root_instance=inst,
                       instances=((inst, tree.name),), member=member)


def _replace_at(node: TreeNode, address: Address, new: TreeNode) -> TreeNode:
    if not address:
        return new
    i = address[0]
    kids = list(node.children)
    kids[i - 1] = _replace_at(kids[i - 1], address[1:], new)
    return node.with_children(kids)


def _merge(a: DerivedTree, b: DerivedTree):
    env = dict(a.env)
    env.update(b.env)
    return env, a.instances + b.instances, a.records + b.records


def find_origin(tree: DerivedTree, instance: str, address: Address,
                site: bool = False) -> Optional[Address]:
    """Derived-tree address of the node that came from ``instance@address``.

    With ``site=True`` a substitution site that has been filled is found
    through the merged argument root.
    """
    for addr, node in iter_nodes(tree.root):
        o = node.origin
        if o is not None and o[0] == instance and o[2] == address:
            return addr
        o = node.site
        if site and o is not None and o[0] == instance and o[2] == address:
            return addr
    return None


def substitute(host: DerivedTree, address: Address, arg: DerivedTree) -> DerivedTree:
    site = node_at(host, address)
    if site.kind != SUBST:
        raise CompositionError(
            f"node {format_address(address)} ({site.label}) is not an unfilled substitution site")
    if arg.kind != INITIAL:
        raise CompositionError("only initial trees can be substituted")
    if arg.root.category != site.category:
        raise Rejected("category", address, site.origin,
                       detail=f"{arg.root.category} into {site.category}")
    env, instances, records = _merge(host, arg)
    r = unify(site.top, arg.root.top, env)
    if r is None:
        raise Rejected("clash", address, site.origin,
                       attribute=find_clash(site.top, arg.root.top, env), detail="top")
    top, env = r
    # the site's bottom meets the argument root's own bottom, which sits
    # below any tree already adjoined at that root
    base = (arg.root_instance, arg.tree_names[arg.root_instance], ())
    low = ()
    if base in arg.adjoined:
        low = next(a for a, n in iter_nodes(arg.root) if n.home == base)
    low_node = node_at(arg, low)
    r = unify(site.bottom, low_node.bottom, env)
    if r is None:
        raise Rejected("clash", address, site.origin,
                       attribute=find_clash(site.bottom, low_node.bottom, env),
                       detail="bottom")
    bottom, env = r
    arg_root = _replace_at(arg.root, low, evolve(low_node, bottom=bottom))
    merged = evolve(arg_root, top=top, site=site.origin)
    rec = (site.origin[0], SUBSTITUTION, site.origin[2], arg.root_instance)
    return evolve(host, root=_replace_at(host.root, address, merged), env=env,
                   instances=instances, records=records + (rec,),
                   adjoined=host.adjoined | arg.adjoined)


def _foot(aux: DerivedTree) -> Address:
    feet = [a for a, n in iter_nodes(aux.root) if n.kind == FOOT]
    if len(feet) != 1:
        raise CompositionError(f"auxiliary tree has {len(feet)} open foot nodes")
    return feet[0]


def adjoin(host: DerivedTree, address: Address, aux: DerivedTree,
           tree_name: Optional[str] = None) -> DerivedTree:
    """Adjoin ``aux`` at ``address``; ``tree_name`` is checked against SA."""
    n = node_at(host, address)
    if aux.kind != AUXILIARY:
        raise CompositionError("only auxiliary trees can be adjoined")
    if n.kind in (SUBST, FOOT, EPSILON) or n.effective_constraint == "NA":
        raise Rejected("NA", address, n.origin, host_site=n.site,
                       detail=f"{n.kind} node {n.label}")
    name = tree_name or aux.tree_names.get(aux.root_instance)
    if n.effective_constraint == "SA" and name not in n.selective:
        raise Rejected("SA", address, n.origin, host_site=n.site,
                       detail=f"{name} not in {{{', '.join(n.selective)}}}")
    if n.origin in host.adjoined:
        raise Rejected("adjoined", address, n.origin, host_site=n.site)
    if aux.root.category != n.category:
        raise Rejected("category", address, n.origin, host_site=n.site,
                       detail=f"{aux.root.category} at {n.category}")
    foot_addr = _foot(aux)
    foot = node_at(aux, foot_addr)
    env, instances, records = _merge(host, aux)
    r = unify(n.top, aux.root.top, env)
    if r is None:
        raise Rejected("clash", address, n.origin, host_site=n.site,
                       attribute=find_clash(n.top, aux.root.top, env), detail="top")
    upper_top, env = r
    lower = evolve(n, label=foot.label, top=foot.top, constraint="NA",
                    selective=(), smallest=False, origin=foot.origin, site=None,
                    home=n.home or n.origin)
    upper = evolve(_replace_at(aux.root, foot_addr, lower), top=upper_top, site=n.site)
    rec = (n.origin[0], ADJUNCTION, n.origin[2], aux.root_instance)
    return evolve(host, root=_replace_at(host.root, address, upper), env=env,
                   instances=instances, records=records + (rec,),
                   adjoined=host.adjoined | aux.adjoined | {n.origin})


# -- finalization ------------------------------------------------------------

@dataclass(frozen=True)
class FinalNode:
    label: object
    kind: str
    features: FeatureStructure = EMPTY
    children: Tuple["FinalNode", ...] = ()
    word: Optional[str] = None
    origin: Optional[tuple] = field(default=None, compare=False)

    @property
    def category(self) -> str:
        return self.label.category

    @property
    def index(self):
        return self.features.get("index") if self.kind == EPSILON else None


@dataclass(frozen=True)
class FinalTree:
    """Derived tree after top/bottom unification; equality is structural."""

    root: FinalNode

    def nodes(self):
        return iter_nodes(self.root)

    def bracket(self, show_features: bool = False) -> str:
        return bracket(self, show_features)

    def __str__(self) -> str:
        return self.bracket()


def finalize(tree: DerivedTree) -> FinalTree:
    """Unify top and bottom of every node; raise :class:`Rejected` on failure.

    Nodes are checked in preorder and the first one whose features cannot
    be unified is reported.  Variables still unbound afterwards are named
    ``i1``, ``i2``, ... in preorder of first appearance.
    """
    for addr, node in iter_nodes(tree.root):
        if node.kind == SUBST:
            raise Rejected("unfilled site", addr, node.origin, host_site=node.site,
                           detail=str(node.label))
        if node.effective_constraint == "OA":
            raise Rejected("OA not discharged", addr, node.origin, host_site=node.site)
    env = tree.env
    merged = {}
    for addr, node in iter_nodes(tree.root):
        r = unify(node.top, node.bottom, env)
        if r is None:
            raise Rejected("clash", addr, node.origin,
                           attribute=find_clash(node.top, node.bottom, env),
                           host_site=node.site)
        merged[addr], env = r

    names: Dict[Var, str] = {}

    def ground(fs):
        if not fs:
            return EMPTY
        out = {}
        for k in sorted(fs):
            v = walk(fs[k], env)
            if isinstance(v, Var):
                if v not in names:
                    names[v] = f"i{len(names) + 1}"
                v = names[v]
            out[k] = v
        return FeatureStructure._trusted(out)

    def build(node: TreeNode, addr: Address) -> FinalNode:
        feats = ground(merged[addr])
        kids = tuple(build(c, addr + (i,)) for i, c in enumerate(node.children, 1))
        return FinalNode(node.label, node.kind, feats, kids, node.word, node.origin)

    return FinalTree(build(tree.root, ()))


# -- yields and rendering ------------------------------------------------------

def _root(tree):
    return tree if isinstance(tree, (TreeNode, FinalNode)) else tree.root


def tree_yield(tree) -> List[str]:
    """Frontier words left to right; unfilled sites show as ``⟨CAT!⟩``."""
    out = []
    for _, node in iter_nodes(_root(tree)):
        if node.kind == ANCHOR:
            out.append(node.word)
        elif node.kind == SUBST:
            out.append(f"⟨{node.category}!⟩")
        elif node.kind == FOOT:
            out.append(f"⟨{node.category}*⟩")
    return out


def bracket(tree, show_features: bool = False) -> str:
    """Labeled bracketing, e.g. ``(S (NP john) (VP (V walked)))``."""
    env = tree.env if isinstance(tree, DerivedTree) else {}

    def feats(node) -> str:
        if not show_features:
            return ""
        if isinstance(node, FinalNode):
            fs = node.features
            return f" [{format_fs(fs)}]" if fs else ""
        top, bottom = resolve(node.top, env), resolve(node.bottom, env)
        parts = []
        if top:
            parts.append(f"[t: {format_fs(top)}]")
        if bottom:
            parts.append(f"[b: {format_fs(bottom)}]")
        return (" " + " ".join(parts)) if parts else ""

    def render(node) -> str:
        head = node.category + feats(node)
        if node.kind == ANCHOR:
            return f"({head} {node.word})"
        if node.kind == EPSILON:
            idx = node.features.get("index") if isinstance(node, FinalNode) else \
                walk(node.top.get("index"), env) if "index" in node.top else None
            return f"({head} eps:{idx})" if idx is not None else f"({head} eps)"
        if node.kind == SUBST:
            return f"({head}!)"
        if node.kind == FOOT:
            return f"({head}*)"
        return "(" + head + " " + " ".join(render(c) for c in node.children) + ")"

    return render(_root(tree))
