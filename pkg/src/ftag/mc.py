"""Tree-local multi-component composition and string-language sampling.

A tree set is composed as one unit: all of its members attach to nodes of
one and the same elementary tree.  Members of a set share the variables
named by the set's ``link`` lines, which is how a trace and its displaced
constituent come to carry the same index without any feature passing.

A member may adjoin at a substitution site of its host only if the site
lists it in ``@SA(...)``; the member then adjoins at whatever was
substituted there.  This is how the trace of a relative clause reaches the
noun phrase it modifies while the set stays local to the verb's tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from .coindex import first_difference, skeleton
from .composer import (
    ADJUNCTION, SUBSTITUTION, CompositionError, DerivedTree, FinalTree,
    Rejected, adjoin, finalize, find_origin, instantiate, substitute, tree_yield,
)
from .derivation import CompositionRecord, Derivation, derivation_yield
from .features import Var, fresh_ids
from .parser import check_derivation, enumerate_derivations
from .trees import (
    ANCHOR, AUXILIARY, INITIAL, INTERIOR, SUBST, Address, ElementaryTree,
    Grammar, TreeSet, format_address, node_at,
)

__all__ = [
    "MCFailure", "TreeLocalityError", "Placement", "mc_compose", "mc_realize",
    "mc_derivations", "mc_parse", "language_sample", "compare", "EquivalenceReport",
    "link_mapping",
]


class MCFailure(ValueError):
    """A tree-set placement that cannot be carried out."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


class TreeLocalityError(MCFailure):
    """Members of one tree set aimed at different elementary trees."""

    def __init__(self, detail: str = ""):
        super().__init__("tree-locality", detail)


@dataclass(frozen=True)
class Placement:
    """Where one member goes: ``address`` in the target elementary tree.

    ``target`` names an instance id or tree name inside the host; by default
    the host's own root tree.
    """

    address: Address
    member: Union[ElementaryTree, DerivedTree]
    operation: str
    target: Optional[str] = None


def _member_name(m) -> str:
    return m.name if isinstance(m, ElementaryTree) else m.tree_names[m.root_instance]


def _resolve_target(host: DerivedTree, target: Optional[str]) -> str:
    if target is None:
        return host.root_instance
    for inst, name in host.instances:
        if target in (inst, name):
            return inst
    raise MCFailure("unknown target", target)


def link_mapping(treeset: Optional[TreeSet], fresh) -> dict:
    """Shared variable mapping for the ``link`` variables of a set."""
    if treeset is None:
        return {}
    return {Var(k): Var(next(fresh)) for k in treeset.links}


def mc_compose(grammar: Grammar, host: DerivedTree, placements: Sequence[Placement],
               treeset: Optional[TreeSet] = None, fresh=None,
               tag: Optional[str] = None) -> DerivedTree:
    """Attach every member of one tree set to one elementary tree of ``host``.

    Members given as elementary trees are instantiated here with the set's
    links shared; members given as derived trees must already share them.
    """
    if not placements:
        raise MCFailure("empty", "no placements")
    fresh = fresh_ids("m") if fresh is None else fresh
    names = [_member_name(p.member) for p in placements]
    if treeset is not None and sorted(names) != sorted(treeset.members):
        raise MCFailure("coverage", f"{', '.join(names)} do not match the members "
                                    f"of {treeset.name}")
    targets = {_resolve_target(host, p.target) for p in placements}
    if len(targets) != 1:
        labels = sorted(dict(host.instances)[t] for t in targets)
        raise TreeLocalityError(f"members aimed at {', '.join(labels)}")
    inst = targets.pop()
    tree_name = dict(host.instances)[inst]
    elem = grammar.trees[tree_name]
    addrs = [p.address for p in placements]
    if len(set(addrs)) != len(addrs):
        raise MCFailure("collision", "two members at one address")
    shared = link_mapping(treeset, fresh)
    # substitutions first, so a member can then adjoin at what filled a site
    order = sorted(range(len(placements)),
                   key=lambda i: placements[i].operation != SUBSTITUTION)
    set_name = tag or (treeset.name if treeset else None)
    for i in order:
        p = placements[i]
        member = p.member
        if isinstance(member, ElementaryTree):
            member = instantiate(member, fresh, dict(shared), member=set_name)
        try:
            elem_node = node_at(elem, p.address)
        except LookupError:
            raise MCFailure("address", f"{tree_name} has no node "
                                       f"{format_address(p.address)}") from None
        if elem_node.category != member.root.category:
            raise MCFailure("category", f"{member.root.category} at "
                                        f"{tree_name}@{format_address(p.address)}")
        addr = find_origin(host, inst, p.address)
        try:
            if p.operation == SUBSTITUTION:
                if addr is None or node_at(host, addr).kind != SUBST:
                    raise MCFailure("NA", f"{tree_name}@{format_address(p.address)} "
                                          "is not an open substitution site")
                host = substitute(host, addr, member)
            else:
                if addr is None and elem_node.kind == SUBST:
                    if names[i] not in elem_node.selective:
                        raise MCFailure("NA", f"{names[i]} may not adjoin at site "
                                              f"{tree_name}@{format_address(p.address)}")
                    addr = find_origin(host, inst, p.address, site=True)
                if addr is None:
                    raise MCFailure("NA", f"{tree_name}@{format_address(p.address)} "
                                          "is not available")
                host = adjoin(host, addr, member, tree_name=names[i])
        except Rejected as exc:
            raise MCFailure(exc.reason, exc.describe()) from None
        except CompositionError as exc:
            raise MCFailure("NA", str(exc)) from None
    return host


def _group(derivation: Derivation):
    subs, adjs, sets = [], [], {}
    for rec, child in derivation.children:
        if rec.treeset:
            sets.setdefault(rec.treeset, []).append((rec, child))
        elif rec.operation == SUBSTITUTION:
            subs.append((rec, child))
        else:
            adjs.append((rec, child))
    return subs, adjs, sets


def mc_realize(grammar: Grammar, derivation: Derivation, fresh=None,
               mapping: Optional[dict] = None) -> DerivedTree:
    """Derived tree of an MC derivation.

    Records sharing a ``treeset`` tag form one set placement; the tag is the
    set name, optionally followed by ``:k`` to tell two uses of one set apart.
    """
    fresh = fresh_ids("m") if fresh is None else fresh
    if derivation.tree not in grammar.trees:
        raise CompositionError(f"unknown tree {derivation.tree!r}")
    host = instantiate(grammar.trees[derivation.tree], fresh, mapping)
    inst = host.root_instance
    subs, adjs, sets = _group(derivation)

    def at(rec):
        addr = find_origin(host, inst, rec.address)
        if addr is None:
            raise MCFailure("NA", f"{derivation.tree}@{format_address(rec.address)} "
                                  "is not available")
        return addr

    try:
        for rec, child in subs:
            addr = at(rec)
            if node_at(host, addr).kind != SUBST:
                raise MCFailure("NA", f"{derivation.tree}@{format_address(rec.address)} "
                                      "is not a substitution site")
            host = substitute(host, addr, mc_realize(grammar, child, fresh))
        for tag in sorted(sets):
            ts = grammar.treesets.get(tag.split(":")[0])
            if ts is None:
                raise MCFailure("unknown tree set", tag)
            shared = link_mapping(ts, fresh)
            placements = [
                Placement(rec.address,
                          mc_realize(grammar, child, fresh, dict(shared)),
                          rec.operation)
                for rec, child in sets[tag]]
            host = mc_compose(grammar, host, placements, ts, fresh, tag=tag)
        for rec, child in adjs:
            host = adjoin(host, at(rec), mc_realize(grammar, child, fresh),
                          tree_name=child.tree)
    except Rejected as exc:
        raise MCFailure(exc.reason, exc.describe()) from None
    return host


# -- enumeration -------------------------------------------------------------

class _MCSearch:
    """Candidate MC derivations within a word budget and a tree budget."""

    def __init__(self, grammar: Grammar):
        self.g = grammar
        self.memo: Dict[tuple, list] = {}
        singles = grammar.singles
        self.initial: Dict[str, List[str]] = {}
        self.aux: Dict[str, List[str]] = {}
        for name in sorted(singles):
            t = singles[name]
            (self.aux if t.kind == AUXILIARY else self.initial).setdefault(
                t.category, []).append(name)

    def _set_options(self, name: str) -> List[tuple]:
        """Ways to place each tree set on tree ``name``, as record tuples."""
        elem = self.g.trees[name]
        out = []
        for ts in sorted(self.g.treesets.values(), key=lambda s: s.name):
            per_member = []
            for m in ts.members:
                mt = self.g.trees[m]
                spots = []
                for addr, node in elem.nodes():
                    if node.category != mt.category:
                        continue
                    if mt.kind == INITIAL and node.kind == SUBST:
                        spots.append((addr, SUBSTITUTION))
                    elif mt.kind == AUXILIARY and (
                            (node.kind == SUBST and m in node.selective) or
                            (node.kind in (INTERIOR, ANCHOR) and
                             node.effective_constraint != "NA" and
                             (node.effective_constraint != "SA" or m in node.selective))):
                        spots.append((addr, ADJUNCTION))
                per_member.append(spots)
            for combo in _product(per_member):
                addrs = [a for a, _ in combo]
                if len(set(addrs)) == len(addrs):
                    out.append(tuple(
                        (CompositionRecord(name, op, a, m, ts.name), m)
                        for (a, op), m in zip(combo, ts.members)))
        return out

    def derivations(self, name: str, words: int, trees: int) -> list:
        key = (name, words, trees)
        if key in self.memo:
            return self.memo[key]
        elem = self.g.trees[name]
        results = []
        own = len(elem.anchors)
        if trees >= 1 and own <= words:
            options = self._set_options(name)
            for chosen in _subsets(options):
                used = {r.address for opt in chosen for r, _ in opt}
                filled = {r.address for opt in chosen for r, _ in opt
                          if r.operation == SUBSTITUTION}
                slots = [[tuple(opt)] for opt in chosen]
                for addr, node in elem.nodes():
                    if node.kind == SUBST:
                        if addr in filled:
                            continue
                        slots.append([((CompositionRecord(name, SUBSTITUTION, addr, c), c),)
                                      for c in self.initial.get(node.category, ())])
                    elif (node.kind in (INTERIOR, ANCHOR) and addr not in used
                          and node.effective_constraint != "NA"):
                        alts = [] if node.effective_constraint == "OA" else [()]
                        for c in self.aux.get(node.category, ()):
                            if node.effective_constraint == "SA" and c not in node.selective:
                                continue
                            alts.append(((CompositionRecord(name, ADJUNCTION, addr, c), c),))
                        slots.append(alts)
                self._fill(name, slots, 0, words - own, trees - 1, (), results)
        self.memo[key] = results
        return results

    def _fill(self, name, slots, i, words, trees, children, results):
        if i == len(slots):
            results.append((Derivation(name, children), words, trees))
            return
        for alt in slots[i]:
            self._attach(name, slots, i, list(alt), words, trees, children, results)

    def _attach(self, name, slots, i, pending, words, trees, children, results):
        if not pending:
            self._fill(name, slots, i + 1, words, trees, children, results)
            return
        rec, child = pending[0]
        for d, w, t in self.derivations(child, words, trees):
            self._attach(name, slots, i, pending[1:], w, t,
                         children + ((rec, d),), results)


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product(lists[1:]):
            yield (head,) + rest


def _subsets(options):
    """Subsets of set placements whose addresses do not overlap."""
    def go(i, used, acc):
        if i == len(options):
            yield acc
            return
        yield from go(i + 1, used, acc)
        addrs = {r.address for r, _ in options[i]}
        if not addrs & used:
            yield from go(i + 1, used | addrs, acc + (options[i],))
    yield from go(0, frozenset(), ())


def mc_derivations(grammar: Grammar, max_len: int, max_trees: int) -> List[Derivation]:
    """Candidate MC derivations (not yet checked) of at most ``max_len`` words."""
    search = _MCSearch(grammar)
    out = []
    for name in sorted(grammar.singles):
        t = grammar.trees[name]
        if t.kind == INITIAL and t.category == grammar.start:
            out.extend(d for d, _, _ in search.derivations(name, max_len, max_trees))
    return sorted(out)


def language_sample(grammar: Grammar, max_len: int,
                    max_trees: Optional[int] = None) -> Set[Tuple[str, ...]]:
    """Yields of all accepted derivations with at most ``max_len`` words.

    Grammars with tree sets are read as multi-component grammars.  The tree
    budget defaults to ``2 * max_len + 2``.
    """
    if max_trees is None:
        max_trees = 2 * max_len + 2
    if grammar.treesets:
        candidates = mc_derivations(grammar, max_len, max_trees)

        def check(d):
            return finalize(mc_realize(grammar, d))
    else:
        candidates = enumerate_derivations(grammar, max_len, max_trees)

        def check(d):
            return check_derivation(grammar, d)
    out = set()
    for d in candidates:
        # one accepted derivation per string is enough
        if derivation_yield(grammar, d) in out:
            continue
        try:
            final = check(d)
        except (MCFailure, Rejected):
            continue
        out.add(tuple(tree_yield(final)))
    return out


# -- comparison --------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    yields_equal: bool
    difference: Optional[Tuple[Address, str]] = None
    left: str = ""
    right: str = ""

    def __str__(self) -> str:
        lines = [f"equal: {'yes' if self.equal else 'no'}",
                 f"yields equal: {'yes' if self.yields_equal else 'no'}"]
        if self.difference:
            lines.append(f"first difference: {self.difference[1]}")
        lines += [f"feature-based: {self.left}", f"multi-component: {self.right}"]
        return "\n".join(lines)


def compare(ftag_result, mc_result) -> EquivalenceReport:
    """Compare two trees with features erased except trace/filler indices."""
    a = ftag_result if isinstance(ftag_result, FinalTree) else finalize(ftag_result)
    b = mc_result if isinstance(mc_result, FinalTree) else finalize(mc_result)
    sa, sb = skeleton(a), skeleton(b)
    diff = first_difference(sa, sb)
    return EquivalenceReport(diff is None, tree_yield(a) == tree_yield(b), diff,
                             sa.render(), sb.render())


def mc_parse(grammar: Grammar, tokens: Sequence[str],
             max_trees: Optional[int] = None) -> List[Tuple[Derivation, FinalTree]]:
    """Accepted MC derivations of ``tokens``, in canonical order."""
    tokens = tuple(tokens)
    if max_trees is None:
        max_trees = 2 * len(tokens) + 2
    out = []
    for d in mc_derivations(grammar, len(tokens), max_trees):
        if derivation_yield(grammar, d) != tokens:
            continue
        try:
            out.append((d, finalize(mc_realize(grammar, d))))
        except (MCFailure, Rejected):
            continue
    return out
