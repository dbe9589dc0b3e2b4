"""Enumerate every derivation of a token sequence.

The search builds derivation trees top-down.  For each elementary tree it
walks the tree's open positions in address order: every substitution site
must be filled by an initial tree of the right category, and every node
open to adjunction may take one auxiliary tree.  Two things keep the
search finite and small:

* a token budget: a tree is only used if its anchor words are still
  available (multiset semantics), and the total number of elementary trees
  is capped by ``max_trees``;
* a sound static check: a composition is skipped when two feature
  structures that are bound to meet carry different atoms for the same
  attribute.  Bindings only grow, so such a clash can never be repaired.

Every surviving candidate is then composed for real and finalized; only
derivations whose final tree yields exactly the input are returned.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .composer import (
    ADJUNCTION, SUBSTITUTION, FinalTree, Rejected, finalize, tree_yield,
)
from .derivation import CompositionRecord, Derivation, realize
from .features import EMPTY, FeatureStructure, ground_clash, resolve, unify
from .trees import (
    ANCHOR, AUXILIARY, FOOT, INITIAL, INTERIOR, SUBST, Address, Grammar,
    format_address, node_at,
)

__all__ = [
    "tokenize", "select_trees", "parse", "explain", "check_derivation",
    "ParseResult", "Diagnostic", "enumerate_derivations", "parse_bag", "diagnose",
]

_PUNCT = "?.!,"


def tokenize(text: str) -> List[str]:
    """Lowercase, split on whitespace and drop trailing ``?.!,``."""
    out = []
    for raw in text.lower().split():
        word = raw.rstrip(_PUNCT)
        if word:
            out.append(word)
    return out


def select_trees(grammar: Grammar, tokens: Sequence[str]) -> set:
    """Names of trees whose anchors all occur in ``tokens`` (as a multiset)."""
    have = Counter(tokens)
    out = set()
    for name, tree in grammar.trees.items():
        need = Counter(tree.anchors)
        if all(have[w] >= k for w, k in need.items()):
            out.add(name)
    return out


@dataclass(frozen=True)
class Diagnostic:
    """Why one candidate derivation was rejected."""

    derivation: Optional[Derivation]
    reason: str
    location: Optional[Tuple[str, Address]] = None
    attribute: Optional[str] = None
    detail: str = ""

    def __str__(self) -> str:
        s = self.reason
        if self.location:
            s += f" at {self.location[0]}@{format_address(self.location[1])}"
        if self.attribute:
            s += f" on {self.attribute}"
        if self.detail:
            s += f" ({self.detail})"
        return s

    @classmethod
    def from_rejection(cls, d: Derivation, exc: Rejected) -> "Diagnostic":
        return cls(d, exc.reason, exc.location, exc.attribute, exc.detail)


@dataclass
class ParseResult:
    sentence: List[str]
    derivations: List[Tuple[Derivation, FinalTree]] = field(default_factory=list)
    rejected: Optional[List[Diagnostic]] = None
    limit_reached: bool = False
    tree_limit_cut: bool = False
    uncovered: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.derivations)

    @property
    def status(self) -> str:
        if self.limit_reached:
            return "limit"
        return "ok" if self.derivations else "no parse"


# -- search ------------------------------------------------------------------

@dataclass(frozen=True)
class _Interface:
    """What a parent can see of a sub-derivation: atomic values only.

    ``top`` is the top of the derived root, ``bottom`` the bottom of the
    elementary root (what a substitution site's bottom meets) and ``foot``
    the top of the foot.  Values still variable are left out, which only
    ever makes the parent's check more permissive.
    """

    top: FeatureStructure
    bottom: FeatureStructure
    foot: FeatureStructure
    root_adjoined: bool


class _Search:
    """Derivation enumeration for one grammar and one token budget.

    Budgets are count vectors over ``dims``: one dimension per word in
    multiset mode, or a single "number of words" dimension in length mode.
    Each finished sub-derivation is checked locally: the elementary tree's
    own nodes are unified against the interfaces of its children, the way
    composition and finalization would unify them.  Because interfaces
    keep only atoms, this check never rejects an acceptable derivation.
    """

    def __init__(self, grammar: Grammar, allowed, dims: Optional[List[str]],
                 relaxed: bool = False):
        self.grammar = grammar
        self.relaxed = relaxed
        self.memo: Dict[tuple, list] = {}
        self.tree_limit_cut = False
        index = {w: i for i, w in enumerate(dims)} if dims is not None else None
        width = len(dims) if dims is not None else 1
        self.anchors = {}
        for name in allowed:
            vec = [0] * width
            for w in grammar.trees[name].anchors:
                vec[index[w] if index is not None else 0] += 1
            self.anchors[name] = tuple(vec)
        self.initial_by_cat: Dict[str, List[str]] = {}
        self.aux_by_cat: Dict[str, List[str]] = {}
        for name in sorted(allowed):
            t = grammar.trees[name]
            bucket = self.aux_by_cat if t.kind == AUXILIARY else self.initial_by_cat
            bucket.setdefault(t.category, []).append(name)
        self.slots = {name: self._slots(name) for name in allowed}
        self.foot_top = {}
        for name in allowed:
            t = grammar.trees[name]
            self.foot_top[name] = node_at(t, t.foot_address).top if t.is_auxiliary else EMPTY

    def _slots(self, name):
        out = []
        for addr, node in self.grammar.trees[name].nodes():
            if node.kind == SUBST:
                out.append((addr, node, SUBSTITUTION))
            elif node.kind in (INTERIOR, ANCHOR) and node.effective_constraint != "NA":
                out.append((addr, node, ADJUNCTION))
        return out

    def derivations(self, name: str, budget: tuple, max_trees: int) -> list:
        """``[(Derivation, used_vector, n_trees, _Interface)]`` within the budgets."""
        key = (name, budget, max_trees)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        results = []
        anch = self.anchors[name]
        if max_trees < 1:
            if all(a <= b for a, b in zip(anch, budget)):
                self.tree_limit_cut = True
        elif all(a <= b for a, b in zip(anch, budget)):
            left = tuple(b - a for a, b in zip(anch, budget))
            slots = self.slots[name]
            subs_after = [0] * (len(slots) + 1)
            for i in range(len(slots) - 1, -1, -1):
                subs_after[i] = subs_after[i + 1] + (slots[i][2] == SUBSTITUTION)
            self._fill(name, slots, 0, left, 1, max_trees, (), (), subs_after, budget,
                       results)
        self.memo[key] = results
        return results

    def _fill(self, name, slots, i, left, used_trees, max_trees, children, faces,
              subs_after, budget, results):
        if i == len(slots):
            face = self._check(name, children, faces)
            if face is not None:
                used = tuple(b - l for b, l in zip(budget, left))
                results.append((Derivation(name, children), used, used_trees, face))
            return
        addr, node, op = slots[i]
        room = max_trees - used_trees - subs_after[i + 1]
        if op == SUBSTITUTION:
            arg_trees = self.initial_by_cat.get(node.category, ())
        else:
            if self.relaxed or (node.effective_constraint != "OA"
                                and not ground_clash(node.top, node.bottom)):
                self._fill(name, slots, i + 1, left, used_trees, max_trees, children,
                           faces, subs_after, budget, results)
            arg_trees = self.aux_by_cat.get(node.category, ())
        for arg in arg_trees:
            if node.effective_constraint == "SA" and arg not in node.selective:
                continue
            root = self.grammar.trees[arg].root
            if op == SUBSTITUTION:
                lower = root.bottom
            else:
                lower = self.foot_top[arg]
            if ground_clash(node.top, root.top) or ground_clash(node.bottom, lower):
                continue
            rec = CompositionRecord(name, op, addr, arg)
            for d, u, k, face in self.derivations(arg, left, room):
                if ground_clash(node.top, face.top):
                    continue
                self._fill(name, slots, i + 1, tuple(a - b for a, b in zip(left, u)),
                           used_trees + k, max_trees, children + ((rec, d),),
                           faces + (face,), subs_after, budget, results)

    def _check(self, name, children, faces) -> Optional[_Interface]:
        """Unify tree ``name``'s nodes with its children; ``None`` on a clash."""
        tree = self.grammar.trees[name]
        at = {rec.address: (rec.operation, face) for (rec, _), face in zip(children, faces)}
        env: dict = {}
        root_top, root_bottom = tree.root.top, tree.root.bottom
        for addr, node in tree.nodes():
            if node.kind == FOOT:
                continue
            op, face = at.get(addr, (None, None))
            if op is None and node.kind == SUBST:
                continue
            top, bottom = node.top, node.bottom
            if op is not None:
                r = unify(top, face.top, env)
                if r is None:
                    return None
                top, env = r
                r = unify(bottom, face.bottom if op == SUBSTITUTION else face.foot, env)
                if r is None:
                    return None
                bottom, env = r
            # top and bottom stay apart only where something adjoined
            split = op == ADJUNCTION or (op == SUBSTITUTION and face.root_adjoined)
            if not split and not self.relaxed:
                r = unify(top, bottom, env)
                if r is None:
                    return None
                env = r[1]
            if not addr:
                root_top, root_bottom = top, bottom
        return _Interface(_atoms(resolve(root_top, env)),
                          _atoms(resolve(root_bottom, env)),
                          _atoms(resolve(self.foot_top[name], env)),
                          () in at)


def _atoms(*structures) -> FeatureStructure:
    """Union of the atomic (non-variable) values of ``structures``."""
    out = {}
    for fs in structures:
        out.update((k, v) for k, v in fs.items() if isinstance(v, str))
    return FeatureStructure(out)


def _start_trees(grammar: Grammar, allowed) -> List[str]:
    return sorted(n for n in allowed
                  if grammar.trees[n].kind == INITIAL
                  and grammar.trees[n].category == grammar.start)


def enumerate_derivations(grammar: Grammar, max_len: int, max_trees: int,
                          relaxed: bool = False) -> List[Derivation]:
    """All candidate derivations with at most ``max_len`` anchors.

    Candidates are not yet composed; :func:`check_derivation` decides
    which of them are accepted.
    """
    allowed = list(grammar.singles) if grammar.treesets else list(grammar.trees)
    search = _Search(grammar, allowed, None, relaxed)
    out = []
    for name in _start_trees(grammar, allowed):
        out.extend(d for d, _, _, _ in search.derivations(name, (max_len,), max_trees))
    return sorted(out)


def check_derivation(grammar: Grammar, derivation: Derivation) -> FinalTree:
    """Compose and finalize; raises :class:`Rejected` on failure."""
    return finalize(realize(grammar, derivation))


@lru_cache(maxsize=4096)
def _candidates(grammar: Grammar, bag: Tuple[Tuple[str, int], ...], max_trees: int,
                relaxed: bool):
    """Composed candidates for one token multiset (shared by its permutations)."""
    tokens = [w for w, k in bag for _ in range(k)]
    allowed = select_trees(grammar, tokens)
    if grammar.treesets:
        allowed &= set(grammar.singles)
    dims = [w for w, _ in bag]
    search = _Search(grammar, allowed, dims, relaxed)
    full = tuple(k for _, k in bag)
    found = []
    for name in _start_trees(grammar, allowed):
        for d, used, _, _ in search.derivations(name, full, max_trees):
            if used == full:
                found.append(d)
    out = []
    for d in sorted(found):
        try:
            final = check_derivation(grammar, d)
        except Rejected as exc:
            out.append((d, None, exc))
        else:
            out.append((d, final, None))
    return tuple(out), search.tree_limit_cut


def _bag(tokens: Sequence[str]):
    return tuple(sorted(Counter(tokens).items()))


def parse_bag(grammar: Grammar, tokens: Sequence[str],
              max_trees: Optional[int] = None) -> Dict[Tuple[str, ...], List[Derivation]]:
    """Accepted derivations for every ordering of ``tokens`` at once.

    The result maps each yield to the derivations :func:`parse` returns for
    it; orderings missing from the map have no derivation.
    """
    if max_trees is None:
        max_trees = 2 * len(tokens) + 2
    out: Dict[Tuple[str, ...], List[Derivation]] = {}
    candidates, _ = _candidates(grammar, _bag(tokens), max_trees, False)
    for d, final, _ in candidates:
        if final is not None:
            out.setdefault(tuple(tree_yield(final)), []).append(d)
    return out


def parse(grammar: Grammar, tokens: Sequence[str], max_trees: Optional[int] = None,
          max_results: Optional[int] = None, explain: bool = False) -> ParseResult:
    """Every accepted derivation of ``tokens``, in canonical order."""
    tokens = list(tokens)
    if max_trees is None:
        max_trees = 2 * len(tokens) + 2
    result = ParseResult(tokens, rejected=[] if explain else None)
    covered = {w for n in select_trees(grammar, tokens) for w in grammar.trees[n].anchors}
    result.uncovered = sorted(set(tokens) - covered)
    if result.uncovered:
        if explain:
            result.rejected.append(Diagnostic(
                None, "no candidate trees", detail="for " + ", ".join(result.uncovered)))
        return result
    candidates, cut = _candidates(grammar, _bag(tokens), max_trees, False)
    result.tree_limit_cut = cut
    for d, final, exc in candidates:
        if final is not None and tree_yield(final) == tokens:
            if max_results is not None and len(result.derivations) >= max_results:
                result.limit_reached = True
                break
            result.derivations.append((d, final))
        elif explain:
            if final is not None:
                result.rejected.append(Diagnostic(
                    d, "word order", detail=" ".join(tree_yield(final))))
            else:
                result.rejected.append(Diagnostic.from_rejection(d, exc))
    if explain:
        seen = {diag.derivation for diag in result.rejected}
        relaxed, _ = _candidates(grammar, _bag(tokens), max_trees, True)
        for d, final, exc in relaxed:
            if exc is not None and d not in seen:
                result.rejected.append(Diagnostic.from_rejection(d, exc))
    return result


def explain(grammar: Grammar, tokens: Sequence[str],
            max_trees: Optional[int] = None) -> List[Diagnostic]:
    """Rejection reasons for every complete candidate that failed."""
    return parse(grammar, tokens, max_trees=max_trees, explain=True).rejected


def diagnose(grammar: Grammar, derivation: Derivation) -> Optional[Diagnostic]:
    """``None`` if ``derivation`` is accepted, else why it is not."""
    try:
        check_derivation(grammar, derivation)
    except Rejected as exc:
        return Diagnostic.from_rejection(derivation, exc)
    return None
