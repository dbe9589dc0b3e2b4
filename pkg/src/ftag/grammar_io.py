"""Reading and writing the line-oriented grammar format.

A grammar document looks like::

    ; comment
    grammar figure1 start=S
    tree alpha_walked initial {
      (S (NP_0! [t: displ_const=-]) (VP (V "walked")))
    }
    treeset ext_rc {
      member beta_extraposed
      member beta_np_eps
      link #1
    }

Node syntax inside a tree body::

    (CAT[_tag][!|*] [@NA|@OA|@SA(n1,n2)] [@smallest] [t: ...] [b: ...] BODY)

where BODY is zero or more child nodes, a quoted anchor word, or an empty
category ``<eps>`` / ``<eps:#k>``.  Comments run from ``;`` to end of line.
"""
from __future__ import annotations

import re
from importlib import resources
from typing import List, Optional

from .features import EMPTY, Var, format_blocks, parse_fs
from .trees import (
    ANCHOR, AUXILIARY, EPSILON, FOOT, INITIAL, INTERIOR, SUBST,
    ElementaryTree, Grammar, NodeLabel, TreeNode, TreeSet, Violation,
    validate_grammar,
)

__all__ = [
    "GrammarSyntaxError", "GrammarValidationError",
    "load_grammar", "load_grammar_file", "bundled_grammar", "bundled_path",
    "dump_grammar", "format_tree", "format_node", "merge_grammars",
]

_LABEL = re.compile(r"[A-Za-z0-9_'.+\-]+")
_NAME = re.compile(r"[A-Za-z0-9_'.+\-]+")


class GrammarSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GrammarValidationError(ValueError):
    def __init__(self, violations: List[Violation]):
        lines = "\n".join(str(v) for v in violations)
        super().__init__(f"{len(violations)} validation error(s):\n{lines}")
        self.violations = violations


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: Optional[int] = None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg: str, pos: Optional[int] = None):
        return GrammarSyntaxError(msg, *self.where(pos))

    def skip(self, newlines: bool = True):
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == ";":
                end = self.text.find("\n", self.pos)
                self.pos = len(self.text) if end < 0 else end
            elif c in " \t\r" or (newlines and c == "\n"):
                self.pos += 1
            else:
                break

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos:self.pos + 10] or "end of input"
            raise self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def match(self, pattern: re.Pattern, what: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            found = self.text[self.pos:self.pos + 10] or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        self.pos = m.end()
        return m.group(0)

    def line_rest(self) -> str:
        """Remaining text on the current line, comments stripped."""
        end = self.text.find("\n", self.pos)
        end = len(self.text) if end < 0 else end
        chunk = self.text[self.pos:end]
        self.pos = end
        return chunk.split(";", 1)[0].strip()


def _parse_node(sc: _Scanner) -> TreeNode:
    sc.expect("(")
    start = sc.pos
    label_text = sc.match(_LABEL, "node label")
    kind = INTERIOR
    if sc.text.startswith("!", sc.pos):
        kind, sc.pos = SUBST, sc.pos + 1
    elif sc.text.startswith("*", sc.pos):
        kind, sc.pos = FOOT, sc.pos + 1
    try:
        label = NodeLabel.parse(label_text)
    except ValueError as exc:
        raise sc.error(str(exc), start) from None

    constraint = None
    selective = ()
    smallest = False
    top = bottom = EMPTY
    while sc.peek() == "@":
        at = sc.pos
        sc.pos += 1
        word = sc.match(re.compile(r"[A-Za-z]+"), "annotation")
        if word in ("NA", "OA", "SA"):
            if constraint is not None:
                raise sc.error("more than one adjoining constraint", at)
            constraint = word
            if word == "SA":
                sc.expect("(")
                close = sc.text.find(")", sc.pos)
                if close < 0:
                    raise sc.error("unterminated @SA(...)", at)
                names = [n.strip() for n in sc.text[sc.pos:close].split(",")]
                if not all(names):
                    raise sc.error("empty name in @SA(...)", at)
                selective = tuple(names)
                sc.pos = close + 1
        elif word == "smallest":
            smallest = True
        else:
            raise sc.error(f"unknown annotation @{word}", at)
    while sc.peek() == "[":
        at = sc.pos
        close = sc.text.find("]", at)
        if close < 0:
            raise sc.error("unterminated feature block", at)
        body = sc.text[at + 1:close]
        which, colon, rest = body.partition(":")
        which = which.strip()
        if not colon or which not in ("t", "b"):
            raise sc.error("feature block must start with 't:' or 'b:'", at)
        try:
            fs = parse_fs(rest)
        except ValueError as exc:
            raise sc.error(str(exc), at) from None
        if which == "t":
            top = fs
        else:
            bottom = fs
        sc.pos = close + 1

    word = None
    children = []
    nxt = sc.peek()
    if nxt == '"':
        at = sc.pos
        close = sc.text.find('"', at + 1)
        if close < 0:
            raise sc.error("unterminated anchor string", at)
        word = sc.text[at + 1:close]
        if not word or kind != INTERIOR:
            raise sc.error("anchor must be a non-empty word on a plain node", at)
        kind = ANCHOR
        sc.pos = close + 1
    elif nxt == "<":
        at = sc.pos
        close = sc.text.find(">", at)
        if close < 0:
            raise sc.error("unterminated empty category", at)
        body = sc.text[at + 1:close].strip()
        if kind != INTERIOR or not (body == "eps" or body.startswith("eps:#")):
            raise sc.error(f"bad empty category <{body}>", at)
        kind = EPSILON
        if body != "eps":
            top = top.set("index", Var(body[len("eps:#"):]))
        sc.pos = close + 1
    else:
        while sc.peek() == "(":
            children.append(_parse_node(sc))
    sc.expect(")")
    return TreeNode(label=label, kind=kind, top=top, bottom=bottom,
                    constraint=constraint, selective=selective,
                    children=tuple(children), word=word, smallest=smallest)


def load_grammar(text: str, validate: bool = True) -> Grammar:
    """Parse (and by default validate) a grammar document."""
    sc = _Scanner(text)
    grammar: Optional[Grammar] = None
    while not sc.at_end():
        at = sc.pos
        keyword = sc.match(_NAME, "keyword")
        if keyword == "grammar":
            if grammar is not None:
                raise sc.error("duplicate grammar header", at)
            name = sc.match(_NAME, "grammar name")
            rest = sc.line_rest()
            m = re.fullmatch(r"start\s*=\s*(\S+)", rest)
            if not m:
                raise sc.error("expected start=<category>", at)
            grammar = Grammar(name=name, start=m.group(1))
        elif keyword == "tree":
            if grammar is None:
                raise sc.error("tree before grammar header", at)
            name = sc.match(_NAME, "tree name")
            kind = sc.match(_NAME, "tree kind")
            if kind not in (INITIAL, AUXILIARY):
                raise sc.error(f"tree kind must be initial or auxiliary, not {kind!r}", at)
            if name in grammar.trees:
                raise sc.error(f"duplicate tree name {name!r}", at)
            sc.expect("{")
            root = _parse_node(sc)
            sc.expect("}")
            grammar.trees[name] = ElementaryTree(name, kind, root)
        elif keyword == "treeset":
            if grammar is None:
                raise sc.error("treeset before grammar header", at)
            name = sc.match(_NAME, "tree set name")
            sc.expect("{")
            members, links = [], []
            while sc.peek() != "}":
                if sc.at_end():
                    raise sc.error("unterminated treeset")
                item_at = sc.pos
                item = sc.match(_NAME, "member or link")
                if item == "member":
                    members.append(sc.match(_NAME, "tree name"))
                elif item == "link":
                    sc.expect("#")
                    links.append(sc.match(_NAME, "variable"))
                else:
                    raise sc.error(f"unexpected {item!r} in treeset", item_at)
            sc.expect("}")
            if name in grammar.treesets:
                raise sc.error(f"duplicate tree set name {name!r}", at)
            grammar.treesets[name] = TreeSet(name, tuple(members), tuple(links))
        else:
            raise sc.error(f"unknown keyword {keyword!r}", at)
    if grammar is None:
        raise GrammarSyntaxError("no grammar header", 1, 1)
    if not grammar.trees:
        raise GrammarSyntaxError("no trees", *sc.where())
    if validate:
        violations = validate_grammar(grammar)
        if violations:
            raise GrammarValidationError(violations)
    return grammar


def load_grammar_file(path, validate: bool = True) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return load_grammar(fh.read(), validate=validate)


def bundled_path(filename: str):
    return resources.files("ftag") / "grammars" / filename


def bundled_grammar(filename: str) -> Grammar:
    """Load one of the grammars shipped in ``ftag/grammars``."""
    if "." not in filename:
        filename += ".ftag"
    return load_grammar(bundled_path(filename).read_text(encoding="utf-8"))


def merge_grammars(name: str, *grammars: Grammar) -> Grammar:
    """Union of several grammars with one start category.

    A tree name may appear in more than one input only with identical trees.
    """
    starts = {g.start for g in grammars}
    if len(starts) != 1:
        raise ValueError(f"start categories differ: {sorted(starts)}")
    out = Grammar(name=name, start=starts.pop())
    for g in grammars:
        for tname, tree in g.trees.items():
            if tname in out.trees and out.trees[tname] != tree:
                raise ValueError(f"tree {tname!r} differs between grammars")
            out.trees[tname] = tree
        for sname, ts in g.treesets.items():
            if sname in out.treesets and out.treesets[sname] != ts:
                raise ValueError(f"tree set {sname!r} differs between grammars")
            out.treesets[sname] = ts
    return out


# -- writing ---------------------------------------------------------------

def _header(node: TreeNode) -> str:
    parts = [str(node.label) + {SUBST: "!", FOOT: "*"}.get(node.kind, "")]
    if node.constraint == "SA":
        parts.append(f"@SA({','.join(node.selective)})")
    elif node.constraint:
        parts.append(f"@{node.constraint}")
    if node.smallest:
        parts.append("@smallest")
    top = node.top
    eps = None
    if node.kind == EPSILON:
        idx = top.get("index")
        if isinstance(idx, Var):
            eps = f"<eps:#{idx.id}>"
            top = top.without("index")
        else:
            eps = "<eps>"
    blocks = format_blocks(top, node.bottom)
    if blocks:
        parts.append(blocks)
    if node.kind == ANCHOR:
        parts.append(f'"{node.word}"')
    elif eps:
        parts.append(eps)
    return " ".join(parts)


def format_node(node: TreeNode, indent: int = 0) -> str:
    pad = " " * indent
    if not node.children:
        return f"{pad}({_header(node)})"
    inner = "\n".join(format_node(c, indent + 2) for c in node.children)
    return f"{pad}({_header(node)}\n{inner})"


def format_tree(tree: ElementaryTree) -> str:
    return f"tree {tree.name} {tree.kind} {{\n{format_node(tree.root, 2)}\n}}"


def dump_grammar(grammar: Grammar) -> str:
    chunks = [f"grammar {grammar.name} start={grammar.start}"]
    chunks.extend(format_tree(t) for t in grammar.trees.values())
    for ts in grammar.treesets.values():
        body = [f"  member {m}" for m in ts.members]
        body += [f"  link #{k}" for k in ts.links]
        chunks.append(f"treeset {ts.name} {{\n" + "\n".join(body) + "\n}")
    return "\n\n".join(chunks) + "\n"
