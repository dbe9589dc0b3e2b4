"""Flat feature structures with coindexation variables.

Values are either atoms (plain strings such as ``"+"``, ``"-"``, ``"i1"``)
or :class:`Var` instances.  Two occurrences of the same variable denote
coindexation.  Bindings are ordinary dicts mapping variables to values;
no function here ever mutates a bindings dict it was given, so a failed
branch of a search can simply drop the bindings it produced.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

__all__ = [
    "Var",
    "Value",
    "FeatureStructure",
    "EMPTY",
    "CyclicBindingsError",
    "walk",
    "unify",
    "find_clash",
    "ground_clash",
    "resolve",
    "rename",
    "fresh_ids",
    "format_fs",
    "parse_fs",
    "format_blocks",
]


@dataclass(frozen=True, order=True)
class Var:
    id: str

    def __str__(self) -> str:
        return f"#{self.id}"

    def __repr__(self) -> str:
        return f"Var({self.id!r})"


Value = Union[str, Var]
Bindings = Mapping[Var, Value]


class CyclicBindingsError(ValueError):
    """Raised when a bindings environment contains a variable cycle."""


class FeatureStructure(Mapping[str, Value]):
    """Immutable, hashable mapping from attribute names to values."""

    __slots__ = ("_d", "_key")

    def __init__(self, entries: Union[Mapping[str, Value], Iterable[Tuple[str, Value]]] = ()):
        d = dict(entries)
        for attr, value in d.items():
            if not attr:
                raise ValueError("empty attribute name")
            if isinstance(value, str) and not value:
                raise ValueError(f"empty atom for attribute {attr!r}")
        self._d = d
        self._key = None

    @classmethod
    def _trusted(cls, d: dict) -> "FeatureStructure":
        """Wrap ``d`` without validating it (entries already checked)."""
        fs = object.__new__(cls)
        fs._d = d
        fs._key = None
        return fs

    def _sorted(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(self._d.items(), key=lambda kv: kv[0]))
        return self._key

    def __getitem__(self, attr: str) -> Value:
        return self._d[attr]

    def __iter__(self) -> Iterator[str]:
        return iter(k for k, _ in self._sorted())

    def __len__(self) -> int:
        return len(self._d)

    def __hash__(self) -> int:
        return hash(self._sorted())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FeatureStructure):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == dict(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"FeatureStructure({{{format_fs(self)}}})"

    def set(self, attr: str, value: Value) -> "FeatureStructure":
        d = dict(self._d)
        d[attr] = value
        return FeatureStructure(d)

    def without(self, *attrs: str) -> "FeatureStructure":
        return FeatureStructure((k, v) for k, v in self._d.items() if k not in attrs)

    def variables(self) -> set:
        return {v for v in self._d.values() if isinstance(v, Var)}


EMPTY = FeatureStructure()


def walk(value: Value, env: Bindings) -> Value:
    """Follow variable bindings until an atom or an unbound variable."""
    seen = 0
    limit = len(env)
    while isinstance(value, Var) and value in env:
        nxt = env[value]
        if nxt == value:
            raise CyclicBindingsError(f"variable {value} is bound to itself")
        value = nxt
        seen += 1
        if seen > limit:
            raise CyclicBindingsError(f"binding cycle through {value}")
    return value


def unify(a: Mapping[str, Value], b: Mapping[str, Value],
          env: Optional[Bindings] = None):
    """Unify two flat feature structures under ``env``.

    Returns ``(result, new_env)`` on success and ``None`` on a clash.  The
    input ``env`` is never modified; ``new_env`` extends it.
    """
    env = {} if env is None else env
    trusted = isinstance(a, FeatureStructure) and isinstance(b, FeatureStructure)
    if trusted:
        if not b._d:
            return a, env
        if not a._d:
            a, b = b, a
    new = None
    out = dict(a._d) if isinstance(a, FeatureStructure) else dict(a)
    for attr, bv in (b._d if isinstance(b, FeatureStructure) else b).items():
        if attr not in out:
            out[attr] = bv
            continue
        cur = env if new is None else new
        x = walk(out[attr], cur)
        y = walk(bv, cur)
        if x == y:
            out[attr] = x
        elif isinstance(x, Var):
            if new is None:
                new = dict(env)
            new[x] = y
            out[attr] = y
        elif isinstance(y, Var):
            if new is None:
                new = dict(env)
            new[y] = x
            out[attr] = x
        else:
            return None
    fs = FeatureStructure._trusted(out) if trusted else FeatureStructure(out)
    return fs, (env if new is None else new)


def find_clash(a: Mapping[str, Value], b: Mapping[str, Value],
               env: Optional[Bindings] = None) -> Optional[str]:
    """Name of the first attribute on which ``a`` and ``b`` fail to unify."""
    env = {} if env is None else env
    for attr in sorted(set(a) & set(b)):
        step = unify({attr: a[attr]}, {attr: b[attr]}, env)
        if step is None:
            return attr
        env = step[1]
    return None


def ground_clash(a: Mapping[str, Value], b: Mapping[str, Value]) -> bool:
    """True if some shared attribute carries two different atoms.

    No variable reasoning is done, so a ``True`` result is a clash under
    every possible bindings environment.
    """
    for attr, av in a.items():
        bv = b.get(attr)
        if bv is None or isinstance(av, Var) or isinstance(bv, Var):
            continue
        if av != bv:
            return True
    return False


def resolve(fs: Mapping[str, Value], env: Bindings) -> FeatureStructure:
    return FeatureStructure((k, walk(v, env)) for k, v in fs.items())


def fresh_ids(prefix: str = "_") -> Iterator[str]:
    return (f"{prefix}{n}" for n in itertools.count(1))


def rename(fs: Mapping[str, Value], fresh: Iterator[str],
           mapping: Optional[dict] = None) -> FeatureStructure:
    """Replace every variable by a fresh one, consistently.

    Pass the same ``mapping`` dict for every structure of one tree so that
    coindexation inside the tree survives the renaming.
    """
    if not isinstance(fs, FeatureStructure):
        fs = FeatureStructure(fs)
    if not any(isinstance(v, Var) for v in fs._d.values()):
        return fs
    if mapping is None:
        mapping = {}
    out = {}
    for attr, value in fs._d.items():
        if isinstance(value, Var):
            if value not in mapping:
                mapping[value] = Var(next(fresh))
            value = mapping[value]
        out[attr] = value
    return FeatureStructure._trusted(out)


# -- text syntax -----------------------------------------------------------

_SYMBOL = r"[A-Za-z0-9_+\-'.]+"
_ENTRY = re.compile(rf"\s*({_SYMBOL})\s*=\s*(#{_SYMBOL}|{_SYMBOL})\s*$")


def format_value(value: Value) -> str:
    return str(value)


def format_fs(fs: Mapping[str, Value]) -> str:
    return ", ".join(f"{k}={format_value(fs[k])}" for k in sorted(fs))


def parse_fs(text: str) -> FeatureStructure:
    """Parse ``attr=val, attr=#k`` into a feature structure."""
    out = {}
    text = text.strip()
    if not text:
        return EMPTY
    for part in text.split(","):
        m = _ENTRY.match(part)
        if not m:
            raise ValueError(f"bad feature entry {part.strip()!r}")
        attr, raw = m.groups()
        if attr in out:
            raise ValueError(f"duplicate attribute {attr!r}")
        out[attr] = Var(raw[1:]) if raw.startswith("#") else raw
    return FeatureStructure(out)


def format_blocks(top: Mapping[str, Value], bottom: Mapping[str, Value]) -> str:
    """``[t: ...] [b: ...]`` with empty blocks omitted."""
    parts = []
    if top:
        parts.append(f"[t: {format_fs(top)}]")
    if bottom:
        parts.append(f"[b: {format_fs(bottom)}]")
    return " ".join(parts)
