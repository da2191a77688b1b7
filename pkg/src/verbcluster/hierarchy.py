"""
Finite partial order of grammar types.

Types are plain strings.  Every type except ``top`` has one or more
declared parents; the order is the reflexive-transitive closure of the
parent relation.  Unification of two atomic types is their greatest
lower bound (glb), which must be unique whenever any common lower bound
exists.  That condition (bounded completeness) is checked every time a
type is declared, so a hierarchy that exists is always well formed.

Quoted string atoms such as ``'"zag"'`` are accepted as types without
declaration, provided the hierarchy declares ``string``.  Each atom is a
maximally specific subtype of ``string`` and is compatible only with
itself and its supertypes.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

TOP = "top"
STRING = "string"

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class HierarchyError(ValueError):
    pass


def is_atom(t: str) -> bool:
    return len(t) >= 2 and t[0] == '"' and t[-1] == '"'


class TypeHierarchy:
    """An immutable type hierarchy rooted in ``top``.

    >>> h = TypeHierarchy().declare("case", ["top"]).declare("acc", ["case"])
    >>> h.glb("case", "acc")
    'acc'
    >>> h.subtype_of("case", "acc")
    False
    """

    __slots__ = ("_parents", "_up", "_glb")

    def __init__(self):
        self._parents: dict[str, tuple[str, ...]] = {TOP: ()}
        self._up: dict[str, frozenset[str]] = {TOP: frozenset([TOP])}
        self._glb: dict[tuple[str, str], str | None] = {(TOP, TOP): TOP}

    @classmethod
    def from_declarations(cls, decls: Iterable[tuple[str, Iterable[str]]]) -> "TypeHierarchy":
        h = cls()
        for name, parents in decls:
            h = h.declare(name, parents)
        return h

    @property
    def types(self) -> tuple[str, ...]:
        return tuple(self._parents)

    def parents(self, name: str) -> tuple[str, ...]:
        return self._parents[name]

    def __contains__(self, t: str) -> bool:
        if is_atom(t):
            return STRING in self._parents
        return t in self._parents

    def __len__(self) -> int:
        return len(self._parents)

    def declare(self, name: str, parents: Iterable[str]) -> "TypeHierarchy":
        """Return a new hierarchy extended with ``name`` below ``parents``.

        Raises HierarchyError for a duplicate or malformed name, an
        unknown parent, or when the extension would give some pair of
        types two or more maximal common subtypes.
        """
        parents = tuple(dict.fromkeys(parents))
        if not _NAME_RE.match(name):
            raise HierarchyError(f"bad type name {name!r}: use lowercase letters, digits, _")
        if name in self._parents:
            raise HierarchyError(f"duplicate type {name!r}")
        if not parents:
            raise HierarchyError(f"type {name!r} needs at least one parent")
        for p in parents:
            if p not in self._parents:
                raise HierarchyError(f"unknown parent {p!r} for type {name!r}")

        new = TypeHierarchy.__new__(TypeHierarchy)
        new._parents = dict(self._parents)
        new._parents[name] = parents
        new._up = dict(self._up)
        new._up[name] = frozenset([name]).union(*(self._up[p] for p in parents))
        new._glb = dict(self._glb)

        # only pairs of supertypes of the new type can gain a lower bound
        affected = sorted(new._up[name])
        for i, a in enumerate(affected):
            for b in affected[i:]:
                new._set_glb(a, b)
        for b in new._parents:
            new._set_glb(name, b)
        return new

    def _set_glb(self, a: str, b: str) -> None:
        lower = [t for t, up in self._up.items() if a in up and b in up]
        maximal = [
            t for t in lower
            if not any(o != t and o in self._up[t] for o in lower)
        ]
        if len(maximal) > 1:
            raise HierarchyError(
                f"types {a!r} and {b!r} have no unique greatest lower bound "
                f"(candidates: {', '.join(sorted(maximal))})"
            )
        g = maximal[0] if maximal else None
        self._glb[a, b] = g
        self._glb[b, a] = g

    def _check(self, t: str) -> None:
        if t not in self:
            raise HierarchyError(f"unknown type {t!r}")

    def glb(self, a: str, b: str) -> str | None:
        """Greatest lower bound of two types, or None if they are incompatible."""
        if a == b:
            self._check(a)
            return a
        if is_atom(a) or is_atom(b):
            if is_atom(a) and is_atom(b):
                self._check(a)
                return None
            atom, other = (a, b) if is_atom(a) else (b, a)
            self._check(atom)
            return atom if self.subtype_of(STRING, other) else None
        try:
            return self._glb[a, b]
        except KeyError:
            self._check(a)
            self._check(b)
            raise

    def subtype_of(self, a: str, b: str) -> bool:
        """True iff ``a`` is ``b`` or lies below it."""
        if a == b:
            self._check(a)
            return True
        if is_atom(b):
            self._check(a)
            self._check(b)
            return False
        if is_atom(a):
            self._check(a)
            a = STRING
            if a == b:
                return True
        self._check(a)
        self._check(b)
        return b in self._up[a]

    def declarations(self) -> list[tuple[str, tuple[str, ...]]]:
        return [(t, ps) for t, ps in self._parents.items() if t != TOP]

    def __eq__(self, other):
        return isinstance(other, TypeHierarchy) and self._parents == other._parents

    def __hash__(self):
        return hash(frozenset(self._parents.items()))

    def __repr__(self):
        return f"<TypeHierarchy with {len(self._parents)} types>"


# Value types of the Dutch/German fragment.  Only CASE has internal
# structure; everything else is an unrelated atom under top.
_BUILTIN: list[tuple[str, tuple[str, ...]]] = [
    ("list", (TOP,)),
    ("elist", ("list",)),
    ("nelist", ("list",)),
    ("case", (TOP,)),
    ("nom", ("case",)),
    ("acc", ("case",)),
    ("dat", ("case",)),
    ("gen", ("case",)),
    ("lex_bool", (TOP,)),
    ("lex_plus", ("lex_bool",)),
    ("lex_minus", ("lex_bool",)),
    ("sign", (TOP,)),
    (STRING, (TOP,)),
    ("v", (TOP,)),
    ("n", (TOP,)),
    ("det", (TOP,)),
    ("comp", (TOP,)),
    ("fin", (TOP,)),
    ("base", (TOP,)),
    ("event", (TOP,)),
    ("nominal_det", (TOP,)),
    ("feed", (TOP,)),
    ("zien", (TOP,)),
    ("helpen", (TOP,)),
    ("laten", (TOP,)),
    ("hippo", (TOP,)),
    ("speaker", (TOP,)),
    ("female", (TOP,)),
    ("henk", (TOP,)),
    ("marie", (TOP,)),
]

_builtin_cache: TypeHierarchy | None = None


def builtin_hierarchy() -> TypeHierarchy:
    global _builtin_cache
    if _builtin_cache is None:
        _builtin_cache = TypeHierarchy.from_declarations(_BUILTIN)
    return _builtin_cache


def hierarchy_from_mapping(parents: Mapping[str, Iterable[str]]) -> TypeHierarchy:
    """Build a hierarchy from a name -> parents mapping in any order."""
    pending = {k: tuple(v) for k, v in parents.items() if k != TOP}
    h = TypeHierarchy()
    while pending:
        ready = [k for k, ps in pending.items() if all(p in h for p in ps)]
        if not ready:
            raise HierarchyError(
                "cyclic or dangling parent declarations: " + ", ".join(sorted(pending))
            )
        for k in ready:
            h = h.declare(k, pending.pop(k))
    return h
