"""
Text form of feature structures.

Grammar of a value::

    value   := tag '=' body | tag | body
    body    := '[' [type] (LABEL value)* ']'
             | '<' [value (',' value)* ['|' value]] '>'
             | type | '"word"'

Labels are all-caps (``PHON``, ``ARG1``); types are lowercase.  A tag
such as ``#5`` or ``#L`` names one node: every occurrence of the tag in
a literal denotes the same node, and binding a tag twice unifies the two
bodies.  ``[]`` is an unconstrained node of type ``top``.

Printing is canonical: labels come in a fixed order, shared nodes are
tagged ``#1``, ``#2``, ... in order of first appearance, and list cells
use the ``< ... >`` sugar whenever that loses no sharing.
"""

from __future__ import annotations

import re

from .featstruct import (
    FIRST,
    REST,
    FeatureStructure,
    Node,
    StructureError,
    UnificationFailure,
    reachable,
    solve,
)
from .hierarchy import TOP, TypeHierarchy

LABEL_ORDER = ("PHON", "HEAD", "SUBJ", "COMPS", "GOV", "CONTENT", "LEX")
_RANK = {label: i for i, label in enumerate(LABEL_ORDER)}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#(?![A-Za-z0-9_])[^\n]*)
  | (?P<tag>\#[A-Za-z0-9_]+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<label>[A-Z][A-Z0-9_]*(?![a-z]))
  | (?P<symbol>[A-Za-z_][A-Za-z0-9_\-]*)
  | (?P<punct>[\[\]<>|,=;])
    """,
    re.VERBOSE,
)


class AvmSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        self.pos = pos
        super().__init__(f"line {line}, column {col}: {message}")


def label_key(label: str):
    return (_RANK.get(label, len(LABEL_ORDER)), label)


class Reader:
    """Recursive-descent reader over a text buffer.

    Also used by the lexicon loader, which reads its own statements and
    hands AVM values to :meth:`value`.
    """

    def __init__(self, text: str, hierarchy: TypeHierarchy, pos: int = 0):
        self.text = text
        self.hierarchy = hierarchy
        self.pos = pos
        self._peeked = None
        self.tags: dict[str, Node] = {}
        self.equations: list[tuple[Node, Node]] = []

    # -- tokens --------------------------------------------------------------

    def _scan(self):
        text = self.text
        pos = self.pos
        while True:
            if pos >= len(text):
                return ("eof", "", pos, pos)
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise AvmSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
            if m.lastgroup == "ws":
                pos = m.end()
                continue
            return (m.lastgroup, m.group(), pos, m.end())

    def peek(self):
        if self._peeked is None:
            self._peeked = self._scan()
        return self._peeked

    def next(self):
        tok = self.peek()
        self._peeked = None
        self.pos = tok[3]
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return AvmSyntaxError(message, self.text, tok[2])

    def expect(self, punct: str):
        tok = self.next()
        if tok[0] != "punct" or tok[1] != punct:
            what = tok[1] or "end of input"
            raise AvmSyntaxError(f"expected {punct!r}, found {what!r}", self.text, tok[2])
        return tok

    def at_punct(self, punct: str) -> bool:
        kind, text, _, _ = self.peek()
        return kind == "punct" and text == punct

    # -- values --------------------------------------------------------------

    def _typed(self, name: str, tok) -> Node:
        if name not in self.hierarchy:
            raise self.error(f"unknown type {name!r}", tok)
        return Node(name)

    def value(self) -> Node:
        tok = self.peek()
        if tok[0] == "tag":
            self.next()
            name = tok[1][1:]
            node = self.tags.get(name)
            if node is None:
                node = self.tags[name] = Node(TOP)
            if self.at_punct("="):
                self.next()
                body = self.body()
                self.equations.append((node, body))
            return node
        return self.body()

    def body(self) -> Node:
        tok = self.next()
        kind, text = tok[0], tok[1]
        if kind == "punct" and text == "[":
            return self._matrix()
        if kind == "punct" and text == "<":
            return self._list()
        if kind == "symbol":
            return self._typed(text, tok)
        if kind == "string":
            return self._typed(text, tok)
        raise AvmSyntaxError(f"expected a value, found {text or 'end of input'!r}", self.text, tok[2])

    def _matrix(self) -> Node:
        node = Node(TOP)
        tok = self.peek()
        if tok[0] in ("symbol", "string"):
            self.next()
            node.type = self._typed(tok[1], tok).type
        while True:
            tok = self.peek()
            if tok[0] == "punct" and tok[1] == "]":
                self.next()
                return node
            if tok[0] != "label":
                raise self.error(f"expected a feature label or ']', found {tok[1] or 'end of input'!r}")
            self.next()
            child = self.value()
            if tok[1] in node.arcs:
                self.equations.append((node.arcs[tok[1]], child))
            else:
                node.arcs[tok[1]] = child

    def _list(self) -> Node:
        elems = []
        tail = None
        if not self.at_punct(">"):
            elems.append(self.value())
            while self.at_punct(","):
                self.next()
                elems.append(self.value())
            if self.at_punct("|"):
                self.next()
                tail = self.value()
        self.expect(">")
        node = tail if tail is not None else Node("elist")
        for e in reversed(elems):
            node = Node("nelist", {FIRST: e, REST: node})
        return node

    def finish(self, root: Node) -> FeatureStructure:
        """Resolve repeated tag bindings and return a clean structure."""
        holder = Node(TOP, {"ROOT": root})
        eqs = []
        for i, (a, b) in enumerate(self.equations):
            holder.arcs[f"L{i}"] = a
            holder.arcs[f"R{i}"] = b
            eqs.append(((f"L{i}",), (f"R{i}",)))
        try:
            out = solve(holder, eqs, self.hierarchy)
        except UnificationFailure as e:
            raise StructureError(f"inconsistent tag bindings: {e}") from None
        return FeatureStructure(out.arcs["ROOT"], self.hierarchy)


def build(literal: str, hierarchy: TypeHierarchy) -> FeatureStructure:
    """Read one AVM literal.

    >>> from verbcluster.hierarchy import builtin_hierarchy
    >>> str(build("[CASE #1=case OTHER #1]", builtin_hierarchy()))
    '[CASE #1=case OTHER #1]'
    """
    r = Reader(literal, hierarchy)
    root = r.value()
    tok = r.peek()
    if tok[0] != "eof":
        raise r.error(f"trailing input {tok[1]!r}")
    return r.finish(root)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _indegree(root: Node) -> dict[int, int]:
    counts: dict[int, int] = {id(root): 0}
    for n in reachable(root):
        for c in n.arcs.values():
            counts[id(c)] = counts.get(id(c), 0) + 1
    return counts


class _Printer:
    def __init__(self, root: Node):
        self.shared = {k for k, v in _indegree(root).items() if v > 1}
        self.tags: dict[int, int] = {}

    def _is_cell(self, node: Node) -> bool:
        return node.type == "nelist" and set(node.arcs) == {FIRST, REST}

    def value(self, node: Node) -> str:
        key = id(node)
        if key in self.tags:
            return f"#{self.tags[key]}"
        prefix = ""
        if key in self.shared:
            self.tags[key] = len(self.tags) + 1
            prefix = f"#{self.tags[key]}="
        return prefix + self.body(node)

    def body(self, node: Node) -> str:
        if node.type == "elist" and not node.arcs:
            return "<>"
        if self._is_cell(node):
            return self._list(node)
        if not node.arcs:
            return "[]" if node.type == TOP else node.type
        parts = [] if node.type == TOP else [node.type]
        for label in sorted(node.arcs, key=label_key):
            parts.append(label)
            parts.append(self.value(node.arcs[label]))
        return "[" + " ".join(parts) + "]"

    def _list(self, node: Node) -> str:
        items = [self.value(node.arcs[FIRST])]
        rest = node.arcs[REST]
        while id(rest) not in self.shared and self._is_cell(rest):
            items.append(self.value(rest.arcs[FIRST]))
            rest = rest.arcs[REST]
        if rest.type == "elist" and not rest.arcs and id(rest) not in self.shared:
            return "<" + ", ".join(items) + ">"
        return "<" + ", ".join(items) + " | " + self.value(rest) + ">"


def format_avm(fs: FeatureStructure | Node) -> str:
    root = fs.root if isinstance(fs, FeatureStructure) else fs
    return _Printer(root).value(root)


def pretty_avm(fs: FeatureStructure, width: int = 72) -> str:
    """Multi-line rendering; matrices that fit in ``width`` stay on one line."""
    root = fs.root
    p = _Printer(root)

    def render(node: Node, indent: int) -> str:
        key = id(node)
        if key in p.tags:
            return f"#{p.tags[key]}"
        # measure with a throwaway printer that starts from the same tag state
        trial = _Printer.__new__(_Printer)
        trial.shared = p.shared
        trial.tags = dict(p.tags)
        flat = trial.value(node)
        if len(flat) + indent <= width or not node.arcs or p._is_cell(node):
            p.tags = trial.tags
            return flat
        prefix = ""
        if key in p.shared:
            p.tags[key] = len(p.tags) + 1
            prefix = f"#{p.tags[key]}="
        head = prefix + "[" + ("" if node.type == TOP else node.type)
        lines = [head]
        inner = indent + len(prefix) + 1
        for label in sorted(node.arcs, key=label_key):
            val = render(node.arcs[label], inner + len(label) + 1)
            lines.append(" " * inner + label + " " + val)
        if lines[0].endswith("["):
            first = lines.pop(1).lstrip()
            lines[0] += first
        return "\n".join(lines) + "]"

    return render(root, 0)
