"""
Typed feature structures as rooted acyclic graphs with reentrancy.

A structure is a graph of :class:`Node` objects.  A node carries a type
from a :class:`~verbcluster.hierarchy.TypeHierarchy` and a mapping from
feature labels to child nodes.  Two paths that lead to the same node
object are token-identical (structure sharing).

Nodes are never modified once a structure has been handed out.
Unification works on scratch tables and then copies the merged graph
into fresh nodes, so both operands stay valid and unchanged.  Several
:class:`FeatureStructure` objects may be views rooted at different nodes
of one graph; token identity between them is plain ``is``.

Lists use the usual first/rest encoding: an ``elist`` node is the empty
list, an ``nelist`` node has FIRST and REST arcs, and an arcless node
of type ``list`` is a list whose length is not yet known.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .hierarchy import TOP, TypeHierarchy, is_atom

FIRST = "FIRST"
REST = "REST"

Path = tuple[str, ...]


class Node:
    __slots__ = ("type", "arcs")

    def __init__(self, type: str = TOP, arcs: dict[str, "Node"] | None = None):
        self.type = type
        self.arcs = arcs if arcs is not None else {}

    def __repr__(self):
        return f"<Node {self.type} {sorted(self.arcs)}>"


class UnificationFailure(Exception):
    """Two nodes forced together carry incompatible types, or merging them
    would make the graph cyclic."""

    def __init__(self, path: Path, left: str, right: str, cycle: bool = False):
        self.path = tuple(path)
        self.left = left
        self.right = right
        self.cycle = cycle
        where = ".".join(self.path) or "<root>"
        if cycle:
            msg = f"cycle through {where}"
        else:
            msg = f"type clash at {where}: {left} vs {right}"
        super().__init__(msg)


class StructureError(ValueError):
    pass


class FeatureStructure:
    """A typed feature structure: a root node plus the hierarchy its types
    come from."""

    __slots__ = ("root", "hierarchy", "_text")

    def __init__(self, root: Node, hierarchy: TypeHierarchy):
        self.root = root
        self.hierarchy = hierarchy
        self._text = None

    @property
    def type(self) -> str:
        return self.root.type

    def get(self, path: Iterable[str]) -> Node | None:
        return walk(self.root, path)

    def at(self, path: Iterable[str]) -> "FeatureStructure | None":
        node = self.get(path)
        return None if node is None else FeatureStructure(node, self.hierarchy)

    def nodes(self) -> list[Node]:
        return reachable(self.root)

    def copy(self) -> "FeatureStructure":
        """Same information, all nodes fresh."""
        return FeatureStructure(_rename(self.root), self.hierarchy)

    def __str__(self):
        if self._text is None:
            from .avm import format_avm
            self._text = format_avm(self)
        return self._text

    def __repr__(self):
        return f"FeatureStructure({self})"


def walk(node: Node, path: Iterable[str]) -> Node | None:
    for label in path:
        node = node.arcs.get(label)
        if node is None:
            return None
    return node


def path_get(fs: FeatureStructure, path: Iterable[str]) -> Node | None:
    """Follow ``path`` from the root; None when some label is missing."""
    return walk(fs.root, path)


def reachable(root: Node) -> list[Node]:
    seen = {id(root)}
    out = [root]
    i = 0
    while i < len(out):
        for child in out[i].arcs.values():
            if id(child) not in seen:
                seen.add(id(child))
                out.append(child)
        i += 1
    return out


def _rename(root: Node) -> Node:
    fresh: dict[int, Node] = {}
    for n in reachable(root):
        fresh[id(n)] = Node(n.type)
    for n in reachable(root):
        fresh[id(n)].arcs = {k: fresh[id(c)] for k, c in n.arcs.items()}
    return fresh[id(root)]


def check_acyclic(root: Node) -> None:
    _rebuild(root, lambda n: n, lambda n: n.type, lambda n: n.arcs)


# ---------------------------------------------------------------------------
# Unification
# ---------------------------------------------------------------------------


def solve(root: Node, equations: Sequence[tuple[Path, Path]], hierarchy: TypeHierarchy) -> Node:
    """Return a fresh copy of the graph under ``root`` in which the node at
    each left path has been unified with the node at the matching right path.

    Raises UnificationFailure with the path (starting from the left path of
    the offending equation) where the clash surfaced.
    """
    parent: dict[Node, Node] = {}
    types: dict[Node, str] = {}
    arcs: dict[Node, dict[str, Node]] = {}

    def find(n: Node) -> Node:
        r = n
        while r in parent:
            r = parent[r]
        while n is not r:
            nxt = parent[n]
            parent[n] = r
            n = nxt
        return r

    glb = hierarchy.glb
    for left, right in equations:
        x = walk(root, left)
        y = walk(root, right)
        if x is None or y is None:
            missing = left if x is None else right
            raise StructureError(f"no node at path {'.'.join(missing)}")
        stack = [(x, y, tuple(left))]
        while stack:
            x, y, path = stack.pop()
            rx, ry = find(x), find(y)
            if rx is ry:
                continue
            tx = types.get(rx, rx.type)
            ty = types.get(ry, ry.type)
            t = glb(tx, ty)
            if t is None:
                raise UnificationFailure(path, tx, ty)
            parent[ry] = rx
            types[rx] = t
            types.pop(ry, None)
            ax = arcs.get(rx)
            if ax is None:
                ax = arcs[rx] = dict(rx.arcs)
            ay = arcs.pop(ry, None) or ry.arcs
            for label, child in ay.items():
                mine = ax.get(label)
                if mine is None:
                    ax[label] = child
                else:
                    stack.append((mine, child, path + (label,)))

    return _rebuild(
        root,
        find,
        lambda r: types.get(r, r.type),
        lambda r: arcs.get(r, r.arcs),
    )


def _rebuild(root, find, type_of, arcs_of) -> Node:
    """Copy the merged graph into fresh nodes, rejecting cycles."""
    fresh: dict[Node, Node] = {}
    done: set[Node] = set()
    r0 = find(root)
    fresh[r0] = Node(type_of(r0))
    # iterative DFS; a back edge to a node still on the stack is a cycle
    stack = [(r0, iter(list(arcs_of(r0).items())), ())]
    on_path = {r0}
    while stack:
        rep, it, path = stack[-1]
        for label, child in it:
            rc = find(child)
            if rc in on_path:
                raise UnificationFailure(path + (label,), type_of(rc), type_of(rc), cycle=True)
            new = fresh.get(rc)
            if new is None:
                new = fresh[rc] = Node(type_of(rc))
            fresh[rep].arcs[label] = new
            if rc not in done:
                on_path.add(rc)
                stack.append((rc, iter(list(arcs_of(rc).items())), path + (label,)))
                break
        else:
            stack.pop()
            on_path.discard(rep)
            done.add(rep)
    return fresh[r0]


def unify(a: FeatureStructure, b: FeatureStructure) -> FeatureStructure:
    """Most general structure subsumed by both ``a`` and ``b``.

    Operands are left untouched.  Raises UnificationFailure on a type clash
    or when the result would be cyclic; the failure's path is relative to
    the roots.
    """
    _same_hierarchy(a, b)
    bundle = Node(TOP, {"A": a.root, "B": b.root})
    try:
        out = solve(bundle, [(("A",), ("B",))], a.hierarchy)
    except UnificationFailure as e:
        raise UnificationFailure(e.path[1:], e.left, e.right, e.cycle) from None
    return FeatureStructure(out.arcs["A"], a.hierarchy)


def _same_hierarchy(a: FeatureStructure, b: FeatureStructure) -> None:
    if a.hierarchy is not b.hierarchy and a.hierarchy != b.hierarchy:
        raise StructureError("feature structures built over different hierarchies")


def bundle(**parts: FeatureStructure) -> Node:
    """A scratch root with one arc per part, sharing the parts' nodes."""
    return Node(TOP, {k: fs.root for k, fs in parts.items()})


# ---------------------------------------------------------------------------
# Subsumption
# ---------------------------------------------------------------------------


def subsumes(a: FeatureStructure, b: FeatureStructure) -> bool:
    """True iff ``a`` is at least as general as ``b``.

    Looks for a root-preserving map from a's nodes to b's nodes that keeps
    every arc, only specialises types, and sends shared nodes to shared
    nodes.
    """
    _same_hierarchy(a, b)
    sub = a.hierarchy.subtype_of
    image: dict[int, Node] = {}
    stack = [(a.root, b.root)]
    while stack:
        x, y = stack.pop()
        seen = image.get(id(x))
        if seen is not None:
            if seen is not y:
                return False
            continue
        image[id(x)] = y
        if not sub(y.type, x.type):
            return False
        for label, xc in x.arcs.items():
            yc = y.arcs.get(label)
            if yc is None:
                return False
            stack.append((xc, yc))
    return True


def iso(a: FeatureStructure, b: FeatureStructure) -> bool:
    """Equality up to renaming of nodes."""
    return subsumes(a, b) and subsumes(b, a)


# ---------------------------------------------------------------------------
# Lists
# ---------------------------------------------------------------------------


def is_list_node(node: Node, hierarchy: TypeHierarchy) -> bool:
    return not is_atom(node.type) and hierarchy.subtype_of(node.type, "list")


def cons(elem: Node, tail: Node, hierarchy: TypeHierarchy) -> Node:
    """A new list cell holding ``elem`` in front of ``tail``; ``tail`` is
    shared, not copied."""
    if not is_list_node(tail, hierarchy):
        raise StructureError(f"cons onto a non-list node of type {tail.type}")
    return Node("nelist", {FIRST: elem, REST: tail})


def make_list(elems: Sequence[Node], tail: Node | None = None) -> Node:
    node = tail if tail is not None else Node("elist")
    for e in reversed(elems):
        node = Node("nelist", {FIRST: e, REST: node})
    return node


def list_items(node: Node) -> Iterator[Node]:
    """Elements of a list node, stopping at elist or an open tail."""
    while node.type == "nelist":
        first = node.arcs.get(FIRST)
        if first is None:
            return
        yield first
        node = node.arcs.get(REST)
        if node is None:
            return


def list_tail(node: Node) -> Node:
    """The node after the last FIRST element: elist, an open tail, or a
    malformed cell."""
    while node.type == "nelist" and FIRST in node.arcs and REST in node.arcs:
        node = node.arcs[REST]
    return node


def list_length(node: Node | None) -> int | None:
    """Number of elements, or None if the list does not end in elist."""
    if node is None:
        return None
    n = 0
    while node.type == "nelist":
        if REST not in node.arcs:
            return None
        node = node.arcs[REST]
        n += 1
    return n if node.type == "elist" else None
