"""
Flat event-semantic readings extracted from CONTENT.

Each event content (DET event) becomes ``exists eN: reln(eN, args...)``,
each nominal content (DET nominal_det) becomes ``reln(xN)``.  Role
arguments are linked by parameter name.  A content node reached along
several paths yields one term.  Parameters are numbered in the order
the traversal first meets them, events and nominals separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .featstruct import FeatureStructure, Node
from .grammar import CONTENT

EXISTS_EVENT = "exists_event"
NOMINAL = "nominal"
ROLES = ("ARG1", "ARG2")


class UlfError(ValueError):
    def __init__(self, path, message):
        self.path = tuple(path)
        super().__init__(f"{'.'.join(self.path) or '<root>'}: {message}")


@dataclass(frozen=True)
class UlfTerm:
    quantifier: str
    param: str
    reln: str
    args: tuple[str, ...] = ()


@dataclass
class UlfForm:
    terms: list[UlfTerm] = field(default_factory=list)
    root: str | None = None

    @property
    def events(self) -> list[UlfTerm]:
        return [t for t in self.terms if t.quantifier == EXISTS_EVENT]

    @property
    def nominals(self) -> list[UlfTerm]:
        return [t for t in self.terms if t.quantifier == NOMINAL]

    def term(self, param: str) -> UlfTerm | None:
        for t in self.terms:
            if t.param == param:
                return t
        return None

    def event_chain(self) -> list[UlfTerm]:
        """Events reached from the root by following ARG2 links."""
        chain, seen = [], set()
        t = self.term(self.root) if self.root else None
        while t is not None and t.quantifier == EXISTS_EVENT and t.param not in seen:
            chain.append(t)
            seen.add(t.param)
            t = self.term(t.args[1]) if len(t.args) > 1 else None
        return chain


def extract_ulf(sign: FeatureStructure) -> UlfForm:
    """Read the CONTENT of ``sign`` into a UlfForm.

    Role values with no information at all (an unfilled lexical role)
    get a fresh parameter and no term.  A content that has some arcs
    but no PARA or RESTR is malformed and raises UlfError.
    """
    content = sign.get((CONTENT,))
    if content is None:
        raise UlfError((CONTENT,), "no CONTENT")

    events: list[UlfTerm] = []
    nominals: list[UlfTerm] = []
    names: dict[int, str] = {}
    counts = {"e": 0, "x": 0}

    def fresh(prefix: str) -> str:
        counts[prefix] += 1
        return f"{prefix}{counts[prefix]}"

    def visit(node: Node, path: tuple[str, ...]) -> str:
        key = id(node)
        if key in names:
            return names[key]
        if not node.arcs:
            names[key] = fresh("x")
            return names[key]
        det = node.arcs.get("DET")
        restr = node.arcs.get("RESTR")
        if "PARA" not in node.arcs or restr is None:
            raise UlfError(path, "content without PARA and RESTR")
        reln = restr.arcs.get("RELN")
        if reln is None:
            raise UlfError(path + ("RESTR",), "restriction without RELN")
        is_event = det is not None and det.type == "event"
        name = names[key] = fresh("e" if is_event else "x")
        if not is_event:
            nominals.append(UlfTerm(NOMINAL, name, reln.type))
            return name
        slot = len(events)
        events.append(None)
        args = []
        for role in ROLES:
            arg = restr.arcs.get(role)
            if arg is not None:
                args.append(visit(arg, path + ("RESTR", role)))
        events[slot] = UlfTerm(EXISTS_EVENT, name, reln.type, tuple(args))
        return name

    root = visit(content, (CONTENT,))
    return UlfForm(events + nominals, root)


def print_ulf(form: UlfForm, ascii: bool = False) -> str:
    """``exists e1: zien(e1, x1, e2) ∧ ... ∧ speaker(x1)``; ``&`` with ascii."""
    parts = []
    for t in form.terms:
        if t.quantifier == EXISTS_EVENT:
            args = ", ".join((t.param,) + t.args)
            parts.append(f"exists {t.param}: {t.reln}({args})")
        else:
            parts.append(f"{t.reln}({t.param})")
    return (" & " if ascii else " ∧ ").join(parts)
