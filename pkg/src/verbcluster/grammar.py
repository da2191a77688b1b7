"""
Signs, the immediate-dominance schemas and the verb-cluster LP parameter.

Every schema works the same way: the daughters are placed side by side
under one scratch root, the schema's identities are imposed by
unification, and the mother is assembled from nodes of the unified
graph.  The mother therefore shares nodes with the daughters *as
combined* (``Phrase.daughters``), which is what lets callers check the
argument-composition identities as object identity.

Principles built into every headed schema:

* Head features: the mother's HEAD node is the head daughter's.
* Semantics: the mother's CONTENT node is the head daughter's.
* Valence: the mother's SUBJ/COMPS/GOV are what is left of the head
  daughter's lists after the realised daughters are consumed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .featstruct import (
    FIRST,
    REST,
    FeatureStructure,
    Node,
    UnificationFailure,
    bundle,
    list_items,
    list_length,
    make_list,
    solve,
)
from .hierarchy import is_atom

PHON, HEAD, SUBJ, COMPS, GOV, CONTENT, LEX, SPR = (
    "PHON", "HEAD", "SUBJ", "COMPS", "GOV", "CONTENT", "LEX", "SPR",
)
MAJOR, VFORM, CASE = "MAJOR", "VFORM", "CASE"

LEXICAL = "lexical"
CLAUSE = "clause_schema"
CLUSTER = "cluster_schema"
NP = "np_schema"
CP = "cp_schema"


class LpMode(enum.Enum):
    """Verb-cluster order: governor first (Dutch) or governor last (German)."""

    NL = "nl"
    DE = "de"


class Reject(Exception):
    """A schema did not apply.  ``failure`` is set when the cause was a
    unification clash rather than an unmet precondition."""

    def __init__(self, rule: str, reason: str, failure: UnificationFailure | None = None):
        self.rule = rule
        self.reason = reason
        self.failure = failure
        super().__init__(f"{rule}: {reason}")


@dataclass(frozen=True)
class Phrase:
    sign: FeatureStructure
    daughters: tuple[FeatureStructure, ...]  # surface order, sharing nodes with sign
    head: int | None  # index of the head daughter


# ---------------------------------------------------------------------------
# Sign inspection
# ---------------------------------------------------------------------------


def phon(sign: FeatureStructure | Node) -> list[str]:
    root = sign.root if isinstance(sign, FeatureStructure) else sign
    node = root.arcs.get(PHON)
    if node is None:
        return []
    words = []
    for item in list_items(node):
        t = item.type
        words.append(t[1:-1] if is_atom(t) else t)
    return words


def type_at(sign: FeatureStructure, *path: str) -> str | None:
    node = sign.get(path)
    return None if node is None else node.type


def _has(sign: FeatureStructure, path: tuple[str, ...], t: str) -> bool:
    node = sign.get(path)
    return node is not None and sign.hierarchy.subtype_of(node.type, t)


def is_empty_list(sign: FeatureStructure, *path: str) -> bool:
    node = sign.get(path)
    return node is not None and node.type == "elist"


def is_saturated(sign: FeatureStructure) -> bool:
    return all(is_empty_list(sign, f) for f in (SUBJ, COMPS, GOV))


def is_lex_plus(sign: FeatureStructure) -> bool:
    return _has(sign, (LEX,), "lex_plus")


def is_finite_clause(sign: FeatureStructure) -> bool:
    return (
        is_saturated(sign)
        and _has(sign, (LEX,), "lex_minus")
        and _has(sign, (HEAD, MAJOR), "v")
        and _has(sign, (HEAD, VFORM), "fin")
    )


def _phon_list(daughters: Sequence[Node]) -> Node:
    words = []
    for d in daughters:
        words.extend(list_items(d.arcs[PHON]))
    return make_list(words)


def _combine(rule: str, parts: dict[str, FeatureStructure], equations) -> Node:
    h = next(iter(parts.values())).hierarchy
    try:
        return solve(bundle(**parts), equations, h)
    except UnificationFailure as e:
        raise Reject(rule, str(e), e) from None


def _sign(hierarchy, **arcs: Node) -> FeatureStructure:
    return FeatureStructure(Node("sign", arcs), hierarchy)


# ---------------------------------------------------------------------------
# Cluster formation:  X[LEX+] -> H[GOV <C>, LEX+], C
# ---------------------------------------------------------------------------


def cluster_phrase(head: FeatureStructure, governed: FeatureStructure, mode: LpMode) -> Phrase:
    if not is_lex_plus(head):
        raise Reject(CLUSTER, "head is not LEX+")
    gov = head.get((GOV,))
    if gov is None or list_length(gov) != 1:
        raise Reject(CLUSTER, "head does not govern exactly one item")
    if not is_lex_plus(governed):
        raise Reject(CLUSTER, "governed item is not LEX+")
    if not is_empty_list(governed, GOV):
        raise Reject(CLUSTER, "governed item has an undischarged GOV")

    root = _combine(CLUSTER, {"H": head, "D": governed}, [(("H", GOV, FIRST), ("D",))])
    h, d = root.arcs["H"], root.arcs["D"]
    order = (h, d) if mode is LpMode.NL else (d, h)
    mother = Node("sign", {
        PHON: _phon_list(order),
        HEAD: h.arcs[HEAD],
        SUBJ: h.arcs[SUBJ],
        COMPS: h.arcs[COMPS],
        GOV: h.arcs[GOV].arcs[REST],
        CONTENT: h.arcs[CONTENT],
        LEX: Node("lex_plus"),
    })
    hier = head.hierarchy
    dtrs = tuple(FeatureStructure(n, hier) for n in order)
    return Phrase(FeatureStructure(mother, hier), dtrs, 0 if mode is LpMode.NL else 1)


def apply_cluster_schema(head: FeatureStructure, governed: FeatureStructure, mode: LpMode) -> FeatureStructure:
    """Combine a governing verb (or cluster) with the cluster it governs.

    Unifying ``governed`` into the head's GOV element is what composes
    the arguments: the head's COMPS tail and raised subject are the
    governed item's SUBJ and COMPS.  The result is still LEX+, so it can
    itself be governed.  Raises Reject.
    """
    return cluster_phrase(head, governed, mode).sign


# ---------------------------------------------------------------------------
# Clause:  XP[LEX-] -> S, C1, ..., Cn, H[GOV <>, LEX+]
# ---------------------------------------------------------------------------


def clause_phrase(head: FeatureStructure, subj: FeatureStructure, comps: Sequence[FeatureStructure]) -> Phrase:
    if not is_empty_list(head, GOV):
        raise Reject(CLAUSE, "head has an undischarged GOV")
    if not is_lex_plus(head):
        raise Reject(CLAUSE, "head is not LEX+")
    if not _has(head, (HEAD, VFORM), "fin"):
        raise Reject(CLAUSE, "head is not finite")
    if list_length(head.get((SUBJ,))) != 1:
        raise Reject(CLAUSE, "head does not select exactly one subject")
    n = list_length(head.get((COMPS,)))
    if n is None:
        raise Reject(CLAUSE, "head's COMPS list has no fixed length")
    if n != len(comps):
        raise Reject(CLAUSE, f"head wants {n} complements, got {len(comps)}")

    parts = {"H": head, "S": subj}
    eqs = [(("H", SUBJ, FIRST), ("S",))]
    path = ("H", COMPS)
    for i, c in enumerate(comps):
        parts[f"C{i}"] = c
        eqs.append((path + (FIRST,), (f"C{i}",)))
        path += (REST,)
    root = _combine(CLAUSE, parts, eqs)

    h = root.arcs["H"]
    rest = h.arcs[COMPS]
    for _ in comps:
        rest = rest.arcs[REST]
    order = [root.arcs["S"]] + [root.arcs[f"C{i}"] for i in range(len(comps))] + [h]
    mother = Node("sign", {
        PHON: _phon_list(order),
        HEAD: h.arcs[HEAD],
        SUBJ: h.arcs[SUBJ].arcs[REST],
        COMPS: rest,
        GOV: h.arcs[GOV],
        CONTENT: h.arcs[CONTENT],
        LEX: Node("lex_minus"),
    })
    hier = head.hierarchy
    dtrs = tuple(FeatureStructure(n, hier) for n in order)
    return Phrase(FeatureStructure(mother, hier), dtrs, len(order) - 1)


def apply_clause_schema(head: FeatureStructure, subj: FeatureStructure, comps: Sequence[FeatureStructure]) -> FeatureStructure:
    """Saturate a finite verb cluster with its subject and complements.

    Surface order is fixed: subject, complements in COMPS order, then
    the cluster.  Raises Reject on an arity mismatch or a clash.
    """
    return clause_phrase(head, subj, comps).sign


# ---------------------------------------------------------------------------
# NP and CP
# ---------------------------------------------------------------------------


def np_phrase(det: FeatureStructure, noun: FeatureStructure) -> Phrase:
    if not _has(det, (HEAD, MAJOR), "det"):
        raise Reject(NP, "left daughter is not a determiner")
    if not _has(noun, (HEAD, MAJOR), "n"):
        raise Reject(NP, "right daughter is not nominal")
    if list_length(noun.get((SPR,))) != 1:
        raise Reject(NP, "noun does not take a determiner")

    root = _combine(NP, {"N": noun, "D": det}, [(("N", SPR, FIRST), ("D",))])
    n, d = root.arcs["N"], root.arcs["D"]
    mother = Node("sign", {
        PHON: _phon_list((d, n)),
        HEAD: n.arcs[HEAD],
        SPR: n.arcs[SPR].arcs[REST],
        SUBJ: Node("elist"),
        COMPS: Node("elist"),
        GOV: Node("elist"),
        CONTENT: n.arcs[CONTENT],
        LEX: Node("lex_minus"),
    })
    hier = noun.hierarchy
    return Phrase(FeatureStructure(mother, hier), (FeatureStructure(d, hier), FeatureStructure(n, hier)), 1)


def apply_np_schema(det: FeatureStructure, noun: FeatureStructure) -> FeatureStructure:
    return np_phrase(det, noun).sign


def cp_phrase(comp: FeatureStructure, clause: FeatureStructure) -> Phrase:
    if not _has(comp, (HEAD, MAJOR), "comp"):
        raise Reject(CP, "left daughter is not a complementizer")
    if not is_finite_clause(clause):
        raise Reject(CP, "right daughter is not a saturated finite clause")

    root = _combine(CP, {"K": comp, "S": clause}, [])
    k, s = root.arcs["K"], root.arcs["S"]
    mother = Node("sign", {
        PHON: _phon_list((k, s)),
        HEAD: k.arcs[HEAD],
        SUBJ: Node("elist"),
        COMPS: Node("elist"),
        GOV: Node("elist"),
        CONTENT: s.arcs[CONTENT],
        LEX: Node("lex_minus"),
    })
    hier = clause.hierarchy
    return Phrase(FeatureStructure(mother, hier), (FeatureStructure(k, hier), FeatureStructure(s, hier)), 0)


def apply_cp_schema(comp: FeatureStructure, clause: FeatureStructure) -> FeatureStructure:
    return cp_phrase(comp, clause).sign


# ---------------------------------------------------------------------------
# Linear precedence
# ---------------------------------------------------------------------------


def lp_admissible(pairs: Sequence[tuple[int, int]], mode: LpMode) -> bool:
    """Check (governor position, governed position) pairs against the LP rule.

    NL: ``[GOV <X>] < X``.  DE: ``X < [GOV <X>]``.
    """
    if mode is LpMode.NL:
        return all(g < d for g, d in pairs)
    return all(d < g for g, d in pairs)


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """A node of a parse tree.

    ``sign`` is what the node's rule produced; ``daughter_signs`` are the
    daughters as unified into it (same graph as ``sign``), while each
    entry of ``daughters`` keeps the daughter's own derivation.
    """

    sign: FeatureStructure
    rule: str
    daughters: tuple["Derivation", ...] = ()
    head: int | None = None
    daughter_signs: tuple[FeatureStructure, ...] = field(default=(), compare=False)

    @classmethod
    def from_phrase(cls, rule: str, phrase: Phrase, daughters: Sequence["Derivation"]) -> "Derivation":
        return cls(phrase.sign, rule, tuple(daughters), phrase.head, phrase.daughters)

    def phon(self) -> list[str]:
        return phon(self.sign)

    @property
    def head_daughter(self) -> "Derivation | None":
        return None if self.head is None else self.daughters[self.head]

    def lexical_head(self) -> "Derivation":
        d = self
        while d.head is not None:
            d = d.daughters[d.head]
        return d

    def leaves(self) -> list["Derivation"]:
        if not self.daughters:
            return [self]
        out = []
        for d in self.daughters:
            out.extend(d.leaves())
        return out

    def walk(self):
        yield self
        for d in self.daughters:
            yield from d.walk()

    def bracketing(self) -> str:
        """Compact bracketed yield, e.g. ``(zag (helpen voeren))``."""
        if not self.daughters:
            return " ".join(self.phon())
        return "(" + " ".join(d.bracketing() for d in self.daughters) + ")"

    def pretty(self, indent: str = "  ") -> str:
        lines = []

        def emit(d: Derivation, depth: int):
            lines.append(f"{indent * depth}{d.rule}  {' '.join(d.phon())}")
            for c in d.daughters:
                emit(c, depth + 1)

        emit(self, 0)
        return "\n".join(lines)

    def __str__(self):
        return self.pretty()


def combine(rule: str, daughters: Sequence[Derivation], mode: LpMode = LpMode.NL) -> Derivation:
    """Apply ``rule`` to daughter derivations given in surface order."""
    signs = [d.sign for d in daughters]
    if rule == CLUSTER:
        if len(daughters) != 2:
            raise Reject(CLUSTER, "needs two daughters")
        head, gov = signs if mode is LpMode.NL else signs[::-1]
        phrase = cluster_phrase(head, gov, mode)
    elif rule == CLAUSE:
        if len(daughters) < 2:
            raise Reject(CLAUSE, "needs a subject and a head")
        phrase = clause_phrase(signs[-1], signs[0], signs[1:-1])
    elif rule == NP:
        phrase = np_phrase(*signs)
    elif rule == CP:
        phrase = cp_phrase(*signs)
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return Derivation.from_phrase(rule, phrase, daughters)
