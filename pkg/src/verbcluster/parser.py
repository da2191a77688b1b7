"""
Bottom-up chart parsing for the verb-cluster grammar.

Parsing runs in three strata, because no schema consumes the output of
a later one:

1. an agenda closes the chart under the binary NP and cluster schemas
   (clusters only combine adjacent spans, in the order the LP mode
   dictates);
2. the flat clause schema is matched in one step: for every finite
   cluster, every run of adjacent nominal edges of the right length
   that ends where the cluster begins;
3. complementizers combine with clauses to their right.

The chart is keyed by span, and an edge whose canonical sign print
already exists on its span is dropped.

Input positions may offer several words (a word lattice); ``parse`` is
the special case of one word per position.
"""

from __future__ import annotations

import itertools
import unicodedata
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .grammar import (
    CLAUSE,
    CLUSTER,
    COMPS,
    CP,
    GOV,
    HEAD,
    LEXICAL,
    MAJOR,
    NP,
    Derivation,
    LpMode,
    Reject,
    is_empty_list,
    is_finite_clause,
    is_lex_plus,
    lp_admissible,
    clause_phrase,
    cluster_phrase,
    cp_phrase,
    np_phrase,
)
from .featstruct import list_length
from .lexicon import Lexicon


class ParseError(ValueError):
    pass


class UnknownWord(ParseError):
    def __init__(self, token: str, position: int):
        self.token = token
        self.position = position
        super().__init__(f"unknown word {token!r} at position {position}")


@dataclass(frozen=True)
class Edge:
    start: int
    end: int
    derivation: Derivation
    signature: str

    @property
    def sign(self):
        return self.derivation.sign

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


def _major(sign) -> str | None:
    node = sign.get((HEAD, MAJOR))
    return None if node is None else node.type


class Chart:
    def __init__(self, size: int):
        self.size = size
        self.by_span: dict[tuple[int, int], dict[str, Edge]] = defaultdict(dict)
        self.by_start: dict[int, list[Edge]] = defaultdict(list)
        self.by_end: dict[int, list[Edge]] = defaultdict(list)

    def add(self, edge: Edge) -> bool:
        cell = self.by_span[edge.span]
        if edge.signature in cell:
            return False
        cell[edge.signature] = edge
        self.by_start[edge.start].append(edge)
        self.by_end[edge.end].append(edge)
        return True

    def edges(self, start: int | None = None, end: int | None = None) -> list[Edge]:
        if start is not None and end is not None:
            return list(self.by_span.get((start, end), {}).values())
        if start is not None:
            return list(self.by_start.get(start, ()))
        if end is not None:
            return list(self.by_end.get(end, ()))
        return [e for cell in self.by_span.values() for e in cell.values()]

    def __len__(self):
        return sum(len(c) for c in self.by_span.values())


class ChartParser:
    """One parse over a word lattice.  ``trace`` collects every Reject."""

    def __init__(self, lexicon: Lexicon, mode: LpMode = LpMode.NL, trace: list | None = None):
        self.lexicon = lexicon
        self.mode = mode
        self.trace = trace

    def _try(self, fn, *args):
        try:
            return fn(*args)
        except Reject as r:
            if self.trace is not None:
                self.trace.append(r)
            return None

    def _edge(self, start, end, deriv: Derivation) -> Edge:
        return Edge(start, end, deriv, str(deriv.sign))

    def fill(self, columns: Sequence[Sequence[str]]) -> Chart:
        chart = Chart(len(columns))
        agenda: deque[Edge] = deque()
        for i, words in enumerate(columns):
            for w in words:
                for sign in self.lexicon.lookup(w):
                    agenda.append(self._edge(i, i + 1, Derivation(sign, LEXICAL)))

        # stratum 1: binary NP and cluster formation
        while agenda:
            e = agenda.popleft()
            if not chart.add(e):
                continue
            for right in chart.edges(start=e.end):
                agenda.extend(self._binary(e, right))
            for left in chart.edges(end=e.start):
                if left is not e:
                    agenda.extend(self._binary(left, e))

        # stratum 2: flat clause schema
        for h in chart.edges():
            for e in self._clauses(chart, h):
                chart.add(e)

        # stratum 3: complementizer + clause
        for s in [e for e in chart.edges() if e.derivation.rule == CLAUSE]:
            for k in chart.edges(end=s.start):
                if _major(k.sign) != "comp":
                    continue
                phrase = self._try(cp_phrase, k.sign, s.sign)
                if phrase is not None:
                    d = Derivation.from_phrase(CP, phrase, (k.derivation, s.derivation))
                    chart.add(self._edge(k.start, s.end, d))
        return chart

    def _binary(self, left: Edge, right: Edge) -> list[Edge]:
        out = []
        lm, rm = _major(left.sign), _major(right.sign)
        if lm == "det" and rm == "n":
            phrase = self._try(np_phrase, left.sign, right.sign)
            if phrase is not None:
                d = Derivation.from_phrase(NP, phrase, (left.derivation, right.derivation))
                out.append(self._edge(left.start, right.end, d))
        if lm == "v" and rm == "v" and is_lex_plus(left.sign) and is_lex_plus(right.sign):
            head, gov = (left, right) if self.mode is LpMode.NL else (right, left)
            if not is_empty_list(head.sign, GOV):
                phrase = self._try(cluster_phrase, head.sign, gov.sign, self.mode)
                if phrase is not None:
                    d = Derivation.from_phrase(CLUSTER, phrase, (left.derivation, right.derivation))
                    out.append(self._edge(left.start, right.end, d))
        return out

    def _clauses(self, chart: Chart, h: Edge) -> list[Edge]:
        sign = h.sign
        if _major(sign) != "v" or not is_empty_list(sign, GOV):
            return []
        n = list_length(sign.get((COMPS,)))
        if n is None:
            return []
        out = []
        for run in self._np_runs(chart, h.start, n + 1):
            subj, *comps = run
            phrase = self._try(clause_phrase, sign, subj.sign, [c.sign for c in comps])
            if phrase is not None:
                dtrs = [e.derivation for e in run] + [h.derivation]
                d = Derivation.from_phrase(CLAUSE, phrase, dtrs)
                out.append(self._edge(subj.start, h.end, d))
        return out

    def _np_runs(self, chart: Chart, end: int, count: int):
        """Sequences of ``count`` adjacent nominal edges ending at ``end``."""
        if count == 0:
            yield ()
            return
        for e in chart.edges(end=end):
            if _major(e.sign) != "n":
                continue
            for prefix in self._np_runs(chart, e.start, count - 1):
                yield prefix + (e,)


def _is_root(edge: Edge) -> bool:
    rule = edge.derivation.rule
    if rule == CLAUSE:
        return is_finite_clause(edge.sign)
    if rule == CP:
        return True
    return False


def _sorted(derivs: Iterable[Derivation]) -> list[Derivation]:
    return sorted(derivs, key=lambda d: (d.pretty(), str(d.sign)))


def tokenize(sentence: str) -> list[str]:
    """Whitespace split after NFC normalisation; a trailing period or
    comma is dropped from each token."""
    text = unicodedata.normalize("NFC", sentence)
    tokens = []
    for raw in text.split():
        tok = raw.rstrip(".,")
        if tok:
            tokens.append(tok)
    return tokens


def parse(tokens: Sequence[str], lexicon: Lexicon, mode: LpMode = LpMode.NL,
          trace: list | None = None) -> list[Derivation]:
    """Every complete derivation of ``tokens``: finite clauses and CPs
    spanning the whole input, sorted by their printed tree."""
    if not tokens:
        raise ParseError("empty input")
    for i, t in enumerate(tokens):
        if t not in lexicon:
            raise UnknownWord(t, i)
    chart = ChartParser(lexicon, mode, trace).fill([[t] for t in tokens])
    return _sorted(e.derivation for e in chart.edges(0, len(tokens)) if _is_root(e))


def parse_lattice(columns: Sequence[Sequence[str]], lexicon: Lexicon,
                  mode: LpMode = LpMode.NL) -> dict[tuple[str, ...], list[Derivation]]:
    """Parse all word sequences a lattice allows at once.

    Returns complete derivations grouped by yield, for every prefix
    ``columns[:n]``.  Because edges are keyed by their full sign, which
    includes PHON, the result for a sequence is exactly what ``parse``
    would return for it.
    """
    chart = ChartParser(lexicon, mode).fill(columns)
    out: dict[tuple[str, ...], list[Derivation]] = defaultdict(list)
    for n in range(1, len(columns) + 1):
        for e in chart.edges(0, n):
            if _is_root(e):
                out[tuple(e.derivation.phon())].append(e.derivation)
    return {k: _sorted(v) for k, v in out.items()}


# ---------------------------------------------------------------------------
# Verb orders
# ---------------------------------------------------------------------------


def verb_cluster(deriv: Derivation) -> Derivation:
    """The verb-cluster constituent of a clause, CP, or cluster."""
    d = deriv
    while d.rule in (CP, CLAUSE):
        if d.rule == CP:
            d = d.daughters[1]
        else:
            d = d.daughters[-1]
    return d


def governor_pairs(cluster: Derivation) -> tuple[list[str], list[tuple[int, int]]]:
    """Words of a cluster in surface order, plus (governor, governed)
    index pairs linking each governing verb to the lexical head of what
    it governs."""
    leaves = cluster.leaves()
    index = {id(leaf): i for i, leaf in enumerate(leaves)}
    pairs = []
    for d in cluster.walk():
        if d.rule != CLUSTER:
            continue
        governed = d.daughters[1 - d.head]
        g = index[id(d.daughters[d.head].lexical_head())]
        x = index[id(governed.lexical_head())]
        pairs.append((g, x))
    words = [" ".join(leaf.phon()) for leaf in leaves]
    return words, pairs


def enumerate_orders(skeleton: Derivation, mode: LpMode) -> list[list[str]]:
    """Brute force: every permutation of the cluster's verbs that the LP
    rule of ``mode`` admits, given the skeleton's government relation."""
    words, pairs = governor_pairs(verb_cluster(skeleton))
    seen, out = set(), []
    for perm in itertools.permutations(range(len(words))):
        pos = {unit: i for i, unit in enumerate(perm)}
        if lp_admissible([(pos[g], pos[x]) for g, x in pairs], mode):
            order = tuple(words[u] for u in perm)
            if order not in seen:
                seen.add(order)
                out.append(list(order))
    return out


# ---------------------------------------------------------------------------
# Re-validation
# ---------------------------------------------------------------------------


def revalidate(deriv: Derivation, mode: LpMode, tokens: Sequence[str] | None = None) -> list[str]:
    """Re-derive every node from its daughters and check the LP rule.

    Returns a list of problems; empty means the derivation is sound.
    """
    from .featstruct import iso
    from .grammar import combine

    problems = []
    if tokens is not None and deriv.phon() != list(tokens):
        problems.append(f"yield {deriv.phon()} differs from input {list(tokens)}")
    for d in deriv.walk():
        words = [w for c in d.daughters for w in c.phon()]
        if d.daughters and words != d.phon():
            problems.append(f"{d.rule}: PHON is not the daughters' concatenation")
        if d.rule == LEXICAL:
            continue
        try:
            again = combine(d.rule, d.daughters, mode)
        except Reject as r:
            problems.append(f"{d.rule} over {' '.join(d.phon())} no longer applies: {r}")
            continue
        if not iso(again.sign, d.sign):
            problems.append(f"{d.rule} over {' '.join(d.phon())} yields a different sign")
    cluster = verb_cluster(deriv)
    _, pairs = governor_pairs(cluster)
    if not lp_admissible(pairs, mode):
        problems.append("verb cluster violates the LP rule")
    return problems
