"""
Lexicons: a word form -> signs multimap plus the hierarchy in force.

Text format, one statement per ``;``::

    # comment
    type dat_case < case;
    entry "zag" = [sign PHON <"zag"> ...];

Type declarations extend the hierarchy the text is loaded over.  Tags
inside an entry are local to that entry.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator

from .avm import AvmSyntaxError, Reader, format_avm, pretty_avm
from .featstruct import FIRST, REST, FeatureStructure, StructureError, list_length, walk
from .grammar import COMPS, CONTENT, GOV, HEAD, LEX, MAJOR, SUBJ
from .hierarchy import HierarchyError, TypeHierarchy, builtin_hierarchy


class LexiconError(ValueError):
    pass


def normalize(form: str) -> str:
    return unicodedata.normalize("NFC", form)


@dataclass(frozen=True)
class LexiconEntry:
    form: str
    sign: FeatureStructure


@dataclass
class EntryReport:
    form: str
    line: int
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems


class Lexicon:
    def __init__(self, entries: Iterable[LexiconEntry], hierarchy: TypeHierarchy):
        self.hierarchy = hierarchy
        self._entries: dict[str, list[LexiconEntry]] = {}
        for e in entries:
            self._entries.setdefault(normalize(e.form), []).append(e)

    def lookup(self, form: str) -> list[FeatureStructure]:
        """Fresh copies of every sign listed under ``form``."""
        return [e.sign.copy() for e in self._entries.get(normalize(form), ())]

    def entries(self) -> Iterator[LexiconEntry]:
        for es in self._entries.values():
            yield from es

    def forms(self) -> list[str]:
        return list(self._entries)

    def __contains__(self, form: str) -> bool:
        return normalize(form) in self._entries

    def __len__(self):
        return sum(len(es) for es in self._entries.values())

    def restricted(self, forms: Iterable[str]) -> "Lexicon":
        keep = {normalize(f) for f in forms}
        return Lexicon((e for e in self.entries() if normalize(e.form) in keep), self.hierarchy)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_entry(sign: FeatureStructure) -> list[str]:
    """Return the entry invariants ``sign`` violates (empty when fine)."""
    problems = []
    h = sign.hierarchy
    lex = sign.get((LEX,))
    if lex is None or not h.subtype_of(lex.type, "lex_plus"):
        problems.append("LEX is not lex_plus")

    content = sign.get((CONTENT,))
    major = sign.get((HEAD, MAJOR))
    is_verb = major is not None and major.type == "v"
    if content is not None and (is_verb or "PARA" in content.arcs):
        para = walk(content, ("PARA",))
        inst = walk(content, ("RESTR", "INST"))
        if para is None or inst is None or para is not inst:
            problems.append("CONTENT.PARA is not shared with CONTENT.RESTR.INST")
    elif is_verb:
        problems.append("verb has no CONTENT")

    gov = sign.get((GOV,))
    if gov is None:
        problems.append("no GOV list")
    elif gov.type == "nelist":
        if list_length(gov) != 1:
            problems.append("GOV must hold exactly one element")
        checks = [
            ((COMPS, FIRST), (GOV, FIRST, SUBJ, FIRST),
             "COMPS.FIRST is not shared with GOV.FIRST.SUBJ.FIRST"),
            ((COMPS, REST), (GOV, FIRST, COMPS),
             "COMPS.REST is not shared with GOV.FIRST.COMPS"),
            ((CONTENT, "RESTR", "ARG2"), (GOV, FIRST, CONTENT),
             "CONTENT.RESTR.ARG2 is not shared with GOV.FIRST.CONTENT"),
        ]
        for p, q, msg in checks:
            a, b = sign.get(p), sign.get(q)
            if a is None or b is None or a is not b:
                problems.append(msg)
    return problems


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def _read_statements(text: str, hierarchy: TypeHierarchy):
    """Yield ('type', hierarchy) and ('entry', form, line, sign-or-error)
    items in file order.  Syntax errors abort; per-entry content errors
    are yielded so that callers can decide."""
    r = Reader(text, hierarchy)
    while True:
        tok = r.peek()
        if tok[0] == "eof":
            return
        if tok[0] == "symbol" and tok[1] == "type":
            r.next()
            name = r.next()
            if name[0] != "symbol":
                raise r.error("expected a type name", name)
            r.expect("<")
            parents = []
            while True:
                p = r.next()
                if p[0] != "symbol":
                    raise r.error("expected a parent type name", p)
                parents.append(p[1])
                if not r.at_punct(","):
                    break
                r.next()
            r.expect(";")
            try:
                r.hierarchy = r.hierarchy.declare(name[1], parents)
            except HierarchyError as e:
                raise AvmSyntaxError(str(e), text, name[2]) from None
            yield ("type", r.hierarchy)
        elif tok[0] == "symbol" and tok[1] == "entry":
            r.next()
            form = r.next()
            if form[0] != "string":
                raise r.error("expected a quoted word form", form)
            line = text.count("\n", 0, form[2]) + 1
            r.expect("=")
            r.tags, r.equations = {}, []
            root = r.value()
            r.expect(";")
            try:
                sign = r.finish(root)
            except StructureError as e:
                yield ("entry", normalize(form[1][1:-1]), line, e)
                continue
            yield ("entry", normalize(form[1][1:-1]), line, sign)
        else:
            raise r.error(f"expected 'type' or 'entry', found {tok[1]!r}")


def check_lexicon(text: str, hierarchy: TypeHierarchy | None = None) -> tuple[Lexicon, list[EntryReport]]:
    """Load ``text`` leniently: entries that fail validation are reported
    and left out of the returned lexicon.  Syntax errors still raise."""
    h = hierarchy if hierarchy is not None else builtin_hierarchy()
    entries, reports = [], []
    for item in _read_statements(text, h):
        if item[0] == "type":
            h = item[1]
            continue
        _, form, line, sign = item
        if isinstance(sign, Exception):
            reports.append(EntryReport(form, line, [str(sign)]))
            continue
        problems = validate_entry(sign)
        reports.append(EntryReport(form, line, problems))
        if not problems:
            entries.append(LexiconEntry(form, sign))
    # entries built before a later type declaration keep working: hierarchies
    # only grow, so rebind everything to the final one
    entries = [LexiconEntry(e.form, FeatureStructure(e.sign.root, h)) for e in entries]
    return Lexicon(entries, h), reports


def load_lexicon(text: str, hierarchy: TypeHierarchy | None = None) -> Lexicon:
    """Parse and validate a lexicon text.

    Raises AvmSyntaxError (with line and column) on malformed text and
    LexiconError naming every entry that breaks an invariant.
    """
    lex, reports = check_lexicon(text, hierarchy)
    bad = [r for r in reports if not r.ok]
    if bad:
        raise LexiconError("; ".join(
            f"entry {r.form!r} (line {r.line}): {', '.join(r.problems)}" for r in bad
        ))
    return lex


def fragment_text() -> str:
    return resources.files("verbcluster").joinpath("data/fragment.lex").read_text(encoding="utf-8")


_builtin: Lexicon | None = None


def builtin_lexicon() -> Lexicon:
    """The Dutch fragment: pronouns, names, de nijlpaarden, dat, voeren,
    and the composition verbs zag, liet, helpen, laten."""
    global _builtin
    if _builtin is None:
        _builtin = load_lexicon(fragment_text(), builtin_hierarchy())
    return _builtin


def dump_lexicon(lex: Lexicon, pretty: bool = False) -> str:
    """Render a lexicon in the text format (entries only)."""
    out = []
    for e in lex.entries():
        body = pretty_avm(e.sign) if pretty else format_avm(e.sign)
        out.append(f'entry "{e.form}" = {body};')
    return "\n".join(out) + ("\n" if out else "")
