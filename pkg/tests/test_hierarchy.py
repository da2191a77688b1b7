import itertools

import pytest

from verbcluster.hierarchy import (
    HierarchyError,
    TypeHierarchy,
    builtin_hierarchy,
    hierarchy_from_mapping,
)

from oracles import ancestors, brute_glb

CASES = ["nom", "acc", "dat", "gen"]


def test_declare_nom_below_case():
    h = TypeHierarchy().declare("case", ["top"]).declare("nom", ["case"])
    assert h.subtype_of("nom", "case")
    assert not h.subtype_of("case", "nom")


def test_declare_returns_new_hierarchy():
    h0 = TypeHierarchy()
    h1 = h0.declare("case", ["top"])
    assert "case" in h1
    assert "case" not in h0


@pytest.mark.parametrize("name", ["top", "case"])
def test_duplicate_declaration(h, name):
    with pytest.raises(HierarchyError, match="duplicate"):
        h.declare(name, ["top"])


def test_unknown_parent(h):
    with pytest.raises(HierarchyError, match="unknown parent"):
        h.declare("x", ["nonesuch"])


def test_no_parents():
    with pytest.raises(HierarchyError):
        TypeHierarchy().declare("x", [])


def test_common_subtype_of_nom_and_acc_is_legal_once(h):
    # one common subtype keeps every glb unique
    h2 = h.declare("x", ["nom", "acc"])
    assert h2.glb("nom", "acc") == "x"
    assert brute_glb(h2, "nom", "acc") == "x"
    # a second one makes glb(nom, acc) ambiguous
    with pytest.raises(HierarchyError, match="'acc' and 'nom'|'nom' and 'acc'"):
        h2.declare("y", ["nom", "acc"])


def test_bounded_completeness_violation_names_pair():
    h = hierarchy_from_mapping({"a": ["top"], "b": ["top"], "c": ["a", "b"]})
    with pytest.raises(HierarchyError) as e:
        h.declare("d", ["a", "b"])
    assert "'a'" in str(e.value) and "'b'" in str(e.value)


def test_hierarchy_from_mapping_rejects_cycles():
    with pytest.raises(HierarchyError, match="cyclic"):
        hierarchy_from_mapping({"a": ["b"], "b": ["a"]})


@pytest.mark.parametrize("a,b,expected", [
    ("case", "acc", "acc"),
    ("acc", "case", "acc"),
    ("nom", "nom", "nom"),
    ("nom", "acc", None),
    ("top", "fin", "fin"),
    ("fin", "base", None),
    ("list", "elist", "elist"),
    ("lex_plus", "lex_minus", None),
])
def test_glb_examples(h, a, b, expected):
    assert h.glb(a, b) == expected


@pytest.mark.parametrize("a,b,expected", [
    ("acc", "case", True),
    ("acc", "acc", True),
    ("case", "acc", False),
    ("acc", "top", True),
    ("nom", "acc", False),
])
def test_subtype_of(h, a, b, expected):
    assert h.subtype_of(a, b) is expected


def test_glb_matches_brute_force_everywhere(h):
    for a, b in itertools.product(h.types, repeat=2):
        assert h.glb(a, b) == brute_glb(h, a, b), (a, b)


def test_glb_laws(h):
    for a, b in itertools.product(h.types, repeat=2):
        g = h.glb(a, b)
        assert g == h.glb(b, a)
        if g is not None:
            assert h.subtype_of(g, a) and h.subtype_of(g, b)
    for a in h.types:
        assert h.glb(a, a) == a


def test_subtype_of_is_reachability(h):
    for a, b in itertools.product(h.types, repeat=2):
        assert h.subtype_of(a, b) == (b in ancestors(h, a))


def test_case_table(h):
    for c in CASES:
        assert h.glb("case", c) == c
    for a, b in itertools.combinations(CASES, 2):
        assert h.glb(a, b) is None


def test_every_type_but_top_has_a_parent(h):
    for t in h.types:
        assert (t == "top") == (h.parents(t) == ())


def test_string_atoms(h):
    assert '"zag"' in h
    assert h.glb('"zag"', "string") == '"zag"'
    assert h.glb('"zag"', "top") == '"zag"'
    assert h.glb('"zag"', '"voeren"') is None
    assert h.glb('"zag"', "case") is None
    assert h.subtype_of('"zag"', "string")
    assert not h.subtype_of("string", '"zag"')


def test_unknown_type_in_queries(h):
    with pytest.raises(HierarchyError):
        h.glb("nonesuch", "case")
    with pytest.raises(HierarchyError):
        h.subtype_of("case", "nonesuch")


def test_builtin_is_cached_and_immutable():
    assert builtin_hierarchy() is builtin_hierarchy()
    assert builtin_hierarchy() == hierarchy_from_mapping(dict(builtin_hierarchy().declarations()))
