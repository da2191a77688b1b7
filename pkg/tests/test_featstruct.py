import random

import pytest
from hypothesis import given, settings, strategies as st

from verbcluster.avm import build
from verbcluster.featstruct import (
    FeatureStructure,
    Node,
    StructureError,
    UnificationFailure,
    cons,
    iso,
    list_items,
    list_length,
    make_list,
    path_get,
    subsumes,
    unify,
)
from verbcluster.hierarchy import builtin_hierarchy

from oracles import random_fs

H = builtin_hierarchy()


def structures():
    return st.integers(0, 2**32 - 1).map(lambda seed: random_fs(random.Random(seed), H))


# -- unify --------------------------------------------------------------------


def test_unify_specialises_case(fs):
    r = unify(fs("[CASE case]"), fs("[CASE acc]"))
    assert iso(r, fs("[CASE acc]"))


def test_unify_propagates_through_sharing(fs):
    r = unify(fs("[SUBJ #1 COMPS #1]"), fs("[SUBJ nom]"))
    assert path_get(r, ["COMPS"]) is path_get(r, ["SUBJ"])
    assert path_get(r, ["COMPS"]).type == "nom"


def test_unify_clash_reports_path_and_types(fs):
    with pytest.raises(UnificationFailure) as e:
        unify(fs("[HEAD [CASE nom]]"), fs("[HEAD [CASE acc]]"))
    assert e.value.path == ("HEAD", "CASE")
    assert {e.value.left, e.value.right} == {"nom", "acc"}


def test_unify_clash_through_reentrancy(fs):
    with pytest.raises(UnificationFailure) as e:
        unify(fs("[A #1 B #1]"), fs("[A nom B acc]"))
    assert e.value.path[-1] in ("A", "B")


def test_occurs_check(fs):
    a = fs("[F #1 G #1]")
    b = fs("[F [H #2] G #2]")
    with pytest.raises(UnificationFailure) as e:
        unify(a, b)
    assert e.value.cycle


def test_unify_leaves_operands_unchanged(fs):
    a = fs("[SUBJ #1 COMPS #1]")
    b = fs("[SUBJ nom OTHER acc]")
    before = (str(a), str(b), a.nodes(), b.nodes())
    unify(a, b)
    assert (str(a), str(b)) == before[:2]
    assert [id(n) for n in a.nodes()] == [id(n) for n in before[2]]
    assert all(n.type != "nom" for n in a.nodes())


def test_unify_identity(fs):
    x = fs("[A #1=[B case] C #1 D <nom, acc>]")
    assert iso(unify(x, x), x)
    assert iso(unify(x, x.copy()), x)


def test_unify_with_top(fs):
    x = fs("[A nom]")
    assert iso(unify(fs("[]"), x), x)


def test_unify_different_hierarchies(fs):
    other = H.declare("zzz", ["top"])
    with pytest.raises(StructureError):
        unify(fs("[]"), build("[]", other))


# -- subsumes / iso ---------------------------------------------------------------


def test_subsumes_examples(fs):
    assert subsumes(fs("case"), fs("acc"))
    assert not subsumes(fs("acc"), fs("case"))
    x = fs("[A #1 B #1]")
    assert subsumes(x, x)
    # reentrancy is information
    assert subsumes(fs("[A [] B []]"), x)
    assert not subsumes(x, fs("[A [] B []]"))
    assert not subsumes(fs("[A nom]"), fs("[B nom]"))


def test_iso_examples(fs):
    x = fs("[A #1=[B case] C #1]")
    assert iso(x, x.copy())
    assert not iso(fs("[CASE case]"), fs("[CASE acc]"))
    assert not iso(fs("[A [] B []]"), fs("[A #1 B #1]"))


def test_copy_renames_every_node(fs):
    x = fs("[A #1=[B case] C #1]")
    y = x.copy()
    assert not {id(n) for n in x.nodes()} & {id(n) for n in y.nodes()}
    assert y.get(["A"]) is y.get(["C"])


# -- path_get ------------------------------------------------------------------------


def test_path_get(fs):
    x = fs("[HEAD [VFORM base]]")
    assert path_get(x, ["HEAD", "VFORM"]).type == "base"
    assert path_get(x, []) is x.root
    assert path_get(x, ["HEAD", "CASE"]) is None


# -- lists ------------------------------------------------------------------------------


def test_cons_onto_elist(h):
    np = Node("sign")
    lst = cons(np, Node("elist"), h)
    assert list(list_items(lst)) == [np]
    assert list_length(lst) == 1


def test_cons_shares_tail(fs, h):
    tail = fs("<[CASE acc]>")
    before = str(tail)
    np5 = Node("sign")
    lst = cons(np5, tail.root, h)
    assert lst.arcs["REST"] is tail.root
    assert str(tail) == before
    assert iso(FeatureStructure(lst.arcs["REST"], h), tail)
    assert [n for n in list_items(lst)] == [np5, tail.get(["FIRST"])]


def test_cons_length_two(h):
    a, b = Node(), Node()
    assert list_length(cons(a, cons(b, Node("elist"), h), h)) == 2


def test_cons_onto_open_tail(h):
    lst = cons(Node(), Node("list"), h)
    assert list_length(lst) is None


def test_cons_onto_non_list(h):
    with pytest.raises(StructureError):
        cons(Node(), Node("case"), h)


def test_make_list_and_items():
    a, b = Node("nom"), Node("acc")
    assert list(list_items(make_list([a, b]))) == [a, b]
    assert list_length(make_list([])) == 0


# -- algebra, as properties ------------------------------------------------------------


def _try(a, b):
    try:
        return unify(a, b)
    except UnificationFailure:
        return None


@settings(max_examples=300, deadline=None)
@given(structures(), structures())
def test_unify_commutes(a, b):
    r1, r2 = _try(a, b), _try(b, a)
    assert (r1 is None) == (r2 is None)
    if r1 is not None:
        assert iso(r1, r2)


@settings(max_examples=300, deadline=None)
@given(structures(), structures())
def test_unify_is_a_lower_bound(a, b):
    r = _try(a, b)
    if r is not None:
        assert subsumes(a, r) and subsumes(b, r)
        assert iso(unify(a, r), r)


@settings(max_examples=200, deadline=None)
@given(structures())
def test_unify_idempotent(a):
    assert iso(unify(a, a.copy()), a)


@settings(max_examples=200, deadline=None)
@given(structures(), structures())
def test_unify_is_persistent(a, b):
    sa, sb = str(a), str(b)
    sub_ab = subsumes(a, b)
    _try(a, b)
    assert (str(a), str(b), subsumes(a, b)) == (sa, sb, sub_ab)


@settings(max_examples=200, deadline=None)
@given(structures(), structures(), structures())
def test_unify_associates(a, b, c):
    ab = _try(a, b)
    bc = _try(b, c)
    left = None if ab is None else _try(ab, c)
    right = None if bc is None else _try(a, bc)
    assert (left is None) == (right is None)
    if left is not None:
        assert iso(left, right)
