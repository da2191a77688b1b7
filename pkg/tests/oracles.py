"""Independent brute-force checkers used by the tests.

None of these call the chart parser or the hierarchy's glb table.
"""

import itertools
import random

from verbcluster.featstruct import FeatureStructure, Node, subsumes
from verbcluster.grammar import (
    COMPS,
    LpMode,
    Reject,
    apply_clause_schema,
    apply_cluster_schema,
    apply_cp_schema,
    apply_np_schema,
    phon,
)
from verbcluster.featstruct import list_length


# -- type hierarchy ------------------------------------------------------------


def ancestors(h, t):
    """Reflexive-transitive closure of the declared parent relation."""
    seen, todo = {t}, [t]
    while todo:
        for p in h.parents(todo.pop()):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def brute_glb(h, a, b):
    """Enumerate all common lower bounds and keep the maximal ones.

    Returns the unique maximum, None when there is no lower bound, and
    raises if there are several maximal bounds."""
    up = {t: ancestors(h, t) for t in h.types}
    lower = [t for t in h.types if a in up[t] and b in up[t]]
    maximal = [t for t in lower if not any(o != t and o in up[t] for o in lower)]
    if len(maximal) > 1:
        raise AssertionError(f"{a}, {b} have several maximal lower bounds {maximal}")
    return maximal[0] if maximal else None


# -- random structures -----------------------------------------------------------

RANDOM_TYPES = [
    "top", "top", "top", "case", "nom", "acc", "dat", "gen",
    "list", "elist", "nelist", "lex_bool", "lex_plus", "lex_minus", "v", "fin",
]
RANDOM_LABELS = ["F", "G", "H"]


def random_fs(rng: random.Random, h, max_nodes=8, types=RANDOM_TYPES, labels=RANDOM_LABELS):
    """A random rooted DAG with at most ``max_nodes`` nodes.

    Arcs only go from lower to higher node numbers, so the graph is
    acyclic; every node gets one incoming arc from an earlier node so it
    is reachable; extra arcs create reentrancy.
    """
    n = rng.randint(1, max_nodes)
    nodes = [Node(rng.choice(types)) for _ in range(n)]
    for j in range(1, n):
        candidates = [i for i in range(j) if len(nodes[i].arcs) < len(labels)]
        i = rng.choice(candidates)
        free = [lb for lb in labels if lb not in nodes[i].arcs]
        nodes[i].arcs[rng.choice(free)] = nodes[j]
    for _ in range(rng.randint(0, 3)):
        if n < 2:
            break
        i = rng.randrange(n - 1)
        j = rng.randrange(i + 1, n)
        free = [lb for lb in labels if lb not in nodes[i].arcs]
        if free:
            nodes[i].arcs[rng.choice(free)] = nodes[j]
    return FeatureStructure(nodes[0], h)


# -- bounded enumeration -----------------------------------------------------------


def small_structures(h, types=("case", "nom", "acc")):
    """All structures of depth <= 2 over ``types``: a root with optional
    F and G daughters, each daughter with an optional F daughter; F and
    G of the root may be one shared node.  Closed under unification."""
    def child_options():
        yield None
        for t in types:
            yield ("leaf", t)
            for g in types:
                yield ("inner", t, g)

    def make(spec):
        if spec[0] == "leaf":
            return Node(spec[1])
        return Node(spec[1], {"F": Node(spec[2])})

    out = []
    for root_t in types:
        for f, g in itertools.product(list(child_options()), repeat=2):
            arcs = {}
            if f is not None:
                arcs["F"] = make(f)
            if g is not None:
                arcs["G"] = make(g)
            out.append(FeatureStructure(Node(root_t, arcs), h))
        for shared in child_options():
            if shared is None:
                continue
            node = make(shared)
            out.append(FeatureStructure(Node(root_t, {"F": node, "G": node}), h))
    return out


def below_sets(space):
    """For each structure, the bitmask of space members it subsumes."""
    masks = []
    for a in space:
        m = 0
        for k, c in enumerate(space):
            if subsumes(a, c):
                m |= 1 << k
        masks.append(m)
    return masks


# -- language generation -----------------------------------------------------------


def _try(fn, *args):
    try:
        return fn(*args)
    except Reject:
        return None


def _major(sign):
    node = sign.get(("HEAD", "MAJOR"))
    return None if node is None else node.type


def generate_language(lex, mode: LpMode, max_len: int) -> set:
    """Yields of every complete derivation with at most ``max_len`` words.

    Builds derivations bottom-up by trying every schema on every
    combination of already-built signs, without spans or adjacency; a
    schema's own PHON ordering decides the word order.  Signs longer than
    ``max_len`` are never built, which bounds the recursion.
    """
    words = {w: lex.lookup(w) for w in lex.forms()}
    lexical = [s for signs in words.values() for s in signs]

    nps = [s for s in lexical if _major(s) == "n"]
    dets = [s for s in lexical if _major(s) == "det"]
    for d, n in itertools.product(dets, nps[:]):
        s = _try(apply_np_schema, d.copy(), n.copy())
        if s is not None and len(phon(s)) <= max_len:
            nps.append(s)
    nps = [s for s in nps if list_length(s.get(("SPR",))) == 0]

    verbs = {str(s): s for s in lexical if _major(s) == "v"}
    frontier = list(verbs.values())
    while frontier:
        new = []
        pool = list(verbs.values())
        for a, b in itertools.chain(itertools.product(frontier, pool), itertools.product(pool, frontier)):
            s = _try(apply_cluster_schema, a.copy(), b.copy(), mode)
            if s is not None and len(phon(s)) <= max_len and str(s) not in verbs:
                verbs[str(s)] = s
                new.append(s)
        frontier = new

    clauses = []
    for v in verbs.values():
        k = list_length(v.get((COMPS,)))
        if k is None:
            continue
        room = max_len - len(phon(v))
        if room < k + 1:
            continue
        for args in itertools.product(nps, repeat=k + 1):
            if sum(len(phon(a)) for a in args) > room:
                continue
            # repeated words must not share nodes
            args = [a.copy() for a in args]
            s = _try(apply_clause_schema, v, args[0], args[1:])
            if s is not None:
                clauses.append(s)

    out = {tuple(phon(c)) for c in clauses}
    comps = [s for s in lexical if _major(s) == "comp"]
    for k, c in itertools.product(comps, clauses):
        if len(phon(c)) + 1 <= max_len:
            s = _try(apply_cp_schema, k, c)
            if s is not None:
                out.add(tuple(phon(s)))
    return out
