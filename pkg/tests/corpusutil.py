"""Shared corpus of small groups and memoized poset/homology builders.

The property suites sweep the same posets from several angles; the caches
here make sure each poset and each homology profile is computed once per
pytest session no matter which test file asks first.
"""

from functools import lru_cache

from pq.catalog import build_group
from pq.complexes import order_complex
from pq.groups import generated_subgroup, subgroup_conjugacy_orbits
from pq.homology import homology
from pq.posets import all_p_subgroups_poset, bouc_poset, quillen_poset

Q8_SPEC = "Perm[(0 1 2 3)(4 5 6 7),(0 4 2 6)(1 7 3 5)]"

CORPUS = (
    "Sym(3)", "Sym(4)", "Sym(5)", "Sym(6)",
    "Alt(4)", "Alt(5)", "Alt(6)",
    "Dih(3)", "Dih(4)", "Dih(5)", "Dih(6)", "Dih(7)", "Dih(8)",
    "Dih(9)", "Dih(10)", "Dih(11)", "Dih(12)",
    "SL(2,3)", Q8_SPEC,
    "PSL(2,4)", "PSL(2,5)", "PSL(2,7)", "PSL(2,8)", "PSL(2,9)",
    "PSL(3,2)",
)

PRIMES = (2, 3, 5)

_POSET_FN = {
    "quillen": quillen_poset,
    "all": all_p_subgroups_poset,
    "bouc": bouc_poset,
}


@lru_cache(maxsize=None)
def group(spec):
    return build_group(spec)


def corpus_pairs():
    """(spec, p) with p dividing the group order."""
    out = []
    for spec in CORPUS:
        for p in PRIMES:
            if group(spec).order % p == 0:
                out.append((spec, p))
    return out


@lru_cache(maxsize=None)
def poset(spec, kind, p):
    return _POSET_FN[kind](group(spec), p)


@lru_cache(maxsize=None)
def complex_of(spec, kind, p):
    return order_complex(poset(spec, kind, p))


@lru_cache(maxsize=None)
def profile(spec, kind, p):
    return homology(complex_of(spec, kind, p))


@lru_cache(maxsize=None)
def order_p_class_reps(spec, p):
    """One representative subgroup of order p per conjugacy class."""
    g = group(spec)
    root = g.root
    seen = {}
    for i, o in zip(g.indices, g.element_orders()):
        if o == p:
            h = root.subgroup(root.closure([int(i)]), (int(i),))
            seen.setdefault(h.key_bytes, h)
    subs = list(seen.values())
    if not subs:
        return ()
    orbits = subgroup_conjugacy_orbits(g, subs)
    return tuple(subs[orbit[0]] for orbit in orbits)


@lru_cache(maxsize=None)
def alternating_subgroup(spec):
    """The index-2 alternating subgroup of a Sym(n) corpus member."""
    g = group(spec)
    root = g.root
    # squares generate the alternating group in Sym(n), n >= 3
    squares = {int(root.mul(int(i), int(i))) for i in g.indices}
    squares.discard(int(root.identity))
    alt = generated_subgroup(root, sorted(squares))
    assert alt.order * 2 == g.order
    return alt
