"""Simplicial complex layer: construction, subcomplexes, links and stars,
order complexes, joins, and vertex extensions."""

import pytest

from pq.catalog import build_group
from pq.complexes import (
    SimplicialComplex,
    extend_complex,
    join,
    order_complex,
)
from pq.errors import MatrixTooLarge
from pq.posets import Poset, quillen_poset
import numpy as np


def hollow_triangle():
    return SimplicialComplex(
        ["a", "b", "c"], {0: [(0,), (1,), (2,)], 1: [(0, 1), (0, 2), (1, 2)]}
    )


def filled_triangle():
    return SimplicialComplex.from_maximal(["a", "b", "c"], [(0, 1, 2)])


def chain_poset(n):
    lt = np.zeros((n, n), dtype=bool)
    for i in range(n):
        lt[i, i + 1 :] = True
    return Poset(list(range(n)), lt)


def antichain_poset(n):
    return Poset(list(range(n)), np.zeros((n, n), dtype=bool))


# -- construction -------------------------------------------------------------


def test_from_maximal_closes_downward():
    k = filled_triangle()
    assert k.f_vector() == [3, 3, 1]
    assert k.dim == 2
    assert k.total_simplices() == 7
    assert k.euler_reduced() == 0


def test_missing_face_rejected():
    with pytest.raises(AssertionError):
        SimplicialComplex(["a", "b"], {1: [(0, 1)]})


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        SimplicialComplex(["a", "a"], {0: [(0,), (1,)]})


def test_empty_complex():
    k = SimplicialComplex([], {})
    assert k.is_empty()
    assert k.dim == -1
    assert k.euler_reduced() == -1


def test_has_simplex_any_order():
    k = filled_triangle()
    assert k.has_simplex((2, 0, 1))
    assert not k.has_simplex((0, 3))


def test_isolated_vertex_via_from_maximal():
    k = SimplicialComplex.from_maximal(["a", "b", "c"], [(0, 1), (2,)])
    assert k.f_vector() == [3, 1]


# -- subcomplexes, links, stars ----------------------------------------------


def test_full_subcomplex_of_triangle():
    k = filled_triangle()
    sub = k.full_subcomplex([0, 1])
    assert sub.f_vector() == [2, 1]
    assert sub.labels == ["a", "b"]


def test_complement_subcomplex():
    k = filled_triangle()
    sub = k.complement_subcomplex([2])
    assert sub.labels == ["a", "b"]
    assert sub.f_vector() == [2, 1]


def test_link_of_vertex_in_filled_triangle():
    lk = filled_triangle().link((0,))
    assert lk.labels == ["b", "c"]
    assert lk.f_vector() == [2, 1]


def test_link_of_edge_is_point():
    lk = filled_triangle().link((0, 1))
    assert lk.labels == ["c"]
    assert lk.f_vector() == [1]


def test_link_of_facet_is_empty():
    assert filled_triangle().link((0, 1, 2)).is_empty()


def test_link_of_empty_simplex_is_whole_complex():
    k = hollow_triangle()
    assert k.link(()).label_simplices() == k.label_simplices()


def test_link_requires_membership():
    with pytest.raises(AssertionError):
        hollow_triangle().link((0, 1, 2))


def test_star_contains_closure():
    k = hollow_triangle()
    st = k.star((0,))
    # star of a vertex in the circle: the two incident edges and their faces
    assert st.label_simplices() == {
        frozenset([("plain", "a")]),
        frozenset([("plain", "b")]),
        frozenset([("plain", "c")]),
        frozenset([("plain", "a"), ("plain", "b")]),
        frozenset([("plain", "a"), ("plain", "c")]),
    }


def test_star_of_empty_simplex_is_whole():
    k = filled_triangle()
    assert k.star(()).label_simplices() == k.label_simplices()


def test_star_of_maximal_simplex_is_its_closure():
    k = hollow_triangle()
    st = k.star((0, 1))
    assert st.label_simplices() == {
        frozenset([("plain", "a")]),
        frozenset([("plain", "b")]),
        frozenset([("plain", "a"), ("plain", "b")]),
    }


def test_star_brute_force_identity():
    # St(sigma) = closure of every simplex whose union with sigma is present
    k = SimplicialComplex.from_maximal(
        list("abcde"), [(0, 1, 2), (1, 2, 3), (3, 4)]
    )
    for sigma in [(1,), (1, 2), (3,), (4,)]:
        st = k.star(sigma)
        expect = set()
        for simps in k.simplices.values():
            for s in simps:
                if k.has_simplex(tuple(set(s) | set(sigma))):
                    expect.add(frozenset(("plain", k.labels[v]) for v in s))
        assert st.label_simplices() == expect


def test_relabel_preserves_label_simplices():
    k = SimplicialComplex.from_maximal(list("abcd"), [(0, 1, 2), (2, 3)])
    moved = k.relabel([2, 0, 3, 1])
    assert moved.label_simplices() == k.label_simplices()
    assert moved.labels != k.labels


# -- order complexes ----------------------------------------------------------


def test_order_complex_of_chain_is_full_simplex():
    k = order_complex(chain_poset(4))
    assert k.dim == 3
    assert k.f_vector() == [4, 6, 4, 1]
    assert k.has_simplex((0, 1, 2, 3))


def test_order_complex_of_antichain_is_points():
    k = order_complex(antichain_poset(5))
    assert k.f_vector() == [5]


def test_order_complex_of_empty_poset():
    assert order_complex(antichain_poset(0)).is_empty()


def test_order_complex_quillen_alt5():
    x = quillen_poset(build_group("Alt(5)"), 2)
    k = order_complex(x)
    assert k.f_vector() == [20, 15]
    assert k.euler_reduced() == 4
    # vertex order matches poset element order
    assert list(k.labels) == list(x.labels)


def test_order_complex_cap():
    with pytest.raises(MatrixTooLarge):
        order_complex(chain_poset(8), cap=100)


# -- joins ---------------------------------------------------------------------


def two_points(names):
    return SimplicialComplex(list(names), {0: [(0,), (1,)]})


def test_join_of_two_spheres_zero():
    # S0 * S0 is the square, a circle
    k = join(two_points("ab"), two_points("cd"))
    assert k.f_vector() == [4, 4]
    assert k.euler_reduced() == -1


def test_join_point_is_cone():
    base = hollow_triangle()
    cone = join(SimplicialComplex(["apex"], {0: [(0,)]}), base)
    assert cone.total_simplices() == 2 * base.total_simplices() + 1
    assert cone.euler_reduced() == 0


def test_join_with_empty_is_identity():
    base = filled_triangle()
    k = join(base, SimplicialComplex([], {}))
    assert k.label_simplices() == base.label_simplices()


def test_join_euler_product_rule():
    # reduced Euler characteristic is multiplicative up to sign for joins
    def cases(alphabet):
        a, b, c = alphabet
        return [
            two_points(alphabet[:2]),
            SimplicialComplex.from_maximal([a, b, c], [(0, 1), (0, 2), (1, 2)]),
            SimplicialComplex.from_maximal([a, b, c], [(0, 1, 2)]),
            SimplicialComplex.from_maximal([a, b, c], [(0, 1), (2,)]),
        ]

    for k1 in cases("abc"):
        for k2 in cases("xyz"):
            j = join(k1, k2)
            assert j.euler_reduced() == -k1.euler_reduced() * k2.euler_reduced()


# -- extensions ----------------------------------------------------------------


def test_extend_complex_cone_via_true_predicate():
    base = hollow_triangle()
    k = extend_complex(base, [("apex", lambda labs: True)])
    assert k.dim == 2
    assert len(k.labels) == 4
    assert k.euler_reduced() == 0
    lk = k.link((3,))
    assert lk.label_simplices() == base.label_simplices()


def test_extend_complex_empty_extension_list():
    base = filled_triangle()
    k = extend_complex(base, [])
    assert k.label_simplices() == base.label_simplices()


def test_extend_complex_link_is_marked_subcomplex():
    # predicate factoring through vertices marks a full subcomplex
    base = SimplicialComplex.from_maximal(list("abcd"), [(0, 1, 2), (2, 3)])
    keep = {"a", "b", "c"}
    k = extend_complex(
        base, [("E", lambda labs: all(l in keep for l in labs))]
    )
    lk = k.link((k.index_of_label("E"),))
    assert lk.label_simplices() == base.full_subcomplex([0, 1, 2]).label_simplices()


def test_extend_complex_two_stages_see_earlier_vertices():
    base = two_points("ab")
    first = extend_complex(base, [("E1", lambda labs: "a" in labs)])
    second = extend_complex(first, [("E2", lambda labs: "b" not in labs)])
    # E2 cones over a and over E1's edge with a
    assert second.has_simplex((0, 2, 3))
    assert not second.has_simplex((1, 3))


def test_extend_complex_rejects_non_closed_marking():
    base = filled_triangle()
    with pytest.raises(AssertionError):
        extend_complex(base, [("E", lambda labs: len(labs) == 3)])
