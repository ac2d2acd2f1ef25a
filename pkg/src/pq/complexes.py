"""Abstract simplicial complexes with labeled vertices.

Simplices are stored per dimension as lexicographically sorted tuples of
vertex indices, so every derived object (boundary matrix, link, subcomplex)
is deterministic. Downward closure is a constructor invariant.
"""

import numpy as np

from . import config
from .errors import MatrixTooLarge


class SimplicialComplex:
    def __init__(self, labels, simplices_by_dim):
        """labels: vertex labels, index = position. simplices_by_dim: dict or
        list mapping dimension d to an iterable of sorted (d+1)-tuples of
        vertex indices. Closure and dedup are validated here."""
        self.labels = list(labels)
        if len(set(self._label_key(lab) for lab in self.labels)) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        if isinstance(simplices_by_dim, dict):
            items = simplices_by_dim.items()
        else:
            items = enumerate(simplices_by_dim)
        by_dim = {}
        for d, simps in items:
            simps = sorted(set(tuple(s) for s in simps))
            if not simps:
                continue
            for s in simps:
                assert len(s) == d + 1, f"simplex {s} is not {d}-dimensional"
                assert all(s[i] < s[i + 1] for i in range(len(s) - 1)), (
                    f"simplex {s} is not a sorted vertex tuple"
                )
                assert 0 <= s[0] and s[-1] < len(self.labels)
            by_dim[d] = simps
        self.simplices = {d: by_dim[d] for d in sorted(by_dim)}
        self._pos = {
            d: {s: i for i, s in enumerate(simps)}
            for d, simps in self.simplices.items()
        }
        # every vertex used by a simplex must be a declared 0-simplex, and
        # every face of every simplex must be present
        for d, simps in self.simplices.items():
            if d == 0:
                continue
            below = self._pos.get(d - 1, {})
            for s in simps:
                for k in range(len(s)):
                    face = s[:k] + s[k + 1:]
                    assert face in below, f"missing face {face} of {s}"

    @staticmethod
    def _label_key(lab):
        key_tuple = getattr(lab, "key_tuple", None)
        if key_tuple is not None:
            return ("handle", id(lab.root), key_tuple())
        return ("plain", lab)

    @classmethod
    def from_maximal(cls, labels, facets):
        """Build the downward closure of the given simplices (vertex-index
        tuples in any order); isolated vertices must appear as 1-tuples."""
        by_dim = {}
        seen = set()
        stack = [tuple(sorted(set(f))) for f in facets]
        while stack:
            s = stack.pop()
            if not s or s in seen:
                continue
            seen.add(s)
            by_dim.setdefault(len(s) - 1, set()).add(s)
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                if face and face not in seen:
                    stack.append(face)
        return cls(labels, {d: sorted(v) for d, v in by_dim.items()})

    # -- basics -------------------------------------------------------------

    @property
    def dim(self):
        return max(self.simplices, default=-1)

    def f_vector(self):
        """Simplex counts by dimension, 0..dim."""
        return [len(self.simplices.get(d, ())) for d in range(self.dim + 1)]

    def total_simplices(self):
        return sum(len(v) for v in self.simplices.values())

    def euler_reduced(self):
        return -1 + sum((-1) ** d * len(s) for d, s in self.simplices.items())

    def is_empty(self):
        return not self.simplices

    def has_simplex(self, s):
        s = tuple(sorted(s))
        return s in self._pos.get(len(s) - 1, {})

    def index_of_label(self, lab):
        key = self._label_key(lab)
        for i, mine in enumerate(self.labels):
            if self._label_key(mine) == key:
                return i
        raise KeyError(f"no vertex labeled {lab!r}")

    def label_simplices(self):
        """Set of simplices as frozensets of labels; basis for combinatorial
        equality that ignores vertex numbering."""
        out = set()
        for simps in self.simplices.values():
            for s in simps:
                out.add(frozenset(self._label_key(self.labels[v]) for v in s))
        return out

    def relabel(self, perm):
        """New complex with vertex i renamed to perm[i] (a permutation list);
        same labels attached to the moved indices."""
        perm = list(perm)
        assert sorted(perm) == list(range(len(self.labels)))
        labels = [None] * len(self.labels)
        for i, p in enumerate(perm):
            labels[p] = self.labels[i]
        by_dim = {
            d: [tuple(sorted(perm[v] for v in s)) for s in simps]
            for d, simps in self.simplices.items()
        }
        return SimplicialComplex(labels, by_dim)

    # -- subcomplexes -------------------------------------------------------

    def _restrict(self, keep_vertices):
        keep = sorted(set(int(v) for v in keep_vertices))
        remap = {v: i for i, v in enumerate(keep)}
        keepset = set(keep)
        by_dim = {}
        for d, simps in self.simplices.items():
            kept = [
                tuple(remap[v] for v in s)
                for s in simps
                if all(v in keepset for v in s)
            ]
            if kept:
                by_dim[d] = kept
        return SimplicialComplex([self.labels[v] for v in keep], by_dim)

    def full_subcomplex(self, vertices):
        """Simplices supported entirely on the given vertex indices."""
        return self._restrict(vertices)

    def complement_subcomplex(self, vertices):
        """Full subcomplex on the vertices NOT in the given set."""
        drop = set(int(v) for v in vertices)
        return self._restrict([v for v in range(len(self.labels)) if v not in drop])

    def link(self, sigma):
        """Lk(sigma) = {tau : tau ∪ sigma in K, tau ∩ sigma = ∅}, as a complex
        on the vertices that appear."""
        sigma = tuple(sorted(set(int(v) for v in sigma)))
        assert self.has_simplex(sigma) or sigma == ()
        sset = set(sigma)
        taus = []
        for d, simps in self.simplices.items():
            if d + 1 <= len(sigma):
                continue
            for s in simps:
                if sset.issubset(s):
                    taus.append(tuple(v for v in s if v not in sset))
        verts = sorted(set(v for t in taus for v in t))
        remap = {v: i for i, v in enumerate(verts)}
        by_dim = {}
        for t in taus:
            by_dim.setdefault(len(t) - 1, []).append(tuple(remap[v] for v in t))
        return SimplicialComplex([self.labels[v] for v in verts], by_dim)

    def star(self, sigma):
        """St(sigma): all simplices s with s ∪ sigma in K."""
        sigma = tuple(sorted(set(int(v) for v in sigma)))
        sset = set(sigma)
        members = set()
        for d, simps in self.simplices.items():
            if d + 1 <= len(sigma):
                continue
            for s in simps:
                if sset.issubset(s):
                    members.add(s)
        # faces of collected simplices complete the star
        verts = sorted(set(v for s in members for v in s) | sset)
        if not members and not sigma:
            return SimplicialComplex([], {})
        remap = {v: i for i, v in enumerate(verts)}
        facets = [tuple(remap[v] for v in s) for s in members] or [
            tuple(remap[v] for v in sigma)
        ]
        return SimplicialComplex.from_maximal([self.labels[v] for v in verts], facets)


def order_complex(x, cap=None):
    """Chains of the poset as simplices; poset element order gives the vertex
    order. The chain count is checked against the cap before materializing."""
    cap = config.SIMPLEX_CAP if cap is None else cap
    count = x.chain_count()
    if count > cap:
        raise MatrixTooLarge(f"order complex needs {count} simplices, cap is {cap}")
    up_lists = [np.flatnonzero(x.lt[i]).tolist() for i in range(x.n)]
    by_dim = {}
    stack = [(i,) for i in reversed(range(x.n))]
    while stack:
        chain = stack.pop()
        simplex = tuple(sorted(chain))
        by_dim.setdefault(len(chain) - 1, []).append(simplex)
        for j in up_lists[chain[-1]]:
            stack.append(chain + (j,))
    return SimplicialComplex(list(x.labels), by_dim)


def join(k1, k2):
    """Simplicial join: all unions of a (possibly empty) simplex of each."""
    n1 = len(k1.labels)
    labels = list(k1.labels) + list(k2.labels)
    left = [()] + [s for simps in k1.simplices.values() for s in simps]
    right = [()] + [tuple(n1 + v for v in s) for simps in k2.simplices.values() for s in simps]
    by_dim = {}
    for a in left:
        for b in right:
            s = a + b
            if s:
                by_dim.setdefault(len(s) - 1, []).append(s)
    return SimplicialComplex(labels, by_dim)


def extend_complex(base, extensions):
    """The extended complex: one new vertex per (label, predicate) pair, where
    the predicate picks out the fixed subcomplex by simplex labels. The new
    vertex E is joined onto exactly the marked simplices, so Lk(E) recovers
    the marked subcomplex.

    predicate: callable on a tuple of vertex labels, True iff that simplex is
    fixed. The marked set must be closed downward (asserted)."""
    nb = len(base.labels)
    labels = list(base.labels)
    by_dim = {d: list(simps) for d, simps in base.simplices.items()}
    for offset, (elab, predicate) in enumerate(extensions):
        enew = nb + offset
        labels.append(elab)
        marked = set()
        for d, simps in base.simplices.items():
            for s in simps:
                if predicate(tuple(base.labels[v] for v in s)):
                    marked.add(s)
        for s in marked:
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                if face:
                    assert face in marked, (
                        f"fixed set not closed: {face} missing under {s}"
                    )
        by_dim.setdefault(0, []).append((enew,))
        for s in marked:
            by_dim.setdefault(len(s), []).append(s + (enew,))
    return SimplicialComplex(labels, by_dim)
