"""Posets of p-subgroups and their Euler characteristics.

A Poset stores its strict order as a dense boolean reachability matrix, which
is fine at desk scale (every poset here has at most a few thousand elements).
Elements are canonically ordered by their label key (lexicographic on element
sets for subgroup labels), so Moebius recursion, orbit enumeration and reports
are deterministic.

The subgroup posets:
  quillen_poset        A_p(G), nontrivial elementary abelian p-subgroups
  all_p_subgroups      S_p(G), all nontrivial p-subgroups
  bouc_poset           B_p(G), radical subgroups: O_p(N_G(R)) = R
  mixed_poset          B_p(H) together with F_K(H), E < R iff C_R(E) != 1
"""

from functools import lru_cache

import numpy as np

from . import config
from .errors import PosetTooLarge
from .groups import (
    centralizer,
    is_normal_in,
    normalizer,
    p_core,
    sylow_subgroup,
)


class Poset:
    """Finite strict poset with optional conjugation action.

    labels: one label per element; for subgroup posets these are GroupHandles
    lt: (n, n) bool, lt[i, j] iff element i < element j (transitively closed)
    group: ambient GroupHandle acting by conjugation on the labels, or None
    """

    def __init__(self, labels, lt, group=None):
        self.labels = list(labels)
        self.lt = np.asarray(lt, dtype=bool)
        n = len(self.labels)
        assert self.lt.shape == (n, n)
        assert not self.lt.diagonal().any(), "order must be irreflexive"
        self.group = group
        self._key_index = None

    @property
    def n(self):
        return len(self.labels)

    def down(self, i):
        return np.flatnonzero(self.lt[:, i])

    def up(self, i):
        return np.flatnonzero(self.lt[i])

    def subposet(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        labels = [self.labels[int(i)] for i in indices]
        return Poset(labels, self.lt[np.ix_(indices, indices)])

    def key_index(self):
        if self._key_index is None:
            self._key_index = {lab.key_bytes: i for i, lab in enumerate(self.labels)}
        return self._key_index

    def conj_index_map(self, g):
        """Permutation of element indices induced by conjugation by root index g."""
        root = self.group.root
        cmap = root.conj_map(g)
        index = self.key_index()
        out = np.empty(self.n, dtype=np.int64)
        for i, lab in enumerate(self.labels):
            moved = np.sort(cmap[np.asarray(lab.indices)])
            out[i] = index[moved.astype(np.int32).tobytes()]
        return out

    def orbits(self):
        """Orbits of the attached group action, each sorted, reps first."""
        assert self.group is not None
        maps = [self.conj_index_map(int(g)) for g in self.group.gens]
        seen = np.zeros(self.n, dtype=bool)
        orbits = []
        for i in range(self.n):
            if seen[i]:
                continue
            orbit = {i}
            frontier = [i]
            while frontier:
                nxt = []
                for x in frontier:
                    for m in maps:
                        y = int(m[x])
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            orbit = sorted(orbit)
            for x in orbit:
                seen[x] = True
            orbits.append(orbit)
        return orbits

    def chain_count(self):
        """Number of nonempty chains, computed before any materialization."""
        order = np.argsort(self.lt.sum(axis=0), kind="stable")
        ending = [0] * self.n
        for i in order:
            i = int(i)
            below = np.flatnonzero(self.lt[:, i])
            ending[i] = 1 + sum(ending[int(j)] for j in below)
        return sum(ending)

    def height(self):
        """Length (element count) of the longest chain; 0 for the empty poset."""
        order = np.argsort(self.lt.sum(axis=0), kind="stable")
        h = [0] * self.n
        for i in order:
            i = int(i)
            below = np.flatnonzero(self.lt[:, i])
            h[i] = 1 + max((h[int(j)] for j in below), default=0)
        return max(h, default=0)


class MixedPoset(Poset):
    """B_p(H) extended by F_K(H): is_b_part marks the radical block."""

    def __init__(self, labels, lt, is_b_part, group=None):
        super().__init__(labels, lt, group=group)
        self.is_b_part = np.asarray(is_b_part, dtype=bool)


def euler_mobius(x):
    """Reduced Euler characteristic of the order complex, by Moebius recursion
    over the bounded extension. chi~ of the empty poset is -1."""
    order = np.argsort(x.lt.sum(axis=0), kind="stable")
    nu = [0] * x.n
    for i in order:
        i = int(i)
        below = np.flatnonzero(x.lt[:, i])
        nu[i] = -1 - sum(nu[int(j)] for j in below)
    return -1 - sum(nu)


def euler_orbit_formula(x):
    """chi~ via orbit representatives: -1 - sum over orbits of
    [G : Stab] * chi~(X_{<rep}). Needs the attached action."""
    total = -1
    for orbit in x.orbits():
        rep = orbit[0]
        below = euler_mobius(x.subposet(x.down(rep)))
        total -= len(orbit) * below
    return total


def core_reduce(x):
    """Remove beat points until none remain. An up beat point has a minimum in
    its strict up-set; a down beat point has a maximum in its strict down-set.
    Preserves the homotopy type of the order complex."""
    lt = x.lt.copy()
    alive = np.ones(x.n, dtype=bool)
    while True:
        live = np.flatnonzero(alive)
        if len(live) == 0:
            break
        m = lt[np.ix_(live, live)]
        mi = m.astype(np.int32)
        two_step = (mi @ mi) > 0  # y < z < x for some live z
        strict_cover = m & ~two_step
        down_counts = strict_cover.sum(axis=0)  # maximal elements below each x
        up_counts = strict_cover.sum(axis=1)    # minimal elements above each x
        down_sizes = m.sum(axis=0)
        up_sizes = m.sum(axis=1)
        beat = ((down_counts == 1) & (down_sizes > 0)) | ((up_counts == 1) & (up_sizes > 0))
        hits = np.flatnonzero(beat)
        if len(hits) == 0:
            break
        alive[live[int(hits[0])]] = False
    keep = np.flatnonzero(alive)
    labels = [x.labels[int(i)] for i in keep]
    return Poset(labels, lt[np.ix_(keep, keep)], group=None)


# -- subgroup enumeration ---------------------------------------------------------


def _mul_rows(root, lefts, right):
    """Indices of x*right for every x in lefts."""
    rows = root.elems[np.asarray(lefts)][:, root.elems[right]]
    return root.idx_rows(rows)


@lru_cache(maxsize=None)
def _subspace_coeff_sets(p, r):
    """All nonzero proper subspaces of F_p^r, each as a sorted tuple of
    coefficient-tuple ranks (rank = sum digit_i * p^(r-1-i), matching the span
    order above). Enumerated from reduced row echelon forms."""
    from itertools import combinations, product

    def vec_rank(v):
        out = 0
        for d in v:
            out = out * p + d
        return out

    subspaces = []
    for s in range(1, r):
        for pivots in combinations(range(r), s):
            free_pos = [
                (i, j)
                for i in range(s)
                for j in range(r)
                if j > pivots[i] and j not in pivots
            ]
            for values in product(range(p), repeat=len(free_pos)):
                rows = [[0] * r for _ in range(s)]
                for i in range(s):
                    rows[i][pivots[i]] = 1
                for (i, j), v in zip(free_pos, values):
                    rows[i][j] = v
                # span the row space
                vecs = {(0,) * r}
                for row in rows:
                    new = set()
                    for v in vecs:
                        for c in range(p):
                            new.add(tuple((a + c * b) % p for a, b in zip(v, row)))
                    vecs = new
                ranks = tuple(sorted(vec_rank(v) for v in vecs))
                subspaces.append(ranks)
    assert len(set(subspaces)) == len(subspaces)
    return tuple(subspaces)


def _sorted_handle(root, elem_indices, gens=None):
    elems = np.sort(np.asarray(elem_indices, dtype=np.int64))
    return root.subgroup(elems, gens=gens)


def quillen_poset(g, p, cap=None):
    """A_p(G): nontrivial elementary abelian p-subgroups under inclusion.

    Rank 1 comes from order-p elements; rank r+1 extends rank r by commuting
    order-p elements. Inclusions are read off by enumerating each member's
    proper subspaces against the master index.
    """
    cap = config.POSET_CAP if cap is None else cap
    root = g.root
    orders = root.orders()
    gidx = np.asarray(g.indices, dtype=np.int64)
    pelems = gidx[orders[gidx] == p]

    by_key = {}
    entries = []  # (key, elems_in_coeff_order, basis)

    def register(elems_coeff, basis):
        key = np.sort(elems_coeff).astype(np.int32).tobytes()
        if key in by_key:
            return False
        if len(entries) >= cap:
            raise PosetTooLarge(f"A_{p} poset exceeds cap {cap}")
        by_key[key] = len(entries)
        entries.append((key, elems_coeff, basis))
        return True

    # commuting masks among order-p elements
    m = len(pelems)
    commute = np.zeros((m, m), dtype=bool)
    pel_rows = root.elems[pelems]
    for i in range(m):
        xi = pelems[i]
        left = root.elems[xi][pel_rows]      # x_i composed after x_j
        right = pel_rows[:, root.elems[xi]]  # x_j composed after x_i
        commute[i] = (left == right).all(axis=1)
    pos_of = {int(x): i for i, x in enumerate(pelems)}

    seen_cyclic = set()
    level = []
    for x in pelems:
        x = int(x)
        if x in seen_cyclic:
            continue
        powers = [x]
        cur = x
        for _ in range(p - 2):
            cur = root.mul(cur, x)
            powers.append(cur)
        seen_cyclic.update(powers)
        elems_coeff = np.concatenate([[root.identity], powers])
        if register(elems_coeff, (min(powers),)):
            level.append(len(entries) - 1)

    while level:
        nxt = []
        for idx in level:
            key, elems_coeff, basis = entries[idx]
            mask = np.ones(m, dtype=bool)
            for b in basis:
                mask &= commute[pos_of[b]]
            members = set(int(e) for e in elems_coeff)
            for x in pelems[mask]:
                x = int(x)
                if x in members:
                    continue
                blocks = [elems_coeff]
                power = x
                for _ in range(p - 1):
                    blocks.append(_mul_rows(root, elems_coeff, power))
                    power = root.mul(power, x)
                bigger = np.stack(blocks[:p], axis=1).reshape(-1)
                if register(bigger, basis + (x,)):
                    nxt.append(len(entries) - 1)
        level = nxt

    return _poset_from_spans(root, g, p, entries, by_key)


def _poset_from_spans(root, g, p, entries, by_key):
    order = sorted(range(len(entries)), key=lambda i: tuple(np.sort(entries[i][1])))
    labels = []
    sorted_pos = {}
    for new_i, old_i in enumerate(order):
        key, elems_coeff, basis = entries[old_i]
        labels.append(_sorted_handle(root, elems_coeff, gens=tuple(int(b) for b in basis)))
        sorted_pos[key] = new_i

    n = len(labels)
    lt = np.zeros((n, n), dtype=bool)
    for new_i, old_i in enumerate(order):
        _, elems_coeff, basis = entries[old_i]
        r = len(basis)
        if r == 1:
            continue
        for coeff_ranks in _subspace_coeff_sets(p, r):
            sub = np.sort(elems_coeff[np.asarray(coeff_ranks)])
            j = sorted_pos[sub.astype(np.int32).tobytes()]
            lt[j, new_i] = True
    poset = Poset(labels, lt, group=g)
    poset._key_index = {lab.key_bytes: i for i, lab in enumerate(labels)}
    return poset


def _p_subgroups_of(ambient, p):
    """All nontrivial p-subgroups of the ambient handle, as sorted index arrays.
    Level k+1 subgroups come from level k via p-elements of the normalizer."""
    root = ambient.root
    orders = root.orders()
    aidx = np.asarray(ambient.indices, dtype=np.int64)
    pelems = aidx[orders[aidx] == p]

    found = {}

    def register(elem_array):
        key = elem_array.astype(np.int32).tobytes()
        if key in found:
            return None
        found[key] = elem_array
        return key

    seen_cyclic = set()
    level = []
    for x in pelems:
        x = int(x)
        if x in seen_cyclic:
            continue
        powers = [x]
        cur = x
        for _ in range(p - 2):
            cur = root.mul(cur, x)
            powers.append(cur)
        seen_cyclic.update(powers)
        elems = np.sort(np.concatenate([[root.identity], powers]))
        if register(elems) is not None:
            level.append(elems)

    while level:
        nxt = []
        for elems in level:
            sub = root.subgroup(elems)
            norm = normalizer(ambient, sub)
            nidx = np.asarray(norm.indices, dtype=np.int64)
            members = set(int(e) for e in elems)
            cands = nidx[(orders[nidx] % p == 0) & (orders[nidx] > 1)]
            for x in cands:
                x = int(x)
                if x in members:
                    continue
                if not _is_p_power_order(int(orders[x]), p):
                    continue
                xp = x
                for _ in range(p - 1):
                    xp = root.mul(xp, x)
                if xp not in members:
                    continue
                blocks = [elems]
                power = x
                for _ in range(p - 1):
                    blocks.append(_mul_rows(root, elems, power))
                    power = root.mul(power, x)
                bigger = np.sort(np.concatenate(blocks))
                assert len(set(bigger.tolist())) == p * len(elems)
                if register(bigger) is not None:
                    nxt.append(bigger)
        level = nxt
    return sorted(found.values(), key=lambda a: tuple(a))


def _is_p_power_order(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def _inclusion_poset(root, g, element_arrays):
    """Poset of subgroups (given as sorted index arrays) under inclusion."""
    arrays = sorted(element_arrays, key=lambda a: tuple(a))
    labels = [_sorted_handle(root, a) for a in arrays]
    sets = [frozenset(int(x) for x in a) for a in arrays]
    n = len(arrays)
    lt = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and len(sets[i]) < len(sets[j]) and sets[i] <= sets[j]:
                lt[i, j] = True
    poset = Poset(labels, lt, group=g)
    return poset


def all_p_subgroups_poset(g, p, cap=None):
    """S_p(G): all nontrivial p-subgroups under inclusion."""
    cap = config.POSET_CAP if cap is None else cap
    arrays = _p_subgroups_of(g, p)
    if len(arrays) > cap:
        raise PosetTooLarge(f"S_{p} poset exceeds cap {cap}")
    return _inclusion_poset(g.root, g, arrays)


def bouc_poset(g, p, cap=None):
    """B_p(G): radical p-subgroups, i.e. R with O_p(N_G(R)) = R.

    Representatives are found inside one Sylow subgroup (every p-subgroup is
    conjugate into it), then orbits are expanded by conjugation.
    """
    cap = config.POSET_CAP if cap is None else cap
    root = g.root
    syl = sylow_subgroup(g, p)
    if syl.is_trivial():
        return Poset([], np.zeros((0, 0), dtype=bool), group=g)

    radicals = {}
    for elems in _p_subgroups_of(syl, p):
        sub = root.subgroup(elems)
        norm = normalizer(g, sub)
        core = p_core(norm, p)
        if core.key_bytes == sub.key_bytes:
            radicals[elems.astype(np.int32).tobytes()] = elems

    # expand conjugation orbits
    gen_maps = [root.conj_map(int(x)) for x in g.gens]
    frontier = list(radicals.values())
    while frontier:
        nxt = []
        for elems in frontier:
            for cmap in gen_maps:
                moved = np.sort(cmap[elems])
                key = moved.astype(np.int32).tobytes()
                if key not in radicals:
                    radicals[key] = moved
                    nxt.append(moved)
        frontier = nxt
    if len(radicals) > cap:
        raise PosetTooLarge(f"B_{p} poset exceeds cap {cap}")
    return _inclusion_poset(root, g, list(radicals.values()))


# -- F-sets and the mixed poset -----------------------------------------------------


def f_sets(g, h, p):
    """F = members of A_p(G) meeting H trivially; F' = those with
    O_p(C_H(E)) = 1. H must be normal in G."""
    assert is_normal_in(h, g), "F-sets need H normal in G"
    apg = quillen_poset(g, p)
    hmask = h.member_mask()
    f = []
    f_prime = []
    for lab in apg.labels:
        elems = np.asarray(lab.indices)
        nontrivial = elems[elems != g.root.identity]
        if hmask[nontrivial].any():
            continue
        f.append(lab)
        cent = centralizer(h, lab)
        if p_core(cent, p).is_trivial():
            f_prime.append(lab)
    return f, f_prime


def mixed_poset(g, h, k, p):
    """B_p(H) together with F_K(H); E < R iff C_R(E) != 1, parts ordered by
    inclusion internally, and no relations from the B-part into the F-part."""
    assert k.contains(h)
    assert g.contains(k)
    root = g.root
    bp = bouc_poset(h, p)
    f, _ = f_sets(k, h, p)

    b_labels = list(bp.labels)
    f_labels = sorted(f, key=lambda lab: lab.key_tuple())
    labels = b_labels + f_labels
    nb, nf = len(b_labels), len(f_labels)
    n = nb + nf
    lt = np.zeros((n, n), dtype=bool)
    lt[:nb, :nb] = bp.lt
    fsets = [frozenset(int(x) for x in lab.indices) for lab in f_labels]
    for i in range(nf):
        for j in range(nf):
            if i != j and len(fsets[i]) < len(fsets[j]) and fsets[i] <= fsets[j]:
                lt[nb + i, nb + j] = True
    # E < R iff some nontrivial element of R centralizes E
    for fi, flab in enumerate(f_labels):
        e_elems = np.asarray(flab.indices, dtype=np.int64)
        e_rows = root.elems[e_elems]
        for bi, rlab in enumerate(b_labels):
            r_elems = np.asarray(rlab.indices, dtype=np.int64)
            r_elems = r_elems[r_elems != root.identity]
            r_rows = root.elems[r_elems]
            commutes = np.ones(len(r_elems), dtype=bool)
            for t in range(len(e_elems)):
                a = r_rows[:, root.elems[e_elems[t]]]
                b = e_rows[t][r_rows]
                commutes &= (a == b).all(axis=1)
            if commutes.any():
                lt[nb + fi, bi] = True
    is_b = np.zeros(n, dtype=bool)
    is_b[:nb] = True
    return MixedPoset(labels, lt, is_b, group=g)


def fixed_point_subposet(x, q):
    """Subposet of elements whose label subgroup is normalized by every
    element of Q (checked on generators)."""
    root = q.root
    keep = []
    maps = [root.conj_map(int(t)) for t in q.gens]
    for i, lab in enumerate(x.labels):
        elems = np.asarray(lab.indices)
        ok = True
        for cmap in maps:
            if not np.array_equal(np.sort(cmap[elems]), elems):
                ok = False
                break
        if ok:
            keep.append(i)
    return x.subposet(keep)
