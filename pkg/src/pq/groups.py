"""Finite permutation groups by explicit enumeration.

A PermGroup is a fully enumerated table of permutations (one ambient "root"
group per construction). All subgroups, centralizers, Sylow subgroups and so
on are GroupHandle objects: sorted arrays of indices into the root table. The
root's element list is sorted lexicographically by image tuple, so element
indices and every derived enumeration are deterministic.

No Schreier-Sims machinery: everything here deliberately works at the scale
where the whole group fits in memory, which is what exact downstream homology
needs anyway.
"""

from __future__ import annotations

from functools import reduce
from math import lcm

import numpy as np

from . import config
from .errors import CapExceeded
from .perms import Permutation


def _dtype_for_degree(degree: int):
    return np.uint8 if degree <= 255 else np.uint16


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class PermGroup:
    """Fully enumerated permutation group on {0..degree-1}.

    elems is an (order, degree) array whose rows are image tuples, sorted
    lexicographically. Rows are frozen; all mutation happens in fresh arrays.
    """

    def __init__(self, elems: np.ndarray, gen_rows: np.ndarray):
        order = np.lexsort(elems.T[::-1])
        elems = np.ascontiguousarray(elems[order])
        elems.setflags(write=False)
        self.elems = elems
        self.order = elems.shape[0]
        self.degree = elems.shape[1]
        self._rowbytes = elems.dtype.itemsize * self.degree
        buf = elems.tobytes()
        rb = self._rowbytes
        self._index = {buf[i * rb:(i + 1) * rb]: i for i in range(self.order)}
        self.identity = self.idx_row(np.arange(self.degree, dtype=elems.dtype))
        inv = np.empty(self.order, dtype=np.int32)
        # x -> x^-1 by scattering: inv_row[row[t]] = t, then look each row up
        scat = np.empty_like(elems)
        np.put_along_axis(
            scat, elems.astype(np.int64),
            np.broadcast_to(np.arange(self.degree, dtype=elems.dtype), elems.shape),
            axis=1,
        )
        inv[:] = self.idx_rows(scat)
        inv.setflags(write=False)
        self.inv = inv
        self.gens = tuple(int(i) for i in np.unique(self.idx_rows(gen_rows))) if len(gen_rows) else ()
        self._orders = None
        self._conj_maps: dict[int, np.ndarray] = {}

    # -- construction ------------------------------------------------------

    @staticmethod
    def generated(perms, cap: int | None = None) -> "PermGroup":
        """Enumerate <perms> by breadth-first closure under right multiplication."""
        cap = config.ELEMENT_CAP if cap is None else cap
        perms = [p.images if isinstance(p, Permutation) else tuple(p) for p in perms]
        if not perms:
            raise ValueError("need at least one permutation (use the identity)")
        degree = len(perms[0])
        if any(len(p) != degree for p in perms):
            raise ValueError("generators act on different degrees")
        dt = _dtype_for_degree(degree)
        gen_rows = np.array(perms, dtype=dt)
        ident = np.arange(degree, dtype=dt)
        seen = {ident.tobytes(): 0}
        rows = [ident]
        frontier = np.array([ident])
        while frontier.size:
            new = []
            for g in gen_rows:
                prod = frontier[:, g]  # (f*g)(x) = f(g(x))
                for r in prod:
                    key = r.tobytes()
                    if key not in seen:
                        seen[key] = len(seen)
                        new.append(r)
            if len(seen) > cap:
                raise CapExceeded(
                    f"group enumeration passed {cap} elements; raise the element cap"
                )
            frontier = np.array(new) if new else np.empty((0, degree), dtype=dt)
            rows.extend(new)
        return PermGroup(np.array(rows, dtype=dt), gen_rows)

    # -- row/index plumbing -------------------------------------------------

    def idx_row(self, row: np.ndarray) -> int:
        return self._index[np.ascontiguousarray(row).tobytes()]

    def idx_rows(self, rows: np.ndarray) -> np.ndarray:
        buf = np.ascontiguousarray(rows).tobytes()
        rb = self._rowbytes
        ix = self._index
        return np.fromiter(
            (ix[buf[i * rb:(i + 1) * rb]] for i in range(rows.shape[0])),
            dtype=np.int32, count=rows.shape[0],
        )

    def mul(self, i: int, j: int) -> int:
        return self.idx_row(self.elems[i][self.elems[j]])

    def conj(self, g: int, x: int) -> int:
        """Index of g x g^-1."""
        gi = self.elems[g]
        return self.idx_row(gi[self.elems[x][self.elems[self.inv[g]]]])

    def conj_map(self, g: int) -> np.ndarray:
        """Array c with c[x] = index of g x g^-1, cached per conjugator."""
        cached = self._conj_maps.get(g)
        if cached is None:
            ginv_row = self.elems[self.inv[g]]
            a = self.elems[:, ginv_row]            # x o g^-1
            b = np.take_along_axis(
                np.broadcast_to(self.elems[g], a.shape), a.astype(np.int64), axis=1
            )                                       # g o x o g^-1
            cached = self.idx_rows(b)
            cached.setflags(write=False)
            self._conj_maps[g] = cached
        return cached

    def orders(self) -> np.ndarray:
        """Element orders via cycle type; computed once."""
        if self._orders is None:
            out = np.empty(self.order, dtype=np.int64)
            deg = self.degree
            for i in range(self.order):
                row = self.elems[i]
                seen = np.zeros(deg, dtype=bool)
                o = 1
                for s in range(deg):
                    if seen[s]:
                        continue
                    length = 1
                    x = row[s]
                    seen[s] = True
                    while x != s:
                        seen[x] = True
                        x = row[x]
                        length += 1
                    o = lcm(o, length)
                out[i] = o
            out.setflags(write=False)
            self._orders = out
        return self._orders

    def perm(self, i: int) -> Permutation:
        return Permutation(self.elems[i])

    def closure(self, seed) -> np.ndarray:
        """Sorted indices of the subgroup generated by the seed indices."""
        seed = sorted({int(s) for s in seed})
        gens = [s for s in seed if s != self.identity]
        visited = np.zeros(self.order, dtype=bool)
        visited[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int32)
        gen_rows = [self.elems[g] for g in gens]
        while frontier.size:
            new_mask = np.zeros(self.order, dtype=bool)
            rows = self.elems[frontier]
            for g in gen_rows:
                prods = self.idx_rows(rows[:, g])
                fresh = prods[~visited[prods]]
                new_mask[fresh] = True
            new = np.nonzero(new_mask & ~visited)[0]
            visited |= new_mask
            frontier = new.astype(np.int32)
        return np.nonzero(visited)[0].astype(np.int32)

    def subgroup(self, indices, gens=None) -> "GroupHandle":
        return GroupHandle(self, indices, gens)

    def whole(self) -> "GroupHandle":
        return GroupHandle(self, np.arange(self.order, dtype=np.int32), self.gens)


class GroupHandle:
    """A subgroup of a root PermGroup, stored as a sorted index array.

    Handles are value objects: equality and hashing go through the element
    set. Catalog construction may attach tags and designated subgroups as
    plain attributes after creation.
    """

    def __init__(self, root: PermGroup, indices, gens=None):
        self.root = root
        arr = np.asarray(sorted({int(i) for i in indices}), dtype=np.int32)
        arr.setflags(write=False)
        self.indices = arr
        self._gens = tuple(int(g) for g in gens) if gens is not None else None
        self._member = None
        self.tags = None
        self.designated_h = None
        self.g_df = None
        self.witnesses = {}
        self.spec = None

    @property
    def order(self) -> int:
        return int(self.indices.size)

    @property
    def key_bytes(self) -> bytes:
        return self.indices.tobytes()

    def key_tuple(self) -> tuple[int, ...]:
        return tuple(int(i) for i in self.indices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHandle)
            and self.root is other.root
            and self.indices.size == other.indices.size
            and bool(np.all(self.indices == other.indices))
        )

    def __hash__(self) -> int:
        return hash((id(self.root), self.key_bytes))

    def __repr__(self) -> str:
        label = self.spec or "subgroup"
        return f"<{label}: order {self.order}, degree {self.root.degree}>"

    def member_mask(self) -> np.ndarray:
        if self._member is None:
            m = np.zeros(self.root.order, dtype=bool)
            m[self.indices] = True
            m.setflags(write=False)
            self._member = m
        return self._member

    def contains_index(self, i: int) -> bool:
        return bool(self.member_mask()[i])

    def contains(self, other: "GroupHandle") -> bool:
        return bool(np.all(self.member_mask()[other.indices]))

    @property
    def gens(self) -> tuple[int, ...]:
        """A generating set of indices (greedy smallest-index choice if unset)."""
        if self._gens is None:
            gens: list[int] = []
            have = np.zeros(self.root.order, dtype=bool)
            have[self.root.identity] = True
            for i in self.indices:
                if not have[i]:
                    gens.append(int(i))
                    have[self.root.closure(gens)] = True
            self._gens = tuple(gens)
        return self._gens

    def elements(self) -> list[Permutation]:
        return [self.root.perm(int(i)) for i in self.indices]

    def element_orders(self) -> np.ndarray:
        return self.root.orders()[self.indices]

    def is_trivial(self) -> bool:
        return self.order == 1


# -- basic operations -------------------------------------------------------


def _assert_lagrange(h: GroupHandle, parent_order: int):
    if parent_order % h.order:
        raise AssertionError(
            f"subgroup order {h.order} does not divide {parent_order}"
        )


def generated_subgroup(root: PermGroup, seed) -> GroupHandle:
    idx = root.closure(seed)
    gens = tuple(sorted({int(s) for s in seed} - {root.identity}))
    h = root.subgroup(idx, gens)
    _assert_lagrange(h, root.order)
    return h


def trivial_subgroup(root: PermGroup) -> GroupHandle:
    return root.subgroup([root.identity], ())


def centralizer(h: GroupHandle, target) -> GroupHandle:
    """Elements of h commuting with every generator of the target.

    target may be an element index, a GroupHandle, or an iterable of indices.
    """
    root = h.root
    if isinstance(target, GroupHandle):
        tgens = target.gens
    elif isinstance(target, (int, np.integer)):
        tgens = (int(target),)
    else:
        tgens = tuple(int(t) for t in target)
    rows = root.elems[h.indices]
    keep = np.ones(h.indices.size, dtype=bool)
    for t in tgens:
        timg = root.elems[t]
        xt = rows[:, timg]                       # x o t
        tx = np.take_along_axis(
            np.broadcast_to(timg, rows.shape), rows.astype(np.int64), axis=1
        )                                        # t o x
        keep &= np.all(xt == tx, axis=1)
    out = h.root.subgroup(h.indices[keep])
    _assert_lagrange(out, h.order)
    return out


def normalizer(h: GroupHandle, s: GroupHandle) -> GroupHandle:
    """Elements g of h with g s g^-1 = s, tested on generators of s."""
    root = h.root
    rows = root.elems[h.indices]
    inv_rows = root.elems[root.inv[h.indices]]
    member = s.member_mask()
    keep = np.ones(h.indices.size, dtype=bool)
    for t in s.gens:
        timg = root.elems[t]
        a = inv_rows[:, :]
        b = timg[a.astype(np.int64)]             # t o g^-1
        c = np.take_along_axis(rows, b.astype(np.int64), axis=1)   # g t g^-1
        keep &= member[root.idx_rows(c)]
    out = root.subgroup(h.indices[keep])
    _assert_lagrange(out, h.order)
    return out


def is_normal_in(s: GroupHandle, g: GroupHandle) -> bool:
    """Exact normality test: generators of g must stabilize s."""
    member = s.member_mask()
    for ggen in g.gens:
        cmap = g.root.conj_map(ggen)
        if not np.all(member[cmap[s.indices]]):
            return False
    return True


def first_p_element(h: GroupHandle, p: int) -> int | None:
    orders = h.element_orders()
    for i, o in zip(h.indices, orders):
        if o > 1 and is_p_power(int(o), p):
            return int(i)
    return None


def sylow_subgroup(h: GroupHandle, p: int) -> GroupHandle:
    """Deterministic Sylow p-subgroup by greedy normalizer growth.

    Start from the first p-element in enumeration order and repeatedly adjoin
    the first p-element of the current normalizer that falls outside; each
    step multiplies the order by p, so termination is Lagrange-checked.
    """
    target = p_part(h.order, p)
    if target == 1:
        return trivial_subgroup(h.root)
    x = first_p_element(h, p)
    part = generated_subgroup(h.root, [x])
    orders = h.root.orders()
    while part.order < target:
        n = normalizer(h, part)
        mask = ~part.member_mask()[n.indices]
        grown = False
        for i in n.indices[mask]:
            if is_p_power(int(orders[i]), p):
                part = generated_subgroup(h.root, list(part.gens) + [int(i)])
                grown = True
                break
        if not grown:
            raise AssertionError("normalizer growth stalled below full p-part")
    if part.order != target:
        raise AssertionError("Sylow construction overshot the p-part")
    return part


def subgroup_orbit(g: GroupHandle, s: GroupHandle) -> list[GroupHandle]:
    """All g-conjugates of s, BFS over generators, deterministic order."""
    root = g.root
    maps = [root.conj_map(x) for x in g.gens]
    start = s.indices
    seen = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        new = []
        for idxs in frontier:
            for m in maps:
                conj = np.sort(m[idxs]).astype(np.int32)
                key = conj.tobytes()
                if key not in seen:
                    seen[key] = conj
                    new.append(conj)
        frontier = new
    orbit = sorted(seen.values(), key=lambda a: a.tolist())
    return [root.subgroup(a) for a in orbit]


def p_core(h: GroupHandle, p: int) -> GroupHandle:
    """O_p(h): intersection of all Sylow p-subgroups."""
    s = sylow_subgroup(h, p)
    if s.is_trivial():
        return s
    core = s.indices
    root = h.root
    maps = [root.conj_map(x) for x in h.gens]
    seen = {s.indices.tobytes()}
    frontier = [s.indices]
    while frontier and core.size > 1:
        new = []
        for idxs in frontier:
            for m in maps:
                conj = np.sort(m[idxs]).astype(np.int32)
                key = conj.tobytes()
                if key not in seen:
                    seen.add(key)
                    new.append(conj)
                    core = np.intersect1d(core, conj, assume_unique=True)
        frontier = new
    out = root.subgroup(core)
    _assert_lagrange(out, h.order)
    return out


def o_p_prime(h: GroupHandle, p: int) -> GroupHandle:
    """O^{p'}(h): the subgroup generated by all p-elements of h."""
    orders = h.element_orders()
    pel = [int(i) for i, o in zip(h.indices, orders) if o > 1 and is_p_power(int(o), p)]
    if not pel:
        return trivial_subgroup(h.root)
    # greedy generating subset keeps the closure passes cheap
    gens: list[int] = []
    have = np.zeros(h.root.order, dtype=bool)
    have[h.root.identity] = True
    for i in pel:
        if not have[i]:
            gens.append(i)
            have[h.root.closure(gens)] = True
    out = h.root.subgroup(np.nonzero(have)[0], gens)
    _assert_lagrange(out, h.order)
    return out


def omega1(h: GroupHandle, p: int) -> GroupHandle:
    """Subgroup generated by the elements of order exactly p."""
    orders = h.element_orders()
    pel = [int(i) for i, o in zip(h.indices, orders) if o == p]
    if not pel:
        return trivial_subgroup(h.root)
    gens: list[int] = []
    have = np.zeros(h.root.order, dtype=bool)
    have[h.root.identity] = True
    for i in pel:
        if not have[i]:
            gens.append(i)
            have[h.root.closure(gens)] = True
    out = h.root.subgroup(np.nonzero(have)[0], gens)
    _assert_lagrange(out, h.order)
    return out


def subgroup_conjugacy_orbits(g: GroupHandle, subgroups) -> list[list[int]]:
    """Partition a conjugation-closed list of subgroups into g-orbits.

    Returns lists of positions into the input, each orbit sorted, orbits
    ordered by their least member key (the orbit representative).
    """
    subgroups = list(subgroups)
    pos = {s.key_bytes: i for i, s in enumerate(subgroups)}
    root = g.root
    maps = [root.conj_map(x) for x in g.gens]
    unassigned = set(range(len(subgroups)))
    orbits = []
    for i in range(len(subgroups)):
        if i not in unassigned:
            continue
        frontier = [subgroups[i].indices]
        members = {i}
        seen = {subgroups[i].key_bytes}
        while frontier:
            new = []
            for idxs in frontier:
                for m in maps:
                    conj = np.sort(m[idxs]).astype(np.int32)
                    key = conj.tobytes()
                    if key not in seen:
                        seen.add(key)
                        new.append(conj)
                        j = pos.get(key)
                        if j is None:
                            raise ValueError(
                                "input list is not closed under conjugation"
                            )
                        members.add(j)
            frontier = new
        unassigned -= members
        orbits.append(sorted(members))
    orbits.sort(key=lambda ms: subgroups[ms[0]].key_tuple())
    return orbits


def is_self_centralising(g: GroupHandle, h: GroupHandle) -> bool:
    """True iff C_g(h) <= h."""
    return h.contains(centralizer(g, h))


def intersection(a: GroupHandle, b: GroupHandle) -> GroupHandle:
    if a.root is not b.root:
        raise ValueError("handles live in different root groups")
    return a.root.subgroup(np.intersect1d(a.indices, b.indices, assume_unique=True))
