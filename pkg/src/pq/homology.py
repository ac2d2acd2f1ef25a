"""Reduced integral homology of simplicial complexes via Smith normal form.

Boundary matrices are assembled exactly and reduced with the sparse SNF
engine; reduced homology is reported including degree -1, so the empty
complex has a single unit of homology there and every nonempty complex has
none. Profiles are normalized (only nonzero entries kept), which makes
equality checks meaningful across complexes of different dimensions.
"""

from dataclasses import dataclass

from . import config
from .errors import MatrixTooLarge
from .smith import SmithResult, smith_normal_form


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology, normalized.

    betti: tuple of (degree, rank) pairs with rank > 0, ascending degree.
    torsion: tuple of (degree, factors) pairs with nonempty factors, each
    factors a tuple of invariant coefficients > 1 in divisibility order.
    """

    betti: tuple
    torsion: tuple

    def betti_number(self, d):
        for deg, r in self.betti:
            if deg == d:
                return r
        return 0

    def torsion_at(self, d):
        for deg, t in self.torsion:
            if deg == d:
                return t
        return ()

    def euler_reduced(self):
        return sum((-1) ** d * r for d, r in self.betti)

    def is_zero(self):
        return not self.betti and not self.torsion

    def top_degree(self):
        """Largest degree carrying any homology; None if there is none."""
        degs = [d for d, _ in self.betti] + [d for d, _ in self.torsion]
        return max(degs) if degs else None


def boundary_entries(k, d):
    """Entries of the boundary map C_d -> C_{d-1} in the augmented chain
    complex. d = 0 gives the augmentation row (single row, index 0)."""
    assert d >= 0
    if d == 0:
        return [(0, j, 1) for j in range(len(k.simplices.get(0, ())))]
    faces = k._pos.get(d - 1, {})
    out = []
    for j, s in enumerate(k.simplices.get(d, ())):
        for i in range(d + 1):
            face = s[:i] + s[i + 1 :]
            out.append((faces[face], j, (-1) ** i))
    return out


def homology(k, cap=None):
    """HomologyProfile of the reduced (augmented) chain complex of k."""
    cap = config.SIMPLEX_CAP if cap is None else cap
    total = k.total_simplices()
    if total > cap:
        raise MatrixTooLarge(
            f"complex has {total} simplices, over the cap of {cap}"
        )
    if k.is_empty():
        return HomologyProfile(betti=((-1, 1),), torsion=())
    dim = k.dim
    f = {d: len(k.simplices.get(d, ())) for d in range(-1, dim + 1)}
    f[-1] = 1
    results = {}
    for d in range(0, dim + 1):
        nrows = f[d - 1]
        ncols = f[d]
        results[d] = smith_normal_form(boundary_entries(k, d), nrows, ncols)
    results[dim + 1] = SmithResult(rank=0, torsion=())
    _assert_boundary_squares_to_zero(k)
    betti = []
    torsion = []
    for d in range(-1, dim + 1):
        rank_d = results[d].rank if d >= 0 else 0
        rank_up = results[d + 1].rank
        b = f[d] - rank_d - rank_up
        assert b >= 0
        if b:
            betti.append((d, b))
        t = results[d + 1].torsion
        if t:
            torsion.append((d, t))
    prof = HomologyProfile(betti=tuple(betti), torsion=tuple(torsion))
    assert prof.euler_reduced() == k.euler_reduced()
    return prof


def _assert_boundary_squares_to_zero(k):
    # composite of consecutive boundary maps on each basis chain
    for d in range(1, k.dim + 1):
        faces = k._pos.get(d - 1, {})
        grandfaces = k._pos.get(d - 2, {}) if d >= 2 else {0: 0}
        for s in k.simplices.get(d, ()):
            acc = {}
            for i in range(d + 1):
                face = s[:i] + s[i + 1 :]
                assert face in faces
                si = (-1) ** i
                if d == 1:
                    acc[0] = acc.get(0, 0) + si
                else:
                    for j in range(d):
                        gf = face[:j] + face[j + 1 :]
                        acc[gf] = acc.get(gf, 0) + si * (-1) ** j
            assert all(v == 0 for v in acc.values())


def is_homology_spherical(k, d, profile=None):
    """True when k is d-dimensional with the reduced homology of a wedge of
    d-spheres: torsion-free and concentrated in degree d. Rank 0 is allowed,
    so a contractible d-complex passes. The empty complex is spherical of
    dimension -1 and nothing else is."""
    if k.is_empty():
        return d == -1
    if k.dim != d:
        return False
    if profile is None:
        profile = homology(k)
    if profile.torsion:
        return False
    return all(deg == d for deg, _ in profile.betti)


def is_cohen_macaulay(k):
    """Homology-level Cohen-Macaulay test: the link of every simplex,
    including the empty one, has reduced homology only in degree
    dim(k) - |sigma|. Returns (ok, witness) where witness is None or the
    label tuple of the first failing simplex."""
    if k.is_empty():
        return True, None
    n = k.dim
    for sigma in _all_simplices_with_empty(k):
        lk = k.link(sigma)
        need = n - len(sigma)
        prof = homology(lk)
        bad = prof.torsion or any(deg != need for deg, _ in prof.betti)
        if lk.dim != need and not lk.is_empty():
            # links of lower dimension than required cannot carry degree-need
            # homology, but a CM complex must also be pure; flag them
            bad = True
        if bad:
            return False, tuple(k.labels[v] for v in sigma)
    return True, None


def _all_simplices_with_empty(k):
    yield ()
    for d in sorted(k.simplices):
        for s in k.simplices[d]:
            yield s


def mv_rank_identity_check(k, l_vertices):
    """Check the rank bookkeeping for K built from the full subcomplex L on
    l_vertices by coning the remaining vertices over their links.

    Preconditions (asserted): the removed vertex set V is independent in K
    (no edge of K joins two vertices of V), so K = L with, for each v in V,
    the star of v glued along Lk(v), and every Lk(v) lies in L.

    When every link's homology sits strictly below the top homology degree
    of L, the gluing maps cannot interfere and the direct-sum identity
    rank_m(K) = rank_m(L) + sum_v rank_{m-1}(Lk(v)) is checked per degree.
    Otherwise only the alternating consequence
    chi~(K) = chi~(L) - sum_v chi~(Lk(v)) is checked; that identity is a
    simplex count and holds for any such decomposition.

    Returns a dict report with mode "direct-sum" or "euler-only" and ok."""
    l_set = set(l_vertices)
    v_set = [v for v in range(len(k.labels)) if v not in l_set]
    v_lookup = set(v_set)
    for a, b in k.simplices.get(1, ()):
        assert not (a in v_lookup and b in v_lookup), (
            "removed vertices must form an independent set"
        )
    l_sub = k.full_subcomplex(sorted(l_set))
    links = [k.link((v,)) for v in v_set]
    l_keys = {k._label_key(k.labels[i]) for i in l_set}
    for lk in links:
        for lab in lk.labels:
            assert k._label_key(lab) in l_keys, "links must lie inside L"
    prof_k = homology(k)
    prof_l = homology(l_sub)
    link_profs = [homology(lk) for lk in links]
    top = prof_l.top_degree()
    strong = all(
        lp.top_degree() is None or (top is not None and lp.top_degree() < top)
        for lp in link_profs
    )
    euler_lhs = prof_k.euler_reduced()
    euler_rhs = prof_l.euler_reduced() - sum(
        lp.euler_reduced() for lp in link_profs
    )
    report = {
        "removed_vertices": [k.labels[v] for v in v_set],
        "euler_lhs": euler_lhs,
        "euler_rhs": euler_rhs,
    }
    if strong:
        degrees = sorted(
            {d for d, _ in prof_k.betti}
            | {d for d, _ in prof_l.betti}
            | {d + 1 for lp in link_profs for d, _ in lp.betti}
        )
        per_degree = {}
        ok = True
        for m in degrees:
            lhs = prof_k.betti_number(m)
            rhs = prof_l.betti_number(m) + sum(
                lp.betti_number(m - 1) for lp in link_profs
            )
            per_degree[m] = (lhs, rhs)
            if lhs != rhs:
                ok = False
        report["mode"] = "direct-sum"
        report["per_degree"] = per_degree
        report["ok"] = ok and euler_lhs == euler_rhs
    else:
        report["mode"] = "euler-only"
        report["ok"] = euler_lhs == euler_rhs
    return report
