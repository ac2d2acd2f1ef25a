"""Group catalog: constructors, the spec-string grammar, and Lie-type tags.

A group is named by a spec string like "Sym(5)", "PSL(3,4):frob(1):graph" or
"Perm[(0 1 2 3)(4 5 6 7),(0 4 2 6)(1 7 3 5)]". Matrix groups act on projective
points, or on points plus hyperplanes when a graph extension is requested;
SL and Sp act on nonzero vectors so the action stays faithful when the center
is nontrivial.

Lie-type membership is a tag assigned here, never inferred from structure.
Tags carry (family, twisting degree, field size, rank) per characteristic;
well-known permutation-group coincidences (Sym(6) as the rank-2 symplectic
group over GF(2), and so on) are pre-tagged.
"""

import re
from dataclasses import dataclass
from math import factorial

import numpy as np

from .config import ACTION_CAP
from .errors import (
    ActionNotDoubled,
    ActionTooLarge,
    NotAMatrixGroup,
    UnknownName,
    UnsupportedSpec,
)
from .gf import gf, mat_identity, mat_inv, mat_mul, prime_power
from .groups import PermGroup, generated_subgroup, p_part
from .perms import Permutation, parse_cycle_string


@dataclass(frozen=True)
class LieTag:
    family: str  # "A1", "A2", "C2", "2G2", ...
    d: int       # twisting degree
    q: int       # field size
    rank: int    # longest chain length in the radical poset

    @property
    def characteristic(self):
        return prime_power(self.q)[0]


@dataclass(frozen=True)
class GroupSpec:
    base: str
    params: tuple
    exts: tuple = ()

    def __str__(self):
        if self.base == "Perm":
            head = "Perm[" + ",".join(self.params) + "]"
        else:
            head = f"{self.base}({','.join(str(x) for x in self.params)})"
        parts = [head]
        for ext in self.exts:
            if ext[0] == "frob":
                parts.append(f"frob({ext[1]})")
            elif ext[0] == "graph":
                parts.append("graph")
            else:
                parts.append(f"sub({ext[1]})")
        return ":".join(parts)


_ONE_PARAM = re.compile(r"^(Sym|Alt|Cyc|Dih)\((\d+)\)$")
_TWO_PARAM = re.compile(r"^(SL|PSL|PGL|Sp|PSigmaL|PGammaL)\((\d+),\s*(\d+)\)$")
_PERM = re.compile(r"^Perm\[(.+)\]$")
_FROB = re.compile(r"^frob\((\d+)\)$")
_SUB = re.compile(r"^sub\((\w+)\)$")


def parse_spec(text):
    """Parse a spec string; the result round-trips through str()."""
    parts = [p.strip() for p in text.strip().split(":")]
    head, rest = parts[0], parts[1:]
    m = _ONE_PARAM.match(head)
    if m:
        spec = GroupSpec(m.group(1), (int(m.group(2)),))
    else:
        m = _TWO_PARAM.match(head)
        if m:
            spec = GroupSpec(m.group(1), (int(m.group(2)), int(m.group(3))))
        else:
            m = _PERM.match(head)
            if m:
                gens = [Permutation.from_cycles(parse_cycle_string(s)) for s in m.group(1).split(",")]
                degree = max(p.degree for p in gens)
                canon = tuple(
                    Permutation(tuple(p.images) + tuple(range(p.degree, degree))).cycle_string()
                    for p in gens
                )
                spec = GroupSpec("Perm", canon)
            else:
                raise UnsupportedSpec(f"cannot parse group spec {head!r}")
    exts = []
    for token in rest:
        if token == "graph":
            exts.append(("graph",))
            continue
        m = _FROB.match(token)
        if m:
            exts.append(("frob", int(m.group(1))))
            continue
        m = _SUB.match(token)
        if m:
            exts.append(("sub", m.group(1)))
            continue
        raise UnsupportedSpec(f"cannot parse extension {token!r}")
    return GroupSpec(spec.base, spec.params, tuple(exts))


# -- closed-form orders --------------------------------------------------------

def order_sl(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        o *= q**i - 1
    return o


def order_psl(n, q):
    from math import gcd
    return order_sl(n, q) // gcd(n, q - 1)


def order_sp(n, q):
    m = n // 2
    o = q ** (m * m)
    for i in range(1, m + 1):
        o *= q ** (2 * i) - 1
    return o


# -- matrix actions -------------------------------------------------------------

class MatrixAction:
    """Projective points (optionally doubled with hyperplanes) or nonzero
    vectors of GF(q)^n, with index lookup and matrix/Frobenius/duality perms."""

    def __init__(self, q, n, kind, doubled=False):
        self.F = F = gf(q)
        self.n = n
        self.kind = kind
        if kind == "vector":
            count = q**n - 1
        else:
            count = (q**n - 1) // (q - 1)
        total = 2 * count if doubled else count
        if total > ACTION_CAP:
            raise ActionTooLarge(f"action on {total} points exceeds cap {ACTION_CAP}")
        self.doubled = doubled
        self.block = count

        # all nonzero vectors in lexicographic order
        vecs = np.stack(np.meshgrid(*([np.arange(q)] * n), indexing="ij"), axis=-1)
        vecs = vecs.reshape(-1, n).astype(np.uint8)[1:]
        if kind == "projective":
            vecs = vecs[self._is_canonical(vecs)]
        assert len(vecs) == count
        self.points = vecs
        self.degree = total
        self._index = {v.tobytes(): i for i, v in enumerate(vecs)}

    def _is_canonical(self, rows):
        # canonical projective representative: first nonzero coordinate is 1
        first = np.zeros(len(rows), dtype=np.uint8)
        seen = np.zeros(len(rows), dtype=bool)
        for j in range(self.n):
            pick = ~seen & (rows[:, j] != 0)
            first[pick] = rows[pick, j]
            seen |= pick
        return first == 1

    def _canonicalize(self, rows):
        if self.kind == "vector":
            return rows
        F = self.F
        first = np.zeros(len(rows), dtype=np.uint8)
        seen = np.zeros(len(rows), dtype=bool)
        for j in range(self.n):
            pick = ~seen & (rows[:, j] != 0)
            first[pick] = rows[pick, j]
            seen |= pick
        scale = F.inv[first]
        return F.mul[scale[:, None], rows]

    def _lookup(self, rows):
        idx = self._index
        return np.array([idx[r.tobytes()] for r in rows], dtype=np.int64)

    def _apply_matrix(self, mat, rows):
        F = self.F
        prods = F.mul[rows[:, None, :], mat[None, :, :]]  # [i, r, c] = M[r,c]*v[c]
        acc = prods[:, :, 0]
        for c in range(1, self.n):
            acc = F.add[acc, prods[:, :, c]]
        return acc

    def perm_of_matrix(self, mat):
        mat = np.asarray(mat, dtype=np.uint8)
        images = self._lookup(self._canonicalize(self._apply_matrix(mat, self.points)))
        if self.doubled:
            dual = mat_inv(self.F, mat).T
            himg = self._lookup(self._canonicalize(self._apply_matrix(dual, self.points)))
            images = np.concatenate([images, himg + self.block])
        return Permutation(tuple(int(x) for x in images))

    def frobenius_perm(self, k):
        rows = self.points
        for _ in range(k):
            rows = self.F.frob[rows]
        images = self._lookup(self._canonicalize(rows))
        if self.doubled:
            images = np.concatenate([images, images + self.block])
        return Permutation(tuple(int(x) for x in images))

    def graph_perm(self):
        assert self.doubled
        swap = np.concatenate([np.arange(self.block) + self.block, np.arange(self.block)])
        return Permutation(tuple(int(x) for x in swap))


def _field_basis_scalars(F):
    # one scalar per GF(p)-basis element of GF(q): 1, x, x^2, ...
    return [F.p**i if F.k > 1 else 1 for i in range(F.k)] if F.k > 1 else [1]


def _sl_generators(F, n):
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for lam in _field_basis_scalars(F):
                m = mat_identity(F, n)
                m[i, j] = lam
                gens.append(m)
    return gens


def _gl_generators(F, n):
    gens = _sl_generators(F, n)
    if F.q > 2:
        m = mat_identity(F, n)
        m[0, 0] = F.gen
        gens.append(m)
    return gens


def _sp_generators(F, n):
    """Symplectic transvections v -> v + lam*B(v,u)*u for a spanning set of u;
    the constructor asserts the closed-form order, so under-generation cannot
    pass silently."""
    m = n // 2
    J = np.zeros((n, n), dtype=np.uint8)
    for i in range(m):
        J[i, m + i] = 1
        J[m + i, i] = F.neg[1]
    us = [np.eye(n, dtype=np.uint8)[i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            u = np.zeros(n, dtype=np.uint8)
            u[i] = 1
            u[j] = 1
            us.append(u)
            if F.q > 2:
                u2 = np.zeros(n, dtype=np.uint8)
                u2[i] = 1
                u2[j] = F.gen
                us.append(u2)
    gens = []
    for u in us:
        ju = mat_mul(F, J.T, u.reshape(n, 1)).reshape(n)
        for lam in _field_basis_scalars(F):
            outer = F.mul[u[:, None], ju[None, :]]
            gens.append(F.add[mat_identity(F, n), F.mul[np.uint8(lam), outer]])
    return gens


# -- pre-tagged coincidences -----------------------------------------------------

def _tag_table(base, params):
    """Tags for the group itself, keyed by characteristic."""
    if base == "PSL":
        n, q = params
        p = prime_power(q)[0]
        return {p: LieTag(f"A{n-1}", 1, q, n - 1)}
    if base == "Sp":
        n, q = params
        p = prime_power(q)[0]
        return {p: LieTag(f"C{n//2}", 1, q, n // 2)}
    if base == "Sym":
        return {
            (3,): {2: LieTag("A1", 1, 2, 1)},
            (6,): {2: LieTag("C2", 1, 2, 2)},
        }.get(params, {})
    if base == "Alt":
        return {
            (4,): {3: LieTag("A1", 1, 3, 1)},
            (5,): {2: LieTag("A1", 1, 4, 1), 5: LieTag("A1", 1, 5, 1)},
            (6,): {3: LieTag("A1", 1, 9, 1)},
        }.get(params, {})
    return {}


# -- builders --------------------------------------------------------------------

def _perm_base(spec):
    base, params = spec.base, spec.params
    if base == "Perm":
        perms = [Permutation.from_cycles(parse_cycle_string(s)) for s in params]
        degree = max(p.degree for p in perms)
        perms = [Permutation(tuple(p.images) + tuple(range(p.degree, degree))) for p in perms]
        return perms, degree
    (n,) = params
    if base == "Sym":
        if n < 1:
            raise UnsupportedSpec("Sym(n) needs n >= 1")
        gens = []
        if n >= 2:
            gens.append(Permutation.from_cycles([(0, 1)], n))
        if n >= 3:
            gens.append(Permutation.from_cycles([tuple(range(n))], n))
        return gens or [Permutation.identity(n)], n
    if base == "Alt":
        if n < 1:
            raise UnsupportedSpec("Alt(n) needs n >= 1")
        if n <= 2:
            return [Permutation.identity(n)], n
        gens = [Permutation.from_cycles([(0, 1, 2)], n)]
        if n >= 4:
            long = tuple(range(n)) if n % 2 == 1 else tuple(range(1, n))
            gens.append(Permutation.from_cycles([long], n))
        return gens, n
    if base == "Cyc":
        if n < 1:
            raise UnsupportedSpec("Cyc(n) needs n >= 1")
        if n == 1:
            return [Permutation.identity(1)], 1
        return [Permutation.from_cycles([tuple(range(n))], n)], n
    if base == "Dih":
        if n < 3:
            raise UnsupportedSpec("Dih(n) needs n >= 3")
        rot = Permutation.from_cycles([tuple(range(n))], n)
        ref = Permutation(tuple((n - i) % n for i in range(n)))
        return [rot, ref], n
    raise UnsupportedSpec(f"unknown base {base!r}")


def _expected_perm_order(base, params):
    if base == "Sym":
        return factorial(params[0])
    if base == "Alt":
        n = params[0]
        return factorial(n) // 2 if n >= 3 else 1
    if base == "Cyc":
        return params[0]
    if base == "Dih":
        return 2 * params[0]
    return None


def build_group(spec):
    """Build the group named by a GroupSpec or spec string.

    Returns the final GroupHandle with .spec, .tags, .designated_h, .g_df and
    .witnesses attached. Extensions are applied left to right; all generators
    (base plus extension elements) go into one shared root enumeration so every
    intermediate subgroup lives in the same index space.
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)

    if spec.base in ("Sym", "Alt", "Cyc", "Dih", "Perm"):
        return _build_perm_group(spec)
    return _build_matrix_group(spec)


def _build_perm_group(spec):
    for ext in spec.exts:
        if ext[0] in ("frob", "graph"):
            raise NotAMatrixGroup(f"{ext[0]} extension needs a matrix-group base")
        raise UnknownName(f"no named subgroups defined for {spec.base} bases")
    gens, degree = _perm_base(spec)
    if degree > ACTION_CAP:
        raise ActionTooLarge(f"degree {degree} exceeds cap {ACTION_CAP}")
    root = PermGroup.generated(gens)
    handle = root.whole()
    expected = _expected_perm_order(spec.base, spec.params)
    if expected is not None:
        assert handle.order == expected, (spec, handle.order, expected)
    handle.spec = spec
    handle.tags = _tag_table(spec.base, spec.params)
    if handle.tags:
        handle.designated_h = handle
        handle.g_df = handle
    if spec.base == "Sym" and spec.params in ((4,), (5,)):
        # PGL(2,3) and PGL(2,4)=PSigmaL(2,4) coincidences: the Lie core is the
        # alternating subgroup
        n = spec.params[0]
        alt_root_gens = []
        sq = Permutation.from_cycles([(0, 1, 2)], n)
        alt_root_gens.append(root.idx_row(np.array(sq.images, dtype=root.elems.dtype)))
        long = tuple(range(n)) if n % 2 == 1 else tuple(range(1, n))
        lg = Permutation.from_cycles([long], n)
        alt_root_gens.append(root.idx_row(np.array(lg.images, dtype=root.elems.dtype)))
        alt = generated_subgroup(root, alt_root_gens)
        assert alt.order == factorial(n) // 2
        alt.tags = (
            {3: LieTag("A1", 1, 3, 1)} if n == 4
            else {2: LieTag("A1", 1, 4, 1), 5: LieTag("A1", 1, 5, 1)}
        )
        handle.designated_h = alt
        handle.g_df = handle
        handle.tags = {}
    return handle


def _build_matrix_group(spec):
    base = spec.base
    n, q = spec.params
    pk = prime_power(q)
    if pk is None:
        raise UnsupportedSpec(f"q = {q} is not a prime power")
    p, a = pk
    if n < 2:
        raise UnsupportedSpec("matrix groups need n >= 2")
    if base == "Sp" and n % 2 != 0:
        raise UnsupportedSpec("Sp(n,q) needs even n")

    wants_graph = any(e[0] == "graph" for e in spec.exts)
    if wants_graph and (base != "PSL" or n < 3):
        raise ActionNotDoubled("graph extension needs a PSL(n,q) base with n >= 3")

    kind = "vector" if base in ("SL", "Sp") else "projective"
    action = MatrixAction(q, n, kind, doubled=wants_graph)

    if base == "SL":
        mats = _sl_generators(action.F, n)
        base_order = order_sl(n, q)
    elif base == "Sp":
        mats = _sp_generators(action.F, n)
        base_order = order_sp(n, q)
    elif base in ("PSL", "PSigmaL"):
        mats = _sl_generators(action.F, n)
        base_order = order_psl(n, q)
    else:  # PGL, PGammaL
        mats = _gl_generators(action.F, n)
        base_order = order_sl(n, q)

    base_perms = [action.perm_of_matrix(m) for m in mats]
    all_perms = list(base_perms)

    # desugared implicit field extension for the semilinear families
    exts = list(spec.exts)
    if base in ("PSigmaL", "PGammaL"):
        exts.insert(0, ("frob", 1))

    ext_perms = []
    for ext in exts:
        if ext[0] == "frob":
            k = ext[1]
            if k < 1 or a % k != 0:
                raise UnsupportedSpec(f"frob({k}) needs k dividing {a}")
            fp = action.frobenius_perm(k)
            ext_perms.append(("frob", fp))
            all_perms.append(fp)
        elif ext[0] == "graph":
            gp = action.graph_perm()
            ext_perms.append(("graph", gp))
            all_perms.append(gp)
        else:
            ext_perms.append(ext)

    root = PermGroup.generated(all_perms)
    dt = root.elems.dtype
    base_idx = [root.idx_row(np.array(p.images, dtype=dt)) for p in base_perms]
    handle = generated_subgroup(root, base_idx)
    assert handle.order == base_order, (spec, handle.order, base_order)

    # the Lie core: for PGL-like bases it is the PSL image inside the root
    if base in ("PGL", "PGammaL"):
        sl_perms = [action.perm_of_matrix(m) for m in _sl_generators(action.F, n)]
        psl = generated_subgroup(root, [root.idx_row(np.array(p.images, dtype=dt)) for p in sl_perms])
        assert psl.order == order_psl(n, q)
    elif base in ("PSL", "PSigmaL"):
        psl = handle
    else:
        psl = handle  # SL and Sp act faithfully and are their own core candidates
    if base in ("PSL", "PGL", "PSigmaL", "PGammaL"):
        psl.tags = {p: LieTag(f"A{n-1}", 1, q, n - 1)}
    else:
        psl.tags = _tag_table(base, spec.params)

    current = handle
    witnesses = {}
    g_df = handle
    for ext in ext_perms:
        if ext[0] == "frob":
            idx = root.idx_row(np.array(ext[1].images, dtype=dt))
            current = generated_subgroup(root, list(current.gens) + [idx])
            witnesses["frob"] = idx
            g_df = current
        elif ext[0] == "graph":
            idx = root.idx_row(np.array(ext[1].images, dtype=dt))
            current = generated_subgroup(root, list(current.gens) + [idx])
            witnesses["graph"] = idx
        else:
            current = _named_subgroup(spec, root, current, psl, ext[1])
            g_df = current

    current.spec = spec
    current.designated_h = psl
    current.g_df = g_df
    current.witnesses = witnesses
    if current.tags is None or current is not psl:
        current.tags = current.tags or {}
    if base == "PGammaL" and (n, q) == (2, 8) and not spec.exts:
        # the smallest twisted exceptional coincidence: full automorphism
        # group of A1(8) in characteristic 3
        current.tags = {3: LieTag("2G2", 2, 3, 1)}
        current.designated_h = psl
        current.tags_note = "rank-1 twisted group; core at p=2 is the A1(8) part"
    if current is psl and not current.tags:
        current.tags = psl.tags
    return current


def _named_subgroup(spec, root, current, psl, name):
    """The three index-2 subgroups of PGammaL(2,9) over its PSL."""
    if spec.base != "PGammaL" or spec.params != (2, 9):
        raise UnknownName(f"no named subgroups defined for {spec.base}{spec.params}")
    if name not in ("M10", "S6", "PGL29"):
        raise UnknownName(f"unknown subgroup name {name!r}")
    assert current.order == 4 * psl.order

    member = psl.member_mask()
    orders = root.orders()
    degree = root.degree
    fixed_counts = (root.elems == np.arange(degree, dtype=root.elems.dtype)).sum(axis=1)

    cosets = {}
    for i in current.indices:
        i = int(i)
        if member[i]:
            continue
        # key the coset by its lexicographically least element
        prods = root.idx_rows(root.elems[np.asarray(psl.indices)][:, root.elems[i]])
        key = int(prods.min())
        if key not in cosets:
            cosets[key] = np.sort(np.concatenate([prods, np.asarray(psl.indices)]))
    assert len(cosets) == 3

    chosen = None
    for key, indices in sorted(cosets.items()):
        outer = indices[~member[indices]]
        has_involution = bool((orders[outer] == 2).any())
        max_fixed = int(fixed_counts[outer].max())
        if not has_involution:
            label = "M10"
        elif max_fixed >= 3:
            label = "S6"
        else:
            label = "PGL29"
        if label == name:
            assert chosen is None
            chosen = indices
    assert chosen is not None
    sub = root.subgroup(chosen)
    assert sub.order == 2 * psl.order
    return sub


# -- catalog listing ---------------------------------------------------------------

def _golden(quantity, p, value, provenance):
    return {"quantity": quantity, "p": p, "value": value, "provenance": provenance}


CATALOG = [
    {
        "spec": "Alt(6)",
        "golden": [
            _golden("euler_quillen", 3, 9, "literature"),
            _golden("euler_quillen", 5, 35, "literature"),
        ],
    },
    {
        "spec": "PSL(2,9)",
        "golden": [
            _golden("euler_quillen", 5, 35, "literature"),
            _golden("euler_bouc", 2, -16, "literature"),
            _golden("solomon_tits_rank", 3, 9, "literature"),
        ],
    },
    {
        "spec": "Sym(6)",
        "golden": [
            _golden("euler_quillen", 5, 35, "literature"),
            _golden("euler_bouc", 2, -16, "literature"),
            _golden("solomon_tits_rank", 2, 16, "computed"),
        ],
    },
    {
        "spec": "PGL(2,9)",
        "golden": [
            _golden("euler_quillen", 5, 35, "literature"),
            _golden("euler_bouc", 2, -160, "literature"),
        ],
    },
    {
        "spec": "PGammaL(2,9)",
        "golden": [
            _golden("euler_quillen", 5, 35, "literature"),
            _golden("euler_bouc", 2, -160, "literature"),
        ],
    },
    {
        "spec": "PGammaL(2,9):sub(M10)",
        "golden": [
            _golden("euler_quillen", 5, 35, "literature"),
            _golden("euler_bouc", 2, -16, "literature"),
        ],
    },
    {
        "spec": "PSL(3,2)",
        "golden": [
            _golden("solomon_tits_rank", 2, 8, "computed"),
            _golden("euler_quillen", 2, -8, "computed"),
        ],
    },
    {
        "spec": "PSL(3,3)",
        "golden": [_golden("solomon_tits_rank", 3, 27, "computed")],
    },
    {
        "spec": "PSigmaL(2,4)",
        "golden": [_golden("extended_top_rank", 2, 16, "literature")],
    },
    {
        "spec": "Sym(5)",
        "golden": [_golden("euler_quillen", 2, -16, "computed")],
    },
    {
        "spec": "PSigmaL(2,16)",
        "slow": True,
        "golden": [_golden("extended_top_rank", 2, 256, "literature")],
    },
    {
        "spec": "PSL(3,4):frob(1):graph",
        "slow": True,
        "golden": [],
    },
]

REFUSALS = [
    {
        "spec": "2F4(2)",
        "status": "refused",
        "reason": "order 17971200 is beyond the element cap; "
                  "expected answer 2^12 spheres in the top degree",
    },
]


def list_catalog():
    out = []
    for entry in CATALOG:
        spec = parse_spec(entry["spec"])
        row = {
            "spec": entry["spec"],
            "status": "available",
            "slow": bool(entry.get("slow", False)),
            "golden": entry["golden"],
        }
        out.append(row)
    out.extend(dict(r) for r in REFUSALS)
    return out


def sylow_order(handle, p):
    return p_part(handle.order, p)
