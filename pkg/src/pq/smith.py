"""Sparse Smith normal form over the integers, exactly.

Two phases: greedy elimination with unit pivots chosen by Markowitz fill cost
(this clears nearly everything for boundary matrices of order complexes,
whose entries are all +-1), then the classical smallest-pivot algorithm with
divisibility repair on whatever small dense block remains. All arithmetic is
on Python ints, so no overflow and no modular shortcuts; torsion coefficients
come out exact and divisibility-chained.
"""

import heapq
from dataclasses import dataclass


@dataclass(frozen=True)
class SmithResult:
    rank: int
    torsion: tuple  # invariant factors > 1, divisibility order

    def invariant_factors(self):
        return [1] * (self.rank - len(self.torsion)) + list(self.torsion)


def smith_normal_form(entries, nrows, ncols):
    """entries: iterable of (row, col, value) with integer values; duplicate
    positions are summed. Returns SmithResult."""
    rows = {}
    cols = {}
    for r, c, v in entries:
        assert 0 <= r < nrows and 0 <= c < ncols
        row = rows.setdefault(r, {})
        nv = row.get(c, 0) + int(v)
        if nv == 0:
            row.pop(c, None)
            cs = cols.get(c)
            if cs is not None:
                cs.discard(r)
        else:
            row[c] = nv
            cols.setdefault(c, set()).add(r)

    unit_rank = _unit_pivot_phase(rows, cols)
    residual = _collect_residual(rows)
    diag = _dense_snf(residual)
    assert all(d > 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0, "invariant factors must be divisibility-chained"
    torsion = tuple(d for d in diag if d > 1)
    return SmithResult(rank=unit_rank + len(diag), torsion=torsion)


def _markowitz(rows, cols, r, c):
    return (len(rows[r]) - 1) * (len(cols[c]) - 1)


def _unit_pivot_phase(rows, cols):
    """Eliminate with +-1 pivots until none remain; returns pivot count.
    Unimodular row/column operations only, so SNF(original) =
    identity-block + SNF(residual)."""
    heap = []
    for r, row in rows.items():
        for c, v in row.items():
            if v in (1, -1):
                heapq.heappush(heap, (_markowitz(rows, cols, r, c), r, c))
    count = 0
    while True:
        while heap:
            cost, r, c = heapq.heappop(heap)
            row = rows.get(r)
            if row is None:
                continue
            v = row.get(c)
            if v not in (1, -1):
                continue
            cur = _markowitz(rows, cols, r, c)
            if cur > cost:
                heapq.heappush(heap, (cur, r, c))
                continue
            _eliminate(rows, cols, heap, r, c, v)
            count += 1
        # safety net: pushes happen on every update, but rescan once to be sure
        stragglers = [
            (r, c)
            for r, row in rows.items()
            for c, v in row.items()
            if v in (1, -1)
        ]
        if not stragglers:
            return count
        for r, c in stragglers:
            heapq.heappush(heap, (_markowitz(rows, cols, r, c), r, c))


def _eliminate(rows, cols, heap, r, c, v):
    pivot_row = rows[r]
    for r2 in list(cols[c]):
        if r2 == r:
            continue
        row2 = rows[r2]
        f = row2[c] * v  # a / v for v = +-1
        for c2, w in pivot_row.items():
            nv = row2.get(c2, 0) - f * w
            if nv == 0:
                if c2 in row2:
                    del row2[c2]
                    cols[c2].discard(r2)
            else:
                fresh = c2 not in row2
                row2[c2] = nv
                if fresh:
                    cols[c2].add(r2)
                if nv in (1, -1):
                    heapq.heappush(heap, (_markowitz(rows, cols, r2, c2), r2, c2))
        if not row2:
            del rows[r2]
    # implicit column operations clear the pivot row without fill
    for c2 in pivot_row:
        cols[c2].discard(r)
        if not cols[c2]:
            del cols[c2]
    del rows[r]


def _collect_residual(rows):
    if not rows:
        return []
    row_ids = sorted(rows)
    col_ids = sorted({c for row in rows.values() for c in row})
    cpos = {c: i for i, c in enumerate(col_ids)}
    mat = [[0] * len(col_ids) for _ in row_ids]
    for i, r in enumerate(row_ids):
        for c, v in rows[r].items():
            mat[i][cpos[c]] = v
    return mat


def _dense_snf(mat):
    """Classical SNF by smallest-pivot reduction; returns the positive
    diagonal values in divisibility order."""
    diag = []
    while mat and mat[0]:
        m, n = len(mat), len(mat[0])
        best = None
        for i in range(m):
            for j in range(n):
                v = mat[i][j]
                if v and (best is None or abs(v) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        mat[0], mat[bi] = mat[bi], mat[0]
        for row in mat:
            row[0], row[bj] = row[bj], row[0]
        while True:
            # clear column 0
            restart = False
            for i in range(1, m):
                if mat[i][0]:
                    q = mat[i][0] // mat[0][0]
                    for j in range(n):
                        mat[i][j] -= q * mat[0][j]
                    if mat[i][0]:
                        mat[0], mat[i] = mat[i], mat[0]
                        restart = True
                        break
            if restart:
                continue
            # clear row 0
            for j in range(1, n):
                if mat[0][j]:
                    q = mat[0][j] // mat[0][0]
                    for row in mat:
                        row[j] -= q * row[0]
                    if mat[0][j]:
                        for row in mat:
                            row[0], row[j] = row[j], row[0]
                        restart = True
                        break
            if restart:
                continue
            break
        pivot = mat[0][0]
        # pivot must divide everything left below-right
        offender = None
        for i in range(1, m):
            for j in range(1, n):
                if mat[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(n):
                mat[0][j] += mat[offender][j]
            continue
        diag.append(abs(pivot))
        mat = [row[1:] for row in mat[1:]]
    return diag
