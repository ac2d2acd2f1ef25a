"""
Theorem verifiers and the closed Euler formula
==============================================

Each verifier compares a predicted side, assembled from classification
data and closed formulas, with a computed side that goes through posets,
complexes and Smith normal form. The report says pass only on exact
agreement of every field.
"""

import json

from pq import (
    build_group,
    euler_mobius,
    euler_prediction,
    quillen_poset,
    verify_cross_characteristic,
    verify_field_case,
    verify_no_field_case,
    verify_solomon_tits,
)

# Solomon-Tits on the rank-2 building of PSL(3,2)
vr = verify_solomon_tits(build_group("PSL(3,2)"), 2)
print(json.dumps(vr.as_dict(), indent=2, sort_keys=True, default=str))

# field case: one-step extension carries the whole homology of A_2(G)
vr = verify_field_case(build_group("PSigmaL(2,4)"), 2)
print(f"\nfield case {vr.instance}: {vr.verdict}, "
      f"top rank {vr.computed['top_rank']}, euler {vr.computed['euler']}")

# no-field case: graph-type classes contribute per-orbit centralizer terms
vr = verify_no_field_case(build_group("PSL(3,2):graph"), 2)
print(f"no-field case {vr.instance}: {vr.verdict}, "
      f"ranks {vr.computed['ranks']}, euler {vr.computed['euler_bouc']}")

# the closed Euler formula against a direct Moebius computation
for spec, p in [("Sym(5)", 2), ("PSigmaL(2,9)", 3), ("PSL(3,2):graph", 2)]:
    g = build_group(spec)
    chi = euler_prediction(g, p)
    assert chi == euler_mobius(quillen_poset(g, p))
    print(f"euler prediction {spec} p={p}: {chi}")

# cross characteristic: a Sylow 2-subgroup acts on A_3 and A_5 of Sym(6)
# without fixed points, forcing chi~ to be odd
for p in (3, 5):
    vr = verify_cross_characteristic(build_group("Sym(6)"), p, 2)
    print(f"cross-characteristic p={p}, r=2: {vr.verdict}, "
          f"chi mod 2 = {vr.computed['euler_residue']}")
