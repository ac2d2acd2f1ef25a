"""
Integral homology of radical complexes
======================================

The order complex of B_p(H) for a group of Lie type in characteristic p is
the barycentric subdivision of the Tits building: a wedge of |H|_p spheres
in one degree below the Lie rank. The homology profiles below come from
Smith normal form over the integers, so torsion would be visible if there
were any.
"""

from pq import (
    bouc_poset,
    build_group,
    homology,
    is_cohen_macaulay,
    is_homology_spherical,
    order_complex,
    p_part,
)

for spec, p in [("PSL(2,9)", 3), ("PSL(3,2)", 2), ("PSL(3,3)", 3), ("Sym(6)", 2)]:
    h = build_group(spec)
    x = bouc_poset(h, p)
    k = order_complex(x)
    prof = homology(k)
    n = x.height()                      # Lie rank, read off the poset
    print(f"{spec} at p = {p}:")
    print(f"  building rank {n}, complex dim {k.dim}, f-vector {k.f_vector()}")
    print(f"  homology profile: betti {prof.betti}, torsion {prof.torsion}")
    assert is_homology_spherical(k, n - 1, prof)
    assert prof.betti_number(n - 1) == p_part(h.order, p)
    print(f"  wedge of {prof.betti_number(n - 1)} spheres "
          f"of dimension {n - 1}, as the Sylow order predicts")

# Sym(6) appears because it carries the C2 structure of Sp(4,2); its B_2
# complex is a rank-2 building with 16 spheres.

# Cohen-Macaulay: every link, including the empty simplex, is spherical of
# complementary dimension. For buildings this holds on the nose.
k = order_complex(bouc_poset(build_group("PSL(3,2)"), 2))
ok, witness = is_cohen_macaulay(k)
print(f"\nDelta(B_2(PSL(3,2))) Cohen-Macaulay: {ok}")
