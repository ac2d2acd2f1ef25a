"""
Extending a building by outer elementary abelian subgroups
==========================================================

For G with a self-centralising normal Lie-type core H, the outer order-p
subgroups meeting H trivially fall into buckets by the shape of their
centralizer in H. Coning the building of H over the fixed subcomplex of
each field-type class produces a complex with the homology of A_p(G);
the top rank follows a closed formula in the centralizer orders.
"""

from pq import build_group, homology, order_complex, quillen_poset
from pq.groups import p_part
from pq.lie import classify_f, extended_complex, find_scnl, lie_rank

# PSigmaL(2,4) is PSL(2,4) extended by the field automorphism of GF(4).
g = build_group("PSigmaL(2,4)")
h = find_scnl(g, 2)
n = lie_rank(h, 2)
print(f"G = {g.spec}, core H of order {h.order}, Lie rank {n}")

cls = classify_f(g, h, 2)
for entry in cls.classes:
    print(f"  outer class: orbit size {entry.orbit_size}, "
          f"|C_H(E)| = {entry.centralizer_order}, bucket '{entry.bucket}'")

# every class here is field-type, so the extension is one-step
k = extended_complex(h, 2, cls.f_members)
prof = homology(k)
print(f"extended complex: dim {k.dim}, f-vector {k.f_vector()}")
print(f"homology: betti {prof.betti}, torsion {prof.torsion}")

# the same 16 comes straight out of A_2(G)
direct = homology(order_complex(quillen_poset(g, 2)))
assert direct.betti == prof.betti
print(f"A_2(G) homology agrees: {direct.betti}")

# and the rank is the formula: sum over field classes of
# orbit * |C_H(E)|_p, minus |H|_p
expected = sum(e.orbit_size * p_part(e.centralizer_order, 2)
               for e in cls.f_classes) - p_part(h.order, 2)
print(f"formula value {expected}")

# A graph-type example: PSL(3,2) extended by its graph automorphism has a
# single outer class whose centralizer is too small to be field-type.
g2 = build_group("PSL(3,2):graph")
cls2 = classify_f(g2, find_scnl(g2, 2), 2)
for entry in cls2.classes:
    print(f"\n{g2.spec}: orbit {entry.orbit_size}, bucket '{entry.bucket}', "
          f"m_E = {entry.m_e}, m_E* = {entry.m_e_star}")
