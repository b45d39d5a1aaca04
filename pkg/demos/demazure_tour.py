"""Demazure operators on three ambient rings, and a few nil-Hecke identities.

Run: python3 demos/demazure_tour.py
"""

from weylkit import NilHeckeElem, SymAlgebra, TorusSymAlgebra, demazure_word, parse_expr, root_system, sphere_algebra
from weylkit.nilhecke import all_reduced_words, commutator, demazure_w0_direct
from weylkit.polyalg import PolyElem


def show(label, value):
    print(f"{label:<38} {value}")


a2 = root_system("A", 2)
R = SymAlgebra(a2)
u = parse_expr("a1^2*a2", R)
for word in all_reduced_words(a2, a2.w0):
    show(f"D[{''.join(str(i + 1) for i in word)}](a1^2*a2)", R.render(demazure_word(R, word, u)))
show("alternating-sum formula", R.render(demazure_w0_direct(R, u)))

T = TorusSymAlgebra(root_system("A", 1))
show("D_s(t1) on the torus ring", demazure_word(T, (0,), parse_expr("t1", T)))
show("D_s(t1^2*a1) on the torus ring", demazure_word(T, (0,), parse_expr("t1^2*a1", T)))

S = sphere_algebra()
show("D_s(x*y) on the sphere", demazure_word(S, (0,), parse_expr("x*y", S)))
show("D_s(x) on the sphere", demazure_word(S, (0,), parse_expr("x", S)))

print()
D1, D2 = NilHeckeElem.D(a2, (0,)), NilHeckeElem.D(a2, (1,))
show("D1*D1", D1 * D1)
show("D1*D2*D1", D1 * D2 * D1)
show("D1*a1 (right normal form)", D1 * PolyElem.var(0, 2))
a1 = root_system("A", 1)
z = PolyElem.var(0, 1)
show("A1: D_s*z - s(z)*D_s", commutator(a1, 0, z, twisted=True))
show("A1: D_s*s(z) - z*D_s", commutator(a1, 0, z, twisted=False))
