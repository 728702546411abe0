"""
Cyclic codes and the regular hyperoval
======================================

"""

from ebcodes import codes as cd
from ebcodes import geometry as geo
from ebcodes import verify as vf
from ebcodes.galois import Embedding, build_tower

q = 8
t = build_tower(3)
K = t.mid

# length q+1 cyclic code over K with the single zero beta
C = cd.cyclic_code(q + 1, Embedding.identity(K), zeros=[t.beta])

# restrict to F: the zeros become beta and its conjugate
CF = cd.subfield_subcode(C, t.coord_K)
print("subfield subcode", cd.parameters(CF))

ext = cd.extend(CF)
print("extended", cd.parameters(ext))

D = cd.dual(ext)
prof = cd.weight_profile(D)
print("dual", prof.parameters, "weights", prof.histogram, "d_dual", prof.dual_distance)

# the same dual, presented with columns (x_i, y_i, 1) from beta^i, and (0, 0, 1)
A = vf.plane_form_generator(t, t.beta, q + 1, sign=1)
print("generated by A:", D.same_code(cd.LinearCode(A)))
pts = cd.columns_as_points(cd.LinearCode(A))
print("columns = S u {0}:", pts == geo.regular_hyperoval(t), "| hyperoval:", bool(geo.is_hyperoval(pts)))

# now every gamma on the unit circle; order-3 elements give repeated columns
for w in vf.sweep_theorem1(q).witnesses:
    print(f"  e={w['gamma_exponent']} order={w['order']} params={w['params']} d_dual={w['d_dual']}")
