"""
Denniston maximal arcs, three ways
==================================

"""

from ebcodes import codes as cd
from ebcodes import geometry as geo
from ebcodes import verify as vf
from ebcodes.galois import build_tower, subfield_elements

q, t_ = 16, 4
t = build_tower(4)
F, K = t.base, t.mid
L = subfield_elements(F, t_)

# classical form: a union of conics X^2 + delta XY + Y^2 = lambda
u = t.unit_circle[1]
delta = t.embed_F_to_K.preimage(u ^ K.pow(u, q))
spec = geo.DennistonSpec.from_lambda(F, delta, L)
classical = geo.denniston_classical(spec)

# polar form: a union of scaled unit circles, read in the basis {1, u}
polar = geo.denniston_polar(L, t, w=u)
print("classical == polar:", classical == polar, "size", len(polar))

# cyclic form: 0 together with the powers of an element of order (q+1)(t-1)
cyc, alpha = geo.denniston_cyclic(t, t_)
print("cyclic arc size", len(cyc), "alpha order", K.mul_order(alpha))
print("maximal arc:", bool(geo.is_maximal_arc(cyc, t_)), geo.line_counts(cyc).histogram)

# the extended cyclic code whose columns are exactly that arc
code = vf.plane_code(q, t_)
prof = cd.weight_profile(code)
print("code", prof.parameters, "weights", prof.nonzero_weights, "d_dual", prof.dual_distance)
print("columns == arc:", cd.columns_as_points(code) == cyc)
print("line criterion:", cd.verify_lemma1(code))
