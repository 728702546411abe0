"""
The trace-norm quadric and ovoid codes
======================================

"""

from ebcodes import codes as cd
from ebcodes import geometry as geo
from ebcodes import verify as vf
from ebcodes.galois import build_tower

q = 4
t = build_tower(2, with_top=True)

# Q(x) = Tr(N(x)) on E = GF(q^4), viewed as a 4-dim space over F
w = geo.quadratic_form_witness(t)
print("Q on the basis:", w.values)
print("Gram matrix of the polar form:\n", w.bilinear_matrix.entries, "rank", w.rank())

# its zeros in PG(3, q)
pts, kind = geo.quadric_points(geo.trace_norm_quadric(t), t.base)
print(kind, "quadric with", len(pts), "points; ovoid:", bool(geo.is_ovoid(pts)))
print("plane sections:", geo.plane_counts(pts).histogram)

# compare with the hyperbolic quadric of x0 x1 + x2 x3
hyp, kind = geo.quadric_points(geo.split_form(t.base), t.base)
print(kind, "quadric with", len(hyp), "points; ovoid:", bool(geo.is_ovoid(hyp)))

# the cyclic [q^2+1, 4] code with nonzeros the conjugates of an element of order q^2+1
code = vf.ovoid_code(q)
prof = cd.weight_profile(code)
print("code", prof.parameters, "weights", prof.histogram, "projective", prof.is_projective)
print("columns == quadric:", cd.columns_as_points(code) == pts)
