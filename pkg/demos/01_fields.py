"""
Fields, towers and the unit circle
==================================

"""

import numpy as np

from ebcodes.galois import build_tower, field_create, polar_decompose, poly_str, rel_norm

# GF(256) with the smallest irreducible modulus; x is not primitive here
f = field_create(8)
print(f, "primitive element:", f.primitive, "order of x:", f.mul_order(2))

# arithmetic on whole arrays goes through the log/antilog tables
a = np.arange(1, 9)
print("a * a^-1 =", f.mul_vec(a, f.inv_vec(a)))

# F = GF(4) inside K = GF(16)
t = build_tower(2)
F, K = t.base, t.mid
print("F modulus", poly_str(F.modulus), "| K modulus", poly_str(K.modulus))
print("F embedded in K:", t.embed_F_to_K.image())

# the norm-one elements of K form a cyclic group of order q + 1
S = t.unit_circle
print("unit circle:", S, "norms:", {rel_norm(u, t) for u in S})

# every nonzero x of K is lambda * u with lambda in F and |u| = 1
x = K.primitive
lam, u = polar_decompose(x, t)
print(f"{x} = {lam} * {u};  coordinates over (1, xi): {t.coords(x)}")
