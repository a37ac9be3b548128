"""
Finite fields and Singer cycles
===============================

Elements of GF(p^k) are integer codes: the coefficient list of a polynomial
in the generator x, read in base p.
"""

from derangement_lab.gf import field_of_order, find_primitive_poly2, element_order, make_field
from derangement_lab.constructions import build_singer

# GF(4) is GF(2)[x] / (x^2 + x + 1); x has code 2 and x + 1 has code 3
s = make_field(2, 2)
print(s, "modulus", s.modulus)
x = s.element(2)
print("x * x =", (x * x).code, " x * (x + 1) =", (x * s.element(3)).code)
print("order of x:", element_order(x, s))

# a primitive quadratic over GF(q) gives a 2x2 matrix of order q^2 - 1
for q in (2, 3, 4, 5, 7, 8):
    f = field_of_order(q)
    poly = find_primitive_poly2(f)
    A = build_singer(f)
    print(f"q={q}: {poly}, Singer matrix {A.rows()} of order {A.order()}")
