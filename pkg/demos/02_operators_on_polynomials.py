"""Polynomial-level operators: the q-derivative, Jackson integral, P and T.

All operators act on QPoly, a dense list of Fraction coefficients with a
fixed base q. Comparisons are exact.
"""
from fractions import Fraction

from qdivisor.operators import (QPoly, jackson_integral, op_P, op_T, poch_poly, poly_one_minus_poch,
                                q_derivative)
from qdivisor.qcore import q_number

q = Fraction(2, 3)
f = QPoly([Fraction(1), Fraction(-2), Fraction(0), Fraction(5, 7)], q)
print("f       =", f)
print("D_q f   =", q_derivative(f))
print("I f     =", jackson_integral(f))

# the two halves of the fundamental theorem
assert q_derivative(jackson_integral(f)) == f
assert jackson_integral(q_derivative(f)) == f - QPoly.constant(f[0], q)

# P divides x^n by [n]; m-fold application divides by [n]^m
n, m = 4, 3
xn = QPoly.monomial(n, q)
assert op_P(xn, m) == QPoly.monomial(n, q, 1 / q_number(n, q) ** m)

# 1 - (x; q)_n is an eigenfunction of T with eigenvalue 1/[n]
g = poly_one_minus_poch(n, q)
print("1 - (x; q)_4 =", g)
assert op_T(g, m) == g / q_number(n, q) ** m

# the finite q-binomial theorem, coefficient by coefficient
print("(x; q)_3   =", poch_poly(1, 3, q))
