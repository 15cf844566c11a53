"""Exact q-analogues with Fractions: Pochhammer symbols, Gaussian binomials, h_k."""
from fractions import Fraction

from qdivisor.qcore import complete_homogeneous, gauss_binomial, h_range, q_number, q_pochhammer

q = Fraction(1, 2)

# (x; q)_n is a finite product, so everything stays rational
print("(1/3; 1/2)_3 =", q_pochhammer(Fraction(1, 3), q, 3))
print("(x; q)_0     =", q_pochhammer(Fraction(7), q, 0))  # empty product

# q-numbers tend to ordinary integers as q -> 1
for qq in (Fraction(1, 2), Fraction(9, 10), Fraction(999, 1000)):
    print(f"[5] at q = {qq}:", float(q_number(5, qq)))

# Gaussian binomials are polynomials in q; at q = 1/2 they are just rationals
row = [gauss_binomial(6, r, q) for r in range(7)]
print("row 6:", row)
assert row == row[::-1]  # symmetry r <-> n - r

# q-Pascal: [n+1, r] = [n, r-1] + q^r [n, r]
n, r = 6, 3
assert gauss_binomial(n + 1, r, q) == gauss_binomial(n, r - 1, q) + q**r * gauss_binomial(n, r, q)

# complete homogeneous symmetric functions
print("h_2(2, 3) =", complete_homogeneous(2, [2, 3]))  # 4 + 6 + 9

# h_k over consecutive exponents, with the Lambert kernel q^s/(1 - q^s)
lam = lambda s: q**s / (1 - q**s)
print("h_1 over s = 2..3:", h_range(1, 2, 3, lam))
