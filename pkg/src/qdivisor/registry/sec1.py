"""Divisor-type nested sums and their Gaussian-binomial expansions."""
from __future__ import annotations

from itertools import chain

from ..errors import SchemaError
from ..nested import nested_qsum
from ..qcore import binom2, gauss_binomial as gb, q_pochhammer as poch
from .base import RegistryEntry, lambert, nonzero, shifted_factors
from .sampling import shape_sampler


def _s(terms):
    return sum(terms, 0)


# D1.1 -----------------------------------------------------------------------

def d11_lhs(s):
    q = s.env.q
    lam = lambert(q)
    return nested_qsum(s.n, s.m, lambda j, i, p: lam(i), lambda i: 1)


def d11_rhs(s):
    q, n, m = s.env.q, s.n, s.m
    return _s(gb(n, r, q) * (-1) ** (r - 1) * q ** (binom2(r) + m * r) / (1 - q**r) ** m for r in range(1, n + 1))


# P1.3 -----------------------------------------------------------------------

def p13_lhs(s):
    q, n, m = s.env.q, s.n, s.m
    return _s(q ** (i * (m - 1)) / (1 - q**i) ** m for i in range(1, n + 1))


def p13_rhs(s):
    q, n, m = s.env.q, s.n, s.m
    lam = lambert(q)
    total = 0
    for r in range(1, n + 1):
        inner = nested_qsum(r, m - 1, lambda j, i, p: lam(i), lambda i: 1)
        total = total + gb(n, r, q) * (-1) ** (r - 1) * q ** (binom2(r) - r * n) * lam(r) * inner
    return total


# FL1.4 ----------------------------------------------------------------------

def fl14_lhs(s):
    q, x = s.env.q, s.env.x
    lam = lambert(q)
    return nested_qsum(s.n, s.m, lambda j, i, p: lam(i), lambda i: (-1) ** (i - 1) * (x**i - (-1) ** i))


def fl14_rhs(s):
    q, x, n, m = s.env.q, s.env.x, s.n, s.m
    return _s(gb(n, r, q) * (-1) ** (r - 1) * x**r * poch(-1 / x, q, r) * q ** (m * r) / (1 - q**r) ** m
              for r in range(1, n + 1))


# Z1.5 -----------------------------------------------------------------------

def z15_lhs(s):
    q, x, z = s.env.q, s.env.x, s.env.z
    pre = poch(q, q, s.n) / poch(z * q, q, s.n)
    return pre * nested_qsum(s.n, s.m, lambda j, i, p: q**i / (1 - z * q**i),
                             lambda i: x**i * poch(z * q, q, i) / poch(q, q, i))


def z15_rhs(s):
    q, x, z, n, m = s.env.q, s.env.x, s.env.z, s.n, s.m
    return _s(gb(n, r, q) * (x**r * poch(1 / x, q, r) + (-1) ** (r - 1) * q ** binom2(r)) * q ** (m * r)
              / (1 - z * q**r) ** m for r in range(1, n + 1))


def z15_poles(s):
    return chain(nonzero("x", s.env.x), shifted_factors("z", s.env.z, s.env.q, 1, s.n))


# GZ1.6 ----------------------------------------------------------------------

def gz16_lhs(s):
    q, z = s.env.q, s.env.z
    return -nested_qsum(s.n, s.m, lambda j, i, p: q**i / ((1 - q**i) * (1 - z * q ** (i - j))), lambda i: 1)


def gz16_rhs(s):
    q, z, n, m = s.env.q, s.env.z, s.n, s.m
    den = poch(z * q ** (-m), q, m + n)
    return _s(gb(n, r, q) * poch(q**m / z, q, r) * poch(z, q, n - r) * z**r / (den * (1 - q**r) ** m)
              for r in range(1, n + 1))


def gz16_poles(s):
    return chain(nonzero("z", s.env.z), shifted_factors("z", s.env.z, s.env.q, -s.m, s.n - 1))


def _m_at_least_one(s):
    if s.m < 1:
        raise SchemaError(f"{s.id} needs m >= 1, got {s.m}")


_nm = shape_sampler("n", "m")

ENTRIES = [
    RegistryEntry("D1.1", 1, "m-fold nested Lambert sum equals a Gaussian-binomial alternating sum",
                  ("n", "m"), ("q",), d11_lhs, d11_rhs, check=_m_at_least_one, sample=_nm),
    RegistryEntry("P1.3", 1, "weighted single sum against an alternating sum with nested inner sums",
                  ("n", "m"), ("q",), p13_lhs, p13_rhs, check=_m_at_least_one, sample=_nm),
    RegistryEntry("FL1.4", 1, "nested Lambert sum with an x-polynomial terminal",
                  ("n", "m"), ("q", "x"), fl14_lhs, fl14_rhs, check=_m_at_least_one,
                  poles=lambda s: nonzero("x", s.env.x), sample=_nm),
    RegistryEntry("Z1.5", 1, "z-deformed version of the x-polynomial nested sum",
                  ("n", "m"), ("q", "x", "z"), z15_lhs, z15_rhs, check=_m_at_least_one, poles=z15_poles, sample=_nm),
    RegistryEntry("GZ1.6", 1, "nested sum with level-shifted z-factors",
                  ("n", "m"), ("q", "z"), gz16_lhs, gz16_rhs, check=_m_at_least_one, poles=gz16_poles, sample=_nm),
]
