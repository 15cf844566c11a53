"""Operator-calculus identities: kernel facts, TA1.8 / TA1.9 and their inverse forms."""
from __future__ import annotations

from ..errors import SchemaError
from ..nested import nested_qsum
from ..operators import QPoly, jackson_integral, op_P, op_T, poch_poly, poly_one_minus_poch
from ..qcore import binom2, gauss_binomial as gb, q_number, q_pochhammer as poch
from .base import RegistryEntry, collapsed, inv_kernel, lambert, nonzero
from .sampling import shape_sampler


def _s(terms):
    return sum(terms, 0)


# -- kernel facts, checked as scalars at a sampled x -------------------------

def j25_lhs(s):
    q = s.env.q
    return jackson_integral(QPoly.monomial(s.n - 1, q))(s.env.x)


def j25_rhs(s):
    return s.env.x**s.n / q_number(s.n, s.env.q)


def j26_lhs(s):
    q, y = s.env.q, s.env.y
    return jackson_integral(poch_poly(y * q, s.n - 1, q))(s.env.x)


def j26_rhs(s):
    q, x, y, n = s.env.q, s.env.x, s.env.y, s.n
    return (1 - poch(x * y, q, n)) / (y * q_number(n, q))


def j26_rhs_printed(s):
    q, x, y, n = s.env.q, s.env.x, s.env.y, s.n
    return -poch(x * y, q, n) / (y * q_number(n, q))


def l27_lhs(s):
    return op_P(QPoly.monomial(s.n, s.env.q), s.m)(s.env.x)


def l27_rhs(s):
    return s.env.x**s.n / q_number(s.n, s.env.q) ** s.m


def l28_lhs(s):
    return op_P(poly_one_minus_poch(s.n, s.env.q), s.m)(s.env.x)


def l28_rhs(s):
    q, x, n, m = s.env.q, s.env.x, s.n, s.m
    lam = lambert(q)
    return (1 - q) ** m * _s((1 - poch(x * q ** (-m), q, i)) * collapsed(m, i, n, lam) for i in range(1, n + 1))


def l29_lhs(s):
    return op_T(QPoly.monomial(s.n, s.env.q), s.m)(s.env.x)


def l29_rhs(s):
    q, x, n, m = s.env.q, s.env.x, s.n, s.m
    inv = inv_kernel(q)
    return (1 - q) ** m * _s(x**i * collapsed(m, i, n, inv) for i in range(1, n + 1))


def l210_lhs(s):
    return op_T(poly_one_minus_poch(s.n, s.env.q), s.m)(s.env.x)


def l210_rhs(s):
    q, x, n = s.env.q, s.env.x, s.n
    return (1 - poch(x, q, n)) / q_number(n, q) ** s.m


def x211_lhs(s):
    x = s.env.x
    return poly_one_minus_poch(s.n, s.env.q)(x) / x


def x211_rhs(s):
    q, x = s.env.q, s.env.x
    return _s(q ** (i - 1) * poch(x, q, i - 1) for i in range(1, s.n + 1))


def qb212_lhs(s):
    return s.env.x**s.n


def qb212_rhs(s):
    q, x, n = s.env.q, s.env.x, s.n
    return _s(gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n) * (1 - poch(x, q, i))
              for i in range(1, n + 1))


def qb213_lhs(s):
    return 1 - poch(s.env.x, s.env.q, s.n)


def qb213_rhs(s):
    q, x, n = s.env.q, s.env.x, s.n
    return _s(gb(n, i, q) * (-1) ** (i - 1) * q ** binom2(i) * x**i for i in range(1, n + 1))


# -- nested operator identities----------------------------------------------------
# Level factors are written so that the collapse rule for a zero exponent
# (the level sum becomes its boundary term) is exactly collapsed(0, ...).

def ta18_lhs(s):
    q, x, mv = s.env.q, s.env.x, s.m_vec
    return nested_qsum(s.n, len(mv), lambda j, i, p: q ** (mv[j - 1] * i) / (1 - q**i) ** (mv[j - 1] + 1),
                       lambda i: x**i)


def ta18_rhs(s):
    q, x, mv, n = s.env.q, s.env.x, s.m_vec, s.n
    lam = lambert(q)
    weight = lambda j, i, p: collapsed(mv[j - 1], i, p, lam) / (1 - q**i)
    terminal = lambda i: (1 - q**i) * (1 - poch(x, q, i))
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, len(mv), weight, terminal)
        total = total + gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - n * i) / (1 - q**i) * inner
    return total


def ta19_lhs(s):
    q, x, mv = s.env.q, s.env.x, s.m_vec
    return nested_qsum(s.n, len(mv), lambda j, i, p: q**i / (1 - q**i) ** (mv[j - 1] + 1),
                       lambda i: 1 - poch(x, q, i))


def ta19_rhs(s):
    q, x, mv, n = s.env.q, s.env.x, s.m_vec, s.n
    inv = inv_kernel(q)
    weight = lambda j, i, p: q**i / (1 - q**i) * collapsed(mv[j - 1], i, p, inv)
    terminal = lambda i: (q ** (-i) - 1) * x**i
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, len(mv), weight, terminal)
        total = total + gb(n, i, q) * (-1) ** (i - 1) * q ** binom2(i + 1) / (1 - q**i) * inner
    return total


def c214_lhs(s):
    q, x, nv = s.env.q, s.env.x, s.m_vec
    inv = inv_kernel(q)
    return nested_qsum(s.n, len(nv), lambda j, i, p: q**i / (1 - q**i) * collapsed(nv[j - 1], i, p, inv),
                       lambda i: (q ** (-i) - 1) * x**i)


def c214_rhs(s):
    q, x, nv, n = s.env.q, s.env.x, s.m_vec, s.n
    weight = lambda j, i, p: q**i / (1 - q**i) ** (nv[j] + 1)
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, len(nv) - 1, weight, lambda t: 1 - poch(x, q, t))
        total = total + (gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - n * i)
                         / (1 - q**i) ** nv[0] * inner)
    return total


def c215_lhs(s):
    q, x, nv = s.env.q, s.env.x, s.m_vec
    lam = lambert(q)
    return nested_qsum(s.n, len(nv), lambda j, i, p: collapsed(nv[j - 1], i, p, lam) / (1 - q**i),
                       lambda i: (1 - q**i) * (1 - poch(x, q, i)))


def c215_rhs(s):
    q, x, nv, n = s.env.q, s.env.x, s.m_vec, s.n
    weight = lambda j, i, p: q ** (nv[j] * i) / (1 - q**i) ** (nv[j] + 1)
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, len(nv) - 1, weight, lambda t: x**t)
        total = total + (gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i) + i * nv[0])
                         / (1 - q**i) ** nv[0] * inner)
    return total


def _n_at_least(lo):
    def check(s):
        if s.n < lo:
            raise SchemaError(f"{s.id} needs n >= {lo}, got {s.n}")
    return check


def _sample_r_vec(rng, bounds):
    r = rng.randint(1, bounds.k)
    return {"n": rng.randint(1, bounds.n), "r": r,
            "m_vec": tuple(rng.randint(0, bounds.entry) for _ in range(r))}


_n = shape_sampler("n")
_nm0 = shape_sampler("n", "m0")
_nkm = shape_sampler("n", "k", "m_vec")
_x_nonzero = lambda s: nonzero("x", s.env.x)

ENTRIES = [
    RegistryEntry("J2.5", 2, "Jackson integral of a monomial", ("n",), ("q", "x"), j25_lhs, j25_rhs,
                  check=_n_at_least(1), sample=_n),
    RegistryEntry("J2.6", 2, "Jackson integral of a finite q-Pochhammer product", ("n",), ("q", "x", "y"),
                  j26_lhs, j26_rhs, check=_n_at_least(1), poles=lambda s: nonzero("y", s.env.y), sample=_n,
                  printed={"rhs": j26_rhs_printed}),
    RegistryEntry("L2.7", 2, "powers of P_q on a monomial", ("n", "m"), ("q", "x"), l27_lhs, l27_rhs,
                  check=_n_at_least(1), sample=_nm0),
    RegistryEntry("L2.8", 2, "powers of P_q on 1 - (x;q)_n", ("n", "m"), ("q", "x"), l28_lhs, l28_rhs,
                  sample=_nm0),
    RegistryEntry("L2.9", 2, "powers of T_q on a monomial", ("n", "m"), ("q", "x"), l29_lhs, l29_rhs,
                  check=_n_at_least(1), sample=_nm0),
    RegistryEntry("L2.10", 2, "1 - (x;q)_n is an eigenfunction of T_q", ("n", "m"), ("q", "x"), l210_lhs, l210_rhs,
                  check=_n_at_least(1), sample=_nm0),
    RegistryEntry("X2.11", 2, "(1 - (x;q)_n)/x as a finite sum", ("n",), ("q", "x"), x211_lhs, x211_rhs,
                  poles=_x_nonzero, sample=_n),
    RegistryEntry("QB2.12", 2, "x^n in the basis 1 - (x;q)_i", ("n",), ("q", "x"), qb212_lhs, qb212_rhs,
                  check=_n_at_least(1), sample=_n),
    RegistryEntry("QB2.13", 2, "finite q-binomial theorem", ("n",), ("q", "x"), qb213_lhs, qb213_rhs, sample=_n),
    RegistryEntry("TA1.8", 2, "nested sum with x^i terminal against an alternating transform",
                  ("n", "k"), ("q", "x"), ta18_lhs, ta18_rhs, sample=_nkm, vector="m_vec"),
    RegistryEntry("TA1.9", 2, "nested sum with 1 - (x;q)_i terminal",
                  ("n", "k"), ("q", "x"), ta19_lhs, ta19_rhs, sample=_nkm, vector="m_vec"),
    RegistryEntry("C2.14", 2, "inverse form of TA1.9",
                  ("n", "r"), ("q", "x"), c214_lhs, c214_rhs, sample=_sample_r_vec, vector="m_vec", vector_len="r"),
    RegistryEntry("C2.15", 2, "inverse form of TA1.8",
                  ("n", "r"), ("q", "x"), c215_lhs, c215_rhs, sample=_sample_r_vec, vector="m_vec", vector_len="r"),
]
