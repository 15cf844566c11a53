"""Nested sums with level-shifted z-factors and the t-deformed extension."""
from __future__ import annotations

from itertools import chain

from ..errors import SchemaError
from ..nested import nested_qsum
from ..qcore import binom2, gauss_binomial as gb, q_pochhammer as poch
from .base import RegistryEntry, nonzero, shifted_factors
from .sampling import rand_rational, shape_sampler


def _s(terms):
    return sum(terms, 0)


# P4.1 -----------------------------------------------------------------------

def p41_lhs(s):
    q, x, zv = s.env.q, s.env.x, s.env.z_vec
    return nested_qsum(s.n, len(zv), lambda j, i, p: q**i / ((1 - q**i) * (1 - zv[j - 1] * q**i)),
                       lambda t: 1 - x**t)


def p41_rhs(s):
    q, x, zv, n = s.env.q, s.env.x, s.env.z_vec, s.n
    k = len(zv)

    def weight(j, i, p):
        f = q**i / (1 - zv[j - 1] * q**i)
        if j < k:
            f = f * poch(zv[j - 1] * q, q, i) / ((1 - q**i) * poch(zv[j] * q, q, i))
        return f

    terminal = lambda t: poch(x, q, t) * poch(zv[k - 1] * q, q, t) / poch(q, q, t)
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, k, weight, terminal)
        total = total + (gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - n * i)
                         * poch(q, q, i - 1) / poch(zv[0] * q, q, i) * inner)
    return total


def p41_check(s):
    if s.k != len(s.env.z_vec):
        raise SchemaError(f"{s.id} needs z_vec of length k = {s.k}, got {len(s.env.z_vec)}")


def p41_poles(s):
    q = s.env.q
    return chain.from_iterable(shifted_factors(f"z_{j + 1}", zj, q, 1, s.n) for j, zj in enumerate(s.env.z_vec))


# z_j = z q^{-j} specialisations ------------------------------------------------

def _shifted_lhs(s, n, terminal):
    q, z = s.env.q, s.env.z
    return nested_qsum(n, s.k, lambda j, i, p: q**i / ((1 - q**i) * (1 - z * q ** (i - j))), terminal)


def _shifted_rhs(s, terminal):
    q, z, n, k = s.env.q, s.env.z, s.n, s.k
    lam = lambda j, i, p: q**i / (1 - q**i)
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, k, lam, terminal)
        total = total + (gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - n * i)
                         * poch(q, q, i - 1) / poch(z, q, i) * inner)
    return total / poch(z * q ** (-k), q, k)


def s42_lhs(s):
    x = s.env.x
    return _shifted_lhs(s, s.n, lambda t: 1 - x**t)


def s42_rhs(s):
    q, x, z, k = s.env.q, s.env.x, s.env.z, s.k
    return _shifted_rhs(s, lambda t: poch(x, q, t) * poch(z * q ** (-k), q, t) / poch(q, q, t - 1))


def s43_lhs(s):
    q, x, t = s.env.q, s.env.x, s.env.t
    return _shifted_lhs(s, s.n, lambda u: 1 - x**u * poch(t, q, u) / poch(x * t, q, u))


def s43_rhs(s):
    q, x, z, t, k = s.env.q, s.env.x, s.env.z, s.env.t, s.k
    return _shifted_rhs(s, lambda u: poch(x, q, u) * poch(z * q ** (-k), q, u) / (poch(x * t, q, u) * poch(q, q, u - 1)))


def s44_lhs(s):
    q, t = s.env.q, s.env.t
    return _shifted_lhs(s, s.n, lambda u: _s(1 / (1 - t * q ** (r - 1)) for r in range(1, u + 1)))


def s44_rhs(s):
    q, z, t, k = s.env.q, s.env.z, s.env.t, s.k
    return _shifted_rhs(s, lambda u: poch(z * q ** (-k), q, u) / poch(t, q, u))


def s45_lhs(s):
    q, z, t, k = s.env.q, s.env.z, s.env.t, s.k
    return nested_qsum(s.i, k, lambda j, i, p: q**i / (1 - q**i), lambda u: poch(z * q ** (-k), q, u) / poch(t, q, u))


def s45_rhs(s):
    q, z, t, k, i = s.env.q, s.env.z, s.env.t, s.k, s.i
    return _s(gb(i, r, q) * (-1) ** (r - 1) * q ** (binom2(r) + r * k) / (1 - q**r) ** k
              * (1 - z**r * q ** (-r * k) * poch(t * q**k / z, q, r) / poch(t, q, r)) for r in range(1, i + 1))


def _z_window(s, hi):
    return shifted_factors("z", s.env.z, s.env.q, -s.k, hi - 1)


def _t_window(s, hi):
    return shifted_factors("t", s.env.t, s.env.q, 0, hi - 1)


# E4.7 -----------------------------------------------------------------------

def e47_lhs(s):
    q, z, n, r = s.env.q, s.env.z, s.n, s.r
    return _s(gb(n, i, q) * gb(i, r, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - n * i) * poch(q, q, i - 1) / poch(z, q, i)
              for i in range(1, n + 1))


def e47_rhs(s):
    q, z, n, r = s.env.q, s.env.z, s.n, s.r
    return ((-1) ** (r - 1) * q ** (-binom2(r)) * poch(q, q, n) * poch(z, q, n - r)
            / ((1 - q**r) * poch(z, q, n) * poch(q, q, n - r)))


def e47_rhs_printed(s):
    q, z, n, r = s.env.q, s.env.z, s.n, s.r
    return ((-1) ** (r - 1) * q ** (-binom2(r)) * poch(q, q, n) * poch(z, q, n - r)
            / (1 - q**r * poch(z, q, n) * poch(q, q, n - r)))


def e47_check(s):
    if not 1 <= s.r <= s.n:
        raise SchemaError(f"{s.id} needs 1 <= r <= n, got r={s.r}, n={s.n}")


# PC1.12 -----------------------------------------------------------------------

def pc112_lhs(s):
    q, z, t, k = s.env.q, s.env.z, s.env.t, s.k
    tau = lambda r: 1 / (1 - z * q ** (r - k - 1)) - 1 / (1 - t * q ** (r - 1))
    return _shifted_lhs(s, s.n, lambda u: _s(tau(r) for r in range(1, u + 1)))


def pc112_rhs(s):
    q, z, t, k, n = s.env.q, s.env.z, s.env.t, s.k, s.n
    den = poch(z * q ** (-k), q, n + k)
    return _s(gb(n, r, q) * poch(q, q, r - 1) * poch(t * q**k / z, q, r) * poch(z, q, n - r) * z**r
              / (den * poch(t, q, r) * (1 - q**r) ** k) for r in range(1, n + 1))


def _k_at_least_one(s):
    if s.k < 1:
        raise SchemaError(f"{s.id} needs k >= 1, got {s.k}")


def _zvec_env(rng, shape, bounds):
    return {"z_vec": tuple(rand_rational(rng) for _ in range(shape["k"]))}


_nk = shape_sampler("n", "k")

ENTRIES = [
    RegistryEntry("P4.1", 4, "nested sum with k free z-parameters against an alternating transform",
                  ("n", "k"), ("q", "x", "z_vec"), p41_lhs, p41_rhs, check=p41_check, poles=p41_poles,
                  sample=_nk, sample_env=_zvec_env),
    RegistryEntry("S4.2", 4, "z_j = z q^-j specialisation", ("n", "k"), ("q", "x", "z"), s42_lhs, s42_rhs,
                  check=_k_at_least_one, poles=lambda s: _z_window(s, s.n), sample=_nk),
    RegistryEntry("S4.3", 4, "t-deformation of the specialisation", ("n", "k"), ("q", "x", "z", "t"),
                  s43_lhs, s43_rhs, check=_k_at_least_one,
                  poles=lambda s: chain(_z_window(s, s.n), shifted_factors("x*t", s.env.x * s.env.t, s.env.q, 0,
                                                                           s.n - 1)),
                  sample=_nk),
    RegistryEntry("S4.4", 4, "the t-deformation divided by 1 - x at x = 1", ("n", "k"), ("q", "z", "t"),
                  s44_lhs, s44_rhs, check=_k_at_least_one, poles=lambda s: chain(_z_window(s, s.n), _t_window(s, s.n)),
                  sample=_nk),
    RegistryEntry("S4.5", 4, "inner alternating evaluation used for the t-deformation", ("i", "k"), ("q", "z", "t"),
                  s45_lhs, s45_rhs, check=_k_at_least_one,
                  poles=lambda s: chain(nonzero("z", s.env.z), _t_window(s, s.i)), sample=shape_sampler("i", "k")),
    RegistryEntry("E4.7", 4, "double Gaussian-binomial sum in closed form", ("n", "r"), ("q", "z"), e47_lhs, e47_rhs,
                  check=e47_check, poles=lambda s: shifted_factors("z", s.env.z, s.env.q, 0, s.n - 1),
                  sample=shape_sampler("n", "r"), printed={"rhs": e47_rhs_printed}),
    RegistryEntry("PC1.12", 4, "t-deformed nested sum with level-shifted z-factors", ("n", "k"), ("q", "z", "t"),
                  pc112_lhs, pc112_rhs, check=_k_at_least_one,
                  poles=lambda s: chain(nonzero("z", s.env.z), _z_window(s, s.n), _t_window(s, s.n)), sample=_nk),
]
