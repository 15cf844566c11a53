"""Symmetric-function series, the z-deformed nested sums and their corollaries."""
from __future__ import annotations

from fractions import Fraction
from itertools import chain
from math import comb

from ..errors import ConvergenceError, DomainError, SchemaError
from ..nested import nested_qsum
from ..qcore import binom2, gauss_binomial as gb, h_range, q_pochhammer as poch
from .base import RegistryEntry, lambert, nonzero, shifted_factors
from .sampling import rand_rational, shape_sampler

DEFAULT_TRUNC = 20


def _s(terms):
    return sum(terms, 0)


def _h_all(top: int, args):
    """[h_0, ..., h_top] of the same argument list in one pass."""
    h = [1] + [0] * top
    for a in args:
        for j in range(1, top + 1):
            h[j] = h[j] + a * h[j - 1]
    return h


def _trunc(s) -> int:
    R = DEFAULT_TRUNC if s.trunc is None else s.trunc
    if R < 0:
        raise SchemaError(f"truncation must be >= 0, got {R}")
    return R


# -- symmetric-function series with a rigorous tail ---------------------------

def _l31_kernel(q):
    return lambert(q)


def _l32_kernel(q):
    return lambda s: 1 / (1 - q**s)


def _series_lhs(s, kernel, w):
    R, k = _trunc(s), s.k
    args = [kernel(t) for t in range(s.i, s.n + 1)]
    h = _h_all(k + R, args)
    return _s(comb(k + r, k) * w**r * h[k + r] for r in range(R + 1))


def _series_tail(s, kernel, w):
    """Bound on sum_{r > R} C(k+r, k) |w|^r |h_{k+r}|.

    With N arguments of modulus at most M, |h_d| <= C(d+N-1, N-1) M^d, and
    the ratio of consecutive bounds for r >= R+1 is at most
    rho (k+R+1+N)/(R+2) with rho = |w| M.
    """
    R, k = _trunc(s), s.k
    N = s.n - s.i + 1
    M = max(abs(kernel(t)) for t in range(s.i, s.n + 1))
    rho = abs(w) * M
    if rho >= 1:
        raise DomainError(f"series ratio |w| max|kernel| = {rho} is not below 1")
    ratio = rho * Fraction(k + R + 1 + N, R + 2)
    if ratio >= 1:
        raise ConvergenceError(f"R = {R} is too small to certify the tail (ratio bound {ratio})")
    r = R + 1
    first = comb(k + r, k) * abs(w) ** r * comb(k + r + N - 1, N - 1) * M ** (k + r)
    return first / (1 - ratio)


def l31_lhs(s):
    return _series_lhs(s, _l31_kernel(s.env.q), s.env.z - 1)


def l31_tail(s):
    return _series_tail(s, _l31_kernel(s.env.q), s.env.z - 1)


def l31_rhs(s):
    q, z, i, n = s.env.q, s.env.z, s.i, s.n
    pre = (1 - q**i) * poch(q, q, n) * poch(z * q, q, i) / ((1 - z * q**i) * poch(z * q, q, n) * poch(q, q, i))
    return pre * h_range(s.k, i, n, lambda t: q**t / (1 - z * q**t))


def l32_lhs(s):
    return _series_lhs(s, _l32_kernel(s.env.q), 1 - s.env.z)


def l32_tail(s):
    return _series_tail(s, _l32_kernel(s.env.q), 1 - s.env.z)


def l32_rhs(s):
    q, z, i, n = s.env.q, s.env.z, s.i, s.n
    pre = (z ** (i - n) * (1 - q**i) * poch(q, q, n) * poch(q / z, q, i)
           / ((z - q**i) * poch(q / z, q, n) * poch(q, q, i)))
    return pre * h_range(s.k, i, n, lambda t: 1 / (z - q**t))


def nb3_lhs(s):
    q, z, i, l = s.env.q, s.env.z, s.i, s.l
    u = q**i / (1 - q**i)
    return _s(comb(l - 1 + r, l - 1) * (z - 1) ** r * u ** (l + r) for r in range(_trunc(s) + 1))


def nb3_rhs(s):
    q, z, i, l = s.env.q, s.env.z, s.i, s.l
    return q ** (i * l) / (1 - z * q**i) ** l


def nb3_tail(s):
    q, z, i, l = s.env.q, s.env.z, s.i, s.l
    R = _trunc(s)
    u = abs(q**i / (1 - q**i))
    w = abs(z - 1)
    rho = w * u
    if rho >= 1:
        raise DomainError(f"series ratio |z - 1| |u| = {rho} is not below 1")
    ratio = rho * Fraction(l + R + 1, R + 2)
    if ratio >= 1:
        raise ConvergenceError(f"R = {R} is too small to certify the tail (ratio bound {ratio})")
    r = R + 1
    return comb(l - 1 + r, l - 1) * w**r * u ** (l + r) / (1 - ratio)


def _check_i_n(s):
    if not 1 <= s.i <= s.n:
        raise SchemaError(f"{s.id} needs 1 <= i <= n, got i={s.i}, n={s.n}")


def _check_nb3(s):
    if s.i < 1 or s.l < 1:
        raise SchemaError(f"{s.id} needs i >= 1 and l >= 1")


def _tail_env(max_kernel):
    """q with |q| <= 1/2 and z near 1, redrawn until the series ratio is at most 1/2."""

    def sample(rng, shape, bounds):
        while True:
            d = rng.randint(2, 50)
            p = rng.choice([v for v in range(-(d // 2), d // 2 + 1) if v])
            q = Fraction(p, d)
            if abs(q) == 1:
                continue
            delta = Fraction(rng.choice([v for v in range(-10, 11) if v]), rng.randint(10, 50))
            z = 1 + delta
            M = max_kernel(q, shape)
            if abs(delta) * M <= Fraction(1, 2):
                return {"q": q, "z": z}

    return sample


def _max_l31(q, sh):
    return max(abs(q**t / (1 - q**t)) for t in range(sh["i"], sh["n"] + 1))


def _max_l32(q, sh):
    return max(abs(1 / (1 - q**t)) for t in range(sh["i"], sh["n"] + 1))


def _max_nb3(q, sh):
    return abs(q ** sh["i"] / (1 - q ** sh["i"]))


# -- z-deformed nested sums ------------------------------------------------------

def pb110_lhs(s):
    q, x, zv, lv = s.env.q, s.env.x, s.env.z_vec, s.l_vec
    k = len(lv)

    def weight(j, i, p):
        zj = zv[j - 1]
        f = q**i / (1 - zj * q**i) * h_range(lv[j - 1] - 1, i, p, lambda t: q**t / (1 - zj * q**t))
        if j < k:
            f = f * poch(zj * q, q, i) / ((1 - q**i) * poch(zv[j] * q, q, i))
        return f

    return nested_qsum(s.n, k, weight, lambda i: poch(x, q, i) * poch(zv[k - 1] * q, q, i) / poch(q, q, i))


def pb110_rhs(s):
    q, x, zv, lv, n = s.env.q, s.env.x, s.env.z_vec, s.l_vec, s.n
    k = len(lv)
    weight = lambda j, i, p: q ** (i * lv[j]) / ((1 - q**i) * (1 - zv[j] * q**i) ** lv[j])
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, k - 1, weight, lambda t: 1 - x**t)
        total = total + (gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i) + i * lv[0])
                         / (1 - zv[0] * q**i) ** lv[0] * inner)
    return poch(zv[0] * q, q, n) / poch(q, q, n) * total


def pb111_lhs(s):
    q, x, zv, lv = s.env.q, s.env.x, s.env.z_vec, s.l_vec
    k = len(lv)

    def weight(j, i, p):
        zj = zv[j - 1]
        f = 1 / (zj - q**i) * h_range(lv[j - 1] - 1, i, p, lambda t: 1 / (zj - q**t))
        if j < k:
            zn = zv[j]
            f = f * q**i * zj**i * zn ** (-i) * poch(q / zj, q, i) / ((1 - q**i) * poch(q / zn, q, i))
        return f

    zk = zv[k - 1]
    return nested_qsum(s.n, k, weight, lambda i: (1 - x**i) * zk**i * poch(q / zk, q, i) / poch(q, q, i))


def pb111_rhs(s):
    q, x, zv, lv, n = s.env.q, s.env.x, s.env.z_vec, s.l_vec, s.n
    k = len(lv)
    weight = lambda j, i, p: q**i / ((1 - q**i) * (zv[j] - q**i) ** lv[j])
    total = 0
    for i in range(1, n + 1):
        inner = nested_qsum(i, k - 1, weight, lambda t: poch(x, q, t))
        total = total + (gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - n * i)
                         / (zv[0] - q**i) ** lv[0] * inner)
    return zv[0] ** n * poch(q / zv[0], q, n) / poch(q, q, n) * total


def _pb_check(s):
    if len(s.env.z_vec) != len(s.l_vec):
        raise SchemaError(f"{s.id} needs z_vec of length k = {len(s.l_vec)}, got {len(s.env.z_vec)}")
    if any(v < 1 for v in s.l_vec):
        raise SchemaError(f"{s.id} needs every l_j >= 1")


def pb110_poles(s):
    q = s.env.q
    return chain.from_iterable(shifted_factors(f"z_{j + 1}", zj, q, 1, s.n) for j, zj in enumerate(s.env.z_vec))


def pb111_poles(s):
    q = s.env.q
    out = []
    for j, zj in enumerate(s.env.z_vec):
        out.append((f"z_{j + 1}", zj))
        out += [(f"z_{j + 1} - q^{t}", zj - q**t) for t in range(1, s.n + 1)]
    return out


def c33_lhs(s):
    q, x, z, n, l = s.env.q, s.env.x, s.env.z, s.n, s.l
    ker = lambda t: q**t / (1 - z * q**t)
    return _s(poch(x, q, i) * poch(z * q, q, i - 1) * q**i / poch(q, q, i) * h_range(l - 1, i, n, ker)
              for i in range(1, n + 1))


def c33_rhs(s):
    q, x, z, n, l = s.env.q, s.env.x, s.env.z, s.n, s.l
    return poch(z * q, q, n) / poch(q, q, n) * _s(
        gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i) + i * l) / (1 - z * q**i) ** l * (1 - x**i)
        for i in range(1, n + 1))


def c34_lhs(s):
    q, x, z, n, l = s.env.q, s.env.x, s.env.z, s.n, s.l
    ker = lambda t: 1 / (z - q**t)
    return _s((1 - x**i) * poch(q / z, q, i - 1) * z ** (i - 1) / poch(q, q, i) * h_range(l - 1, i, n, ker)
              for i in range(1, n + 1))


def c34_rhs(s):
    q, x, z, n, l = s.env.q, s.env.x, s.env.z, s.n, s.l
    return z**n * poch(q / z, q, n) / poch(q, q, n) * _s(
        gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - n * i) / (z - q**i) ** l * poch(x, q, i)
        for i in range(1, n + 1))


def c34_poles(s):
    q, z = s.env.q, s.env.z
    return [("z", z)] + [(f"z - q^{t}", z - q**t) for t in range(1, s.n + 1)]


def fl35_lhs(s):
    q, w, y, n = s.env.q, s.env.w, s.env.y, s.n
    return poch(q, q, n) / poch(y * q, q, n) * _s(
        w**i * y ** (n - i) * poch(y * q, q, i - 1) / poch(q, q, i) for i in range(1, n + 1))


def fl35_rhs(s):
    q, w, y, n = s.env.q, s.env.w, s.env.y, s.n
    return _s(gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n) / (1 - y * q**i) * (1 - poch(w, q, i))
              for i in range(1, n + 1))


def p36_lhs(s):
    e = s.env
    q, w, x, y, z, n = e.q, e.w, e.x, e.y, e.z, s.n
    return poch(q, q, n) / poch(y * z, q, n) * _s(
        w**i * y ** (n - i) * poch(x, q, i) * poch(y, q, i) * poch(z, q, n - i)
        / (poch(w * x, q, i) * poch(q, q, i) * poch(q, q, n - i)) for i in range(1, n + 1))


def p36_rhs(s):
    e = s.env
    q, w, x, y, z, n = e.q, e.w, e.x, e.y, e.z, s.n
    return _s(gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n)
              * (1 - poch(w, q, i) / poch(w * x, q, i)) * poch(y, q, i) / poch(y * z, q, i)
              for i in range(1, n + 1))


def a37_lhs(s):
    e = s.env
    q, w, x, y, n = e.q, e.w, e.x, e.y, s.n
    return poch(q, q, n) / poch(y * q, q, n) * _s(
        w**i * y ** (n - i) * poch(x, q, i) * poch(y * q, q, i - 1) / (poch(w * x, q, i) * poch(q, q, i))
        for i in range(1, n + 1))


def a37_rhs(s):
    e = s.env
    q, w, x, y, n = e.q, e.w, e.x, e.y, s.n
    return _s(gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n) / (1 - y * q**i)
              * (1 - poch(w, q, i) / poch(w * x, q, i)) for i in range(1, n + 1))


def a38_lhs(s):
    e = s.env
    q, w, x, y, n = e.q, e.w, e.x, e.y, s.n
    return poch(q, q, n) * _s(
        w**i * y ** (n - i) * poch(x, q, i) * poch(y, q, i) / (poch(w * x, q, i) * poch(q, q, i) * poch(q, q, n - i))
        for i in range(1, n + 1))


def a38_rhs(s):
    e = s.env
    q, w, x, y, n = e.q, e.w, e.x, e.y, s.n
    return _s(gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n)
              * (1 - poch(w, q, i) / poch(w * x, q, i)) * poch(y, q, i) for i in range(1, n + 1))


def a39_lhs(s):
    e = s.env
    q, w, y, z, n = e.q, e.w, e.y, e.z, s.n
    return poch(q, q, n) / poch(y * z, q, n) * _s(
        w**i * y ** (n - i) * poch(y, q, i) * poch(z, q, n - i) / (poch(q, q, i) * poch(q, q, n - i))
        for i in range(1, n + 1))


def a39_rhs(s):
    e = s.env
    q, w, y, z, n = e.q, e.w, e.y, e.z, s.n
    return _s(gb(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n) * (1 - poch(w, q, i))
              * poch(y, q, i) / poch(y * z, q, i) for i in range(1, n + 1))


def c310_lhs(s):
    e = s.env
    q, y, z, n, r = e.q, e.y, e.z, s.n, s.r
    return _s(gb(n, i, q) * gb(i, r, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n)
              * poch(y, q, i) / poch(y * z, q, i) for i in range(1, n + 1))


def c310_rhs(s):
    e = s.env
    q, y, z, n, r = e.q, e.y, e.z, s.n, s.r
    return (y ** (n - r) * (-1) ** (r - 1) * q ** (-binom2(r)) * poch(q, q, n) * poch(y, q, r) * poch(z, q, n - r)
            / (poch(y * z, q, n) * poch(q, q, r) * poch(q, q, n - r)))


def _check_r(s):
    if not 1 <= s.r <= s.n:
        raise SchemaError(f"{s.id} needs 1 <= r <= n, got r={s.r}, n={s.n}")


def _check_l(s):
    if s.l < 1:
        raise SchemaError(f"{s.id} needs l >= 1, got {s.l}")


def _poch_factors(label, value, q, n):
    return shifted_factors(label, value, q, 0, n - 1)


def _y_shift(s):
    return shifted_factors("y", s.env.y, s.env.q, 1, s.n)


def _wx(s):
    return _poch_factors("w*x", s.env.w * s.env.x, s.env.q, s.n)


def _yz(s):
    return _poch_factors("y*z", s.env.y * s.env.z, s.env.q, s.n)


def _zvec_env(rng, shape, bounds):
    return {"z_vec": tuple(rand_rational(rng) for _ in range(shape["k"]))}


_n = shape_sampler("n")
_nl = shape_sampler("n", "l")

ENTRIES = [
    RegistryEntry("L3.1", 3, "binomial series of complete symmetric functions of Lambert terms",
                  ("i", "n", "k"), ("q", "z"), l31_lhs, l31_rhs, backend="exact+tail", check=_check_i_n,
                  poles=lambda s: shifted_factors("z", s.env.z, s.env.q, 1, s.n),
                  sample=shape_sampler("n", "i", "k0"), sample_env=_tail_env(_max_l31), tail=l31_tail),
    RegistryEntry("L3.2", 3, "binomial series of complete symmetric functions of 1/(1 - q^s)",
                  ("i", "n", "k"), ("q", "z"), l32_lhs, l32_rhs, backend="exact+tail", check=_check_i_n,
                  poles=c34_poles,
                  sample=shape_sampler("n", "i", "k0"), sample_env=_tail_env(_max_l32), tail=l32_tail),
    RegistryEntry("NB3", 3, "negative-binomial resummation of a geometric factor",
                  ("i", "l"), ("q", "z"), nb3_lhs, nb3_rhs, backend="exact+tail", check=_check_nb3,
                  poles=lambda s: shifted_factors("z", s.env.z, s.env.q, s.i, s.i),
                  sample=shape_sampler("i", "l"), sample_env=_tail_env(_max_nb3), tail=nb3_tail),
    RegistryEntry("PB1.10", 3, "nested sum with k independent z-parameters, first form",
                  ("n", "k"), ("q", "x", "z_vec"), pb110_lhs, pb110_rhs, check=_pb_check, poles=pb110_poles,
                  sample=shape_sampler("n", "k", "l_vec"), sample_env=_zvec_env, vector="l_vec"),
    RegistryEntry("PB1.11", 3, "nested sum with k independent z-parameters, second form",
                  ("n", "k"), ("q", "x", "z_vec"), pb111_lhs, pb111_rhs, check=_pb_check, poles=pb111_poles,
                  sample=shape_sampler("n", "k", "l_vec"), sample_env=_zvec_env, vector="l_vec"),
    RegistryEntry("C3.3", 3, "single-level case of the first z-form",
                  ("n", "l"), ("q", "x", "z"), c33_lhs, c33_rhs, check=_check_l,
                  poles=lambda s: shifted_factors("z", s.env.z, s.env.q, 1, s.n), sample=_nl),
    RegistryEntry("C3.4", 3, "single-level case of the second z-form",
                  ("n", "l"), ("q", "x", "z"), c34_lhs, c34_rhs, check=_check_l, poles=c34_poles, sample=_nl),
    RegistryEntry("FL3.5", 3, "two-parameter finite sum against an alternating transform",
                  ("n",), ("q", "w", "y"), fl35_lhs, fl35_rhs, poles=_y_shift, sample=_n),
    RegistryEntry("P3.6", 3, "four-parameter finite identity", ("n",), ("q", "w", "x", "y", "z"), p36_lhs, p36_rhs,
                  poles=lambda s: chain(_yz(s), _wx(s)), sample=_n),
    RegistryEntry("A3.7", 3, "three-parameter identity with a (yq;q)_n normalisation", ("n",), ("q", "w", "x", "y"),
                  a37_lhs, a37_rhs, poles=lambda s: chain(_y_shift(s), _wx(s)), sample=_n),
    RegistryEntry("A3.8", 3, "partial-fraction form of the three-parameter identity", ("n",), ("q", "w", "x", "y"),
                  a38_lhs, a38_rhs, poles=_wx, sample=_n),
    RegistryEntry("A3.9", 3, "x = 0 case of the four-parameter identity", ("n",), ("q", "w", "y", "z"),
                  a39_lhs, a39_rhs, poles=_yz, sample=_n),
    RegistryEntry("C3.10", 3, "coefficient of w^r in the x = 0 identity", ("n", "r"), ("q", "y", "z"),
                  c310_lhs, c310_rhs, check=_check_r, poles=_yz, sample=shape_sampler("n", "r")),
]
