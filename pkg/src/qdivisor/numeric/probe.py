"""Evaluate the finite-n identities with n replaced by a real number a.

Finite sums sum_{1 <= i <= n} f(i) are read as sum_{i >= 1} (f(i) - f(i + a))
and (x; q)_n as (x; q)_inf / (x q^a; q)_inf. Nested sums are first flattened
into a chain whose level weights depend only on their own index; each level
is then a shifted sum of the level below. Nothing here asserts that the
identities hold off the integers; callers only get numbers back.
"""
from __future__ import annotations

from dataclasses import replace

from fractions import Fraction

from ..errors import ConvergenceError, DomainError, SchemaError
from ..qcore import binom2
from .series import (DEFAULT_K, DEFAULT_PREC, K_MAX, Truncation, _ratio_tail, context, qpoch_real_order, real,
                     sum_series)

__all__ = ["PROBE_IDS", "probe_sides", "real_chain_sum"]

PROBE_IDS = ("PB1.11", "PC1.12")


def _is_int(ctx, v) -> bool:
    return isinstance(v, int) or ctx.isint(v)


def _pow(ctx, base, e):
    if _is_int(ctx, e):
        return base ** int(e)
    if base <= 0:
        raise DomainError("a non-integer power of a non-positive base is not real")
    return ctx.power(base, e)


def _poch(ctx, base, q, e, prec):
    """(base; q)_e for integer or real order e."""
    if _is_int(ctx, e):
        e = int(e)
        out, qj = ctx.mpf(1), ctx.mpf(1)
        if e >= 0:
            for _ in range(e):
                out *= 1 - base * qj
                qj *= q
            return out
        # (b; q)_{-m} = 1/(b q^{-m}; q)_m
        return 1 / _poch(ctx, base * q**e, q, -e, prec)
    return qpoch_real_order(base, q, e, prec)[0]


def real_chain_sum(a, weights, prec: int = DEFAULT_PREC, K: int = DEFAULT_K):
    """Sum over a >= i_1 >= ... >= i_L >= 1 of prod_j weights[j](i_j), for real a.

    Works level by level from the innermost one: F_L(p) = sum_{i<=p} w_L(i),
    F_j(p) = sum_{i<=p} w_j(i) F_{j+1}(i). Values at integer points are
    prefix sums; values at a + m come from F(a) = sum_{i>=1} (f(i) - f(a+i))
    followed by F(a + m) = F(a + m - 1) + f(a + m).
    """
    ctx = context(prec)
    if not _is_int(ctx, a):
        a = real(ctx, a)
    elif not isinstance(a, int):
        a = int(a)
    if a == 0:
        return ctx.mpf(0), Truncation(0, ctx.mpf(0))
    N = K
    while True:
        out = _chain_pass(ctx, a, weights, N)
        if out is not None:
            return out
        if N >= K_MAX:
            raise ConvergenceError(f"shifted chain sum did not settle by K = {K_MAX}")
        N = min(2 * N, K_MAX)


def _chain_pass(ctx, a, weights, N):
    Fi_next = [ctx.mpf(1)] * (N + 1)
    Fa_next = [ctx.mpf(1)] * (N + 1)
    err_next = ctx.mpf(0)
    for w in reversed(weights):
        wi = [None] + [w(i) for i in range(1, N + 1)]
        wa = [None] + [w(a + m) for m in range(1, N + 1)]
        f = [wi[i] * Fi_next[i] for i in range(1, N + 1)]
        if _ratio_tail(ctx, f) is None:
            if _stalled(ctx, f):
                raise ConvergenceError("summands do not tend to zero, so the shifted-sum reading does not apply")
            return None
        terms = [f[i - 1] - wa[i] * Fa_next[i] for i in range(1, N + 1)]
        tail = _ratio_tail(ctx, terms)
        if tail is None:
            return None
        Fi = [ctx.mpf(0)] * (N + 1)
        for p in range(1, N + 1):
            Fi[p] = Fi[p - 1] + f[p - 1]
        Fa = [ctx.fsum(terms)]
        for m in range(1, N + 1):
            Fa.append(Fa[-1] + wa[m] * Fa_next[m])
        spread = ctx.fsum(abs(v) for v in wa[1:])
        err_next = tail + 2 * spread * err_next
        Fi_next, Fa_next = Fi, Fa
    return Fa_next[0], Truncation(N, err_next)


def _stalled(ctx, f):
    # the summands have settled on a nonzero limit rather than decaying slowly
    a, b = abs(f[-2]), abs(f[-1])
    return bool(a) and abs(b / a - 1) < ctx.ldexp(1, -20)


class _PrefixChain:
    """inner(p) = sum over p >= i_1 >= ... >= i_L >= 1 of prod w_j(i_j) * terminal(i_L), for p = 1, 2, ..."""

    def __init__(self, ctx, weights, terminal):
        self.w, self.terminal = weights, terminal
        self.F = [ctx.mpf(0)] * (len(weights) + 1)
        self.p = 0

    def __call__(self, p):
        L = len(self.w)
        if L == 0:
            return self.terminal(p)
        while self.p < p:
            self.p += 1
            s = self.p
            self.F[L] += self.w[L - 1](s) * self.terminal(s)
            for j in range(L - 1, 0, -1):
                self.F[j] += self.w[j - 1](s) * self.F[j + 1]
        return self.F[1]


def _gauss_real(ctx, a, i, q, qq):
    num = ctx.mpf(1)
    for j in range(i):
        num *= 1 - _pow(ctx, q, a - j)
    return num / qq(i)


class _QQ:
    def __init__(self, ctx, q):
        self.q, self.vals = q, [ctx.mpf(1)]

    def __call__(self, i):
        while len(self.vals) <= i:
            j = len(self.vals)
            self.vals.append(self.vals[-1] * (1 - self.q**j))
        return self.vals[i]


def _order(ctx, a):
    a = Fraction(a)
    return a.numerator if a.denominator == 1 else real(ctx, a)


# -- PB1.11 -------------------------------------------------------------------

def _pb111(inst, prec, K):
    ctx = context(prec)
    env = inst.env
    env.require(("a", "q", "x", "z_vec"))
    l_vec = tuple(inst.l_vec)
    k = len(l_vec)
    if k < 1 or len(env.z_vec) != k or any(l < 1 for l in l_vec):
        raise SchemaError("needs l_vec with entries >= 1 and z_vec of the same length")
    a = _order(ctx, env.a)
    q, x = real(ctx, env.q), real(ctx, env.x)
    if not 0 < q < 1:
        raise DomainError("the probe needs 0 < q < 1")
    z = [real(ctx, v) for v in env.z_vec]

    weights = []
    for j in range(k):
        zj = z[j]
        u = (lambda zj: lambda s: 1 / (zj - _pow(ctx, q, s)))(zj)
        weights += [u] * (l_vec[j] - 1)
        if j < k - 1:
            zn = z[j + 1]

            def level(s, zj=zj, zn=zn, u=u):
                qs = _pow(ctx, q, s)
                return (u(s) * qs * _pow(ctx, zj, s) / _pow(ctx, zn, s) * _poch(ctx, q / zj, q, s, prec)
                        / ((1 - qs) * _poch(ctx, q / zn, q, s, prec)))
        else:
            def level(s, zj=zj, u=u):
                return (u(s) * (1 - _pow(ctx, x, s)) * _pow(ctx, zj, s) * _poch(ctx, q / zj, q, s, prec)
                        / _poch(ctx, q, q, s, prec))
        weights.append(level)
    lhs = real_chain_sum(a, weights, prec, K)

    qq = _QQ(ctx, q)
    inner_w = [(lambda zj, l: lambda s: q**s / ((1 - q**s) * (zj - q**s) ** l))(z[j], l_vec[j]) for j in range(1, k)]
    inner = _PrefixChain(ctx, inner_w, lambda s: _poch(ctx, x, q, s, prec))
    term = lambda i: (_gauss_real(ctx, a, i, q, qq) * (-1) ** (i - 1) * q ** binom2(i + 1) / _pow(ctx, q, a * i)
                      / (z[0] - q**i) ** l_vec[0] * inner(i))
    series, tr = sum_series(term, prec, K)
    pre = _pow(ctx, z[0], a) * _poch(ctx, q / z[0], q, a, prec) / _poch(ctx, q, q, a, prec)
    return lhs, (pre * series, replace(tr, tail_bound=abs(pre) * tr.tail_bound))


# -- PC1.12 -------------------------------------------------------------------

def _pc112(inst, prec, K):
    ctx = context(prec)
    env = inst.env
    env.require(("a", "q", "z", "t"))
    k = inst.k
    if k is None or k < 1:
        raise SchemaError("needs an integer k >= 1")
    a = _order(ctx, env.a)
    q, z, t = real(ctx, env.q), real(ctx, env.z), real(ctx, env.t)
    if not 0 < q < 1:
        raise DomainError("the probe needs 0 < q < 1")

    weights = []
    for j in range(1, k + 1):
        weights.append(lambda s, j=j: _pow(ctx, q, s) / ((1 - _pow(ctx, q, s)) * (1 - z * _pow(ctx, q, s - j))))
    weights.append(lambda r: 1 / (1 - z * _pow(ctx, q, r - k - 1)) - 1 / (1 - t * _pow(ctx, q, r - 1)))
    lhs = real_chain_sum(a, weights, prec, K)

    qq = _QQ(ctx, q)
    den = _poch(ctx, z * q ** (-k), q, a + k, prec)
    term = lambda r: (_gauss_real(ctx, a, r, q, qq) * qq(r - 1) * _poch(ctx, t * q**k / z, q, r, prec)
                      * _poch(ctx, z, q, a - r, prec) * z**r
                      / (_poch(ctx, t, q, r, prec) * (1 - q**r) ** k))
    series, tr = sum_series(term, prec, K)
    return lhs, (series / den, replace(tr, tail_bound=tr.tail_bound / abs(den)))


_PROBES = {"PB1.11": _pb111, "PC1.12": _pc112}


def probe_sides(id: str, inst, prec: int = DEFAULT_PREC, K: int = DEFAULT_K):
    """((lhs, Truncation), (rhs, Truncation)) at the real order ``inst.env.a``."""
    try:
        fn = _PROBES[id]
    except KeyError:
        raise SchemaError(f"no real-order probe for {id!r}; choose from {', '.join(_PROBES)}") from None
    return fn(inst, prec, K)
