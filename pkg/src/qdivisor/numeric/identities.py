"""Both sides of the infinite-sum identities, evaluated at a fixed precision.

Each side function takes an instance-like object (``.env`` plus shape
integers such as ``.k``, ``.n``, ``.i``), a precision in bits and a starting
truncation ``K``, and returns ``(value, Truncation)``.
"""
from __future__ import annotations

from dataclasses import replace

from ..errors import DomainError, SchemaError
from ..qcore import binom2
from .series import DEFAULT_K, DEFAULT_PREC, Truncation, context, qpoch_infinite, qpoch_real_order, real, sum_series

__all__ = ["NUMERIC_SIDES"]


class _Poch:
    """Prefix products (a; q)_j, extended on demand."""

    def __init__(self, a, q):
        self.a, self.q = a, q
        self.vals = [1]
        self.qj = 1

    def __call__(self, j: int):
        while len(self.vals) <= j:
            self.vals.append(self.vals[-1] * (1 - self.a * self.qj))
            self.qj = self.qj * self.q
        return self.vals[j]


def _env(inst, prec, *names):
    ctx = context(prec)
    env = inst.env
    env.require(names)
    vals = [real(ctx, getattr(env, s)) for s in names]
    if "q" in names:
        q = vals[names.index("q")]
        if not 0 < q < 1:
            raise DomainError(f"the numeric backend needs 0 < q < 1, got q = {ctx.nstr(q, 12)}")
    return ctx, vals


def _ratio(num, tn, den, td):
    """num/den with first-order propagation of both tails."""
    v = num / den
    return v, Truncation(max(tn.K, td.K), (tn.tail_bound + abs(v) * td.tail_bound) / abs(den),
                         tn.converged and td.converged)


# -- divisor generating function ---------------------------------------------

def k12_lhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (q,) = _env(inst, prec, "q")
    return sum_series(lambda i: q**i / (1 - q**i), prec, K)


def k12_rhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (q,) = _env(inst, prec, "q")
    qq = _Poch(q, q)
    return sum_series(lambda r: (-1) ** (r - 1) * q ** binom2(r + 1) / (qq(r) * (1 - q**r)), prec, K)


# -- auxiliary series facts ---------------------------------------------------

def heine_lhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (a, q, t) = _env(inst, prec, "a", "q", "t")
    if abs(t) >= 1:
        raise DomainError("the series needs |t| < 1")
    pa, qq = _Poch(a, q), _Poch(q, q)
    return sum_series(lambda j: pa(j) * t**j / qq(j), prec, K, start=0)


def heine_rhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (a, q, t) = _env(inst, prec, "a", "q", "t")
    num, tn = qpoch_infinite(a * t, q, prec)
    den, td = qpoch_infinite(t, q, prec)
    return _ratio(num, tn, den, td)


def pfrac_lhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (q, y) = _env(inst, prec, "q", "y")
    qq = _Poch(q, q)
    return sum_series(lambda j: (-1) ** j * q ** binom2(j + 1) / (qq(j) * (1 - y * q**j)), prec, K, start=0)


def pfrac_rhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (q, y) = _env(inst, prec, "q", "y")
    num, tn = qpoch_infinite(q, q, prec)
    den, td = qpoch_infinite(y, q, prec)
    return _ratio(num, tn, den, td)


def _fine_shape(inst):
    n, i = inst.n, inst.i
    if n is None or i is None or not 0 <= i <= n:
        raise SchemaError("needs integers 0 <= i <= n")
    return n, i


def fine_lhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (q, y) = _env(inst, prec, "q", "y")
    n, i = _fine_shape(inst)
    qq, num, den = _Poch(q, q), _Poch(y * q**i, q), _Poch(y * q ** (n + 1), q)
    return sum_series(lambda j: (-1) ** j * q ** (binom2(j + 1) + (n - i) * j) * num(j) / (qq(j) * den(j)),
                      prec, K, start=0)


def fine_rhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (q, y) = _env(inst, prec, "q", "y")
    n, i = _fine_shape(inst)
    num, tn = qpoch_infinite(q ** (n - i + 1), q, prec)
    den, td = qpoch_infinite(y * q ** (n + 1), q, prec)
    return _ratio(num, tn, den, td)


# -- N2.16: two levels of TA1.9 with zero exponents, at a real order a ---

def _n216_terms(inst, prec, signed):
    ctx, (a, q, x) = _env(inst, prec, "a", "q", "x")
    qq = _Poch(q, q)
    state = {"i": 0, "num": ctx.mpf(1)}

    def term(i):
        # i arrives in increasing order, so extend the product incrementally
        while state["i"] < i:
            state["num"] *= 1 - q ** (a - state["i"])
            state["i"] += 1
        sign = (-1) ** (i - 1) if signed else 1
        return sign * state["num"] * q ** ((i * i + 3 * i) // 2) * (1 - x**i) / (qq(i) * (1 - q**i) ** 2)

    return term


def n216_lhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    return sum_series(_n216_terms(inst, prec, True), prec, K)


def n216_lhs_printed(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    return sum_series(_n216_terms(inst, prec, False), prec, K)


def n216_rhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, (a, q, x) = _env(inst, prec, "a", "q", "x")
    px = _Poch(x, q)
    pxa = _Poch(x * q**a, q)
    lam = lambda s: q**s / (1 - q**s)

    inner = {"i": 0, "acc": ctx.mpf(0)}

    def t1(i):
        while inner["i"] < i:
            inner["i"] += 1
            inner["acc"] += lam(inner["i"]) * px(inner["i"])
        return lam(i) * inner["acc"]

    shifted = {"i": 0, "acc": ctx.mpf(0)}

    def t3(s):
        # s = r + i with r, i >= 1; the i-sum runs over 1..s-1
        while shifted["i"] < s - 1:
            shifted["i"] += 1
            shifted["acc"] += lam(shifted["i"] + a)
        return lam(s + a) * pxa(s) * shifted["acc"]

    T1, e1 = sum_series(t1, prec, K)
    S1, f1 = sum_series(lambda i: lam(i + a), prec, K)
    S2, f2 = sum_series(lambda i: lam(i) * px(i), prec, K)
    T3, e3 = sum_series(t3, prec, K, start=2)
    R, eR = qpoch_real_order(x, q, a, prec)
    value = T1 - S1 * S2 + R * T3
    tail = (e1.tail_bound + abs(S1) * f2.tail_bound + abs(S2) * f1.tail_bound
            + abs(R) * e3.tail_bound + abs(T3) * eR.tail_bound)
    return value, Truncation(max(e1.K, f1.K, f2.K, e3.K), tail, all(e.converged for e in (e1, f1, f2, e3)))


# -- C4.8: the n -> infinity limit of PC1.12 ----------------------------------

def _c48_env(inst, prec):
    ctx, (q, z, t) = _env(inst, prec, "q", "z", "t")
    k = inst.k
    if k is None or k < 1:
        raise SchemaError("needs an integer k >= 1")
    if not (abs(z) < 1 and abs(t) < 1):
        raise DomainError("the limit is only evaluated for |z| < 1 and |t| < 1")
    return ctx, q, z, t, k


def c48_lhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, q, z, t, k = _c48_env(inst, prec)
    g = [None] + [(lambda j: (lambda i: q**i / ((1 - q**i) * (1 - z * q ** (i - j)))))(j) for j in range(1, k + 1)]
    tau = lambda r: 1 / (1 - z * q ** (r - k - 1)) - 1 / (1 - t * q ** (r - 1))
    # F[j] = running value of the sum over levels j..k+1 with i_{j-1} = current index
    F = [ctx.mpf(0)] * (k + 2)
    seen = {"i": 0}

    def term(i):
        while seen["i"] < i:
            p = seen["i"] = seen["i"] + 1
            F[k + 1] += tau(p)
            for j in range(k, 1, -1):
                F[j] += g[j](p) * F[j + 1]
        return g[1](i) * F[2]

    return sum_series(term, prec, K)


def c48_rhs(inst, prec=DEFAULT_PREC, K=DEFAULT_K):
    ctx, q, z, t, k = _c48_env(inst, prec)
    pre = 1
    for j in range(k):
        pre *= 1 - z * q ** (j - k)
    pa, pt = _Poch(t * q**k / z, q), _Poch(t, q)
    value, tr = sum_series(lambda r: pa(r) * z**r / (pt(r) * (1 - q**r) ** (k + 1)), prec, K)
    return value / pre, replace(tr, tail_bound=tr.tail_bound / abs(pre))


NUMERIC_SIDES = {
    "K1.2": (k12_lhs, k12_rhs),
    "N2.16": (n216_lhs, n216_rhs),
    "C4.8": (c48_lhs, c48_rhs),
    "HEINE": (heine_lhs, heine_rhs),
    "PFRAC": (pfrac_lhs, pfrac_rhs),
    "FINE": (fine_lhs, fine_rhs),
}
