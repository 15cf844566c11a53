"""Truncated infinite products and series at a fixed binary precision.

Every routine takes its precision as an argument and builds values in a
private :class:`mpmath.ctx_mp.MPContext`, so nothing here touches the global
``mpmath.mp`` state. Each truncated quantity comes back together with a
:class:`Truncation` record.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from mpmath.ctx_mp import MPContext

from ..errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "DEFAULT_K",
    "DEFAULT_PREC",
    "K_MAX",
    "Truncation",
    "context",
    "qpoch_infinite",
    "qpoch_real_order",
    "real",
    "shifted_sum_real",
    "sum_series",
]

DEFAULT_PREC = 192
DEFAULT_K = 128
K_MAX = 4096
GUARD_BITS = 32
RATIO_WINDOW = 8


@dataclass(frozen=True)
class Truncation:
    K: int
    tail_bound: object
    converged: bool = True

    def __add__(self, other: "Truncation") -> "Truncation":
        return Truncation(max(self.K, other.K), self.tail_bound + other.tail_bound,
                          self.converged and other.converged)


@lru_cache(maxsize=32)
def context(prec: int = DEFAULT_PREC) -> MPContext:
    """A private mpmath context at ``prec`` bits (cached; treat as read-only)."""
    if prec < 16:
        raise DomainError(f"precision must be at least 16 bits, got {prec}")
    ctx = MPContext()
    ctx.prec = prec
    return ctx


def real(ctx: MPContext, v):
    """Convert ints, Fractions, decimal strings and mpf values into ``ctx``."""
    if isinstance(v, Fraction):
        return ctx.mpf(v.numerator) / v.denominator
    if isinstance(v, str) and "/" in v:
        p, q = v.split("/")
        return ctx.mpf(int(p)) / int(q)
    return ctx.mpf(v)


def _check_q(ctx, q):
    if not 0 < q < 1:
        raise DomainError(f"the numeric backend needs 0 < q < 1, got q = {ctx.nstr(q, 12)}")


def qpoch_infinite(a, q, prec: int = DEFAULT_PREC):
    """(a; q)_inf truncated once |a q^K| < 2^-prec.

    With u = |a q^K| <= 1/2 the omitted factors satisfy
    |log prod_{j>=K} (1 - a q^j)| <= 2u/(1 - q), which gives the tail bound
    |P_K| (exp(2u/(1 - q)) - 1).
    """
    ctx = context(prec)
    a, q = real(ctx, a), real(ctx, q)
    _check_q(ctx, q)
    if not a:
        return ctx.mpf(1), Truncation(0, ctx.mpf(0))
    eps = ctx.ldexp(1, -prec)
    out = ctx.mpf(1)
    term = a
    K = 0
    while abs(term) >= eps or abs(term) > 0.5:
        out *= 1 - term
        term *= q
        K += 1
        if K > 64 * prec:
            raise ConvergenceError("infinite product did not reach the stopping rule")
    u = abs(term)
    tail = abs(out) * (ctx.exp(2 * u / (1 - q)) - 1)
    return out, Truncation(K, tail)


def qpoch_real_order(x, q, n, prec: int = DEFAULT_PREC):
    """(x; q)_n = (x; q)_inf / (x q^n; q)_inf for real n; q^n = exp(n log q)."""
    ctx = context(prec)
    wide = context(prec + GUARD_BITS)
    xw, qw, nw = real(wide, x), real(wide, q), real(wide, n)
    _check_q(wide, qw)
    if not xw:
        return ctx.mpf(1), Truncation(0, ctx.mpf(0))
    qn = wide.exp(nw * wide.log(qw))
    num, tn = qpoch_infinite(xw, qw, prec + GUARD_BITS)
    den, td = qpoch_infinite(xw * qn, qw, prec + GUARD_BITS)
    if abs(den) <= td.tail_bound or abs(den) < wide.ldexp(1, -prec):
        raise PoleError(f"(x q^n; q)_inf vanishes at n = {wide.nstr(nw, 12)}")
    value = num / den
    # first-order propagation of the two product tails
    tail = (tn.tail_bound + abs(value) * td.tail_bound) / abs(den)
    return real(ctx, value), Truncation(max(tn.K, td.K), real(ctx, tail), tn.converged and td.converged)


def sum_series(term: Callable[[int], object], prec: int = DEFAULT_PREC, K: int = DEFAULT_K, *,
               start: int = 1, K_max: int = K_MAX):
    """sum_{i >= start} term(i), truncated adaptively.

    Once the largest term ratio over the last few computed terms is rho < 1,
    the tail is bounded by 2 |last| rho/(1 - rho). K doubles (up to K_max)
    until that bound is below 2^-prec * max(1, |sum|). If it never drops
    below but rho < 1 was reached, the sum is returned with its (larger)
    bound and ``converged=False``.
    """
    ctx = context(prec)
    if K < 1:
        raise DomainError(f"truncation K must be >= 1, got {K}")
    terms = []
    total = ctx.mpf(0)
    target = K
    while True:
        while len(terms) < target:
            t = term(start + len(terms))
            terms.append(t)
            total += t
        tail = _ratio_tail(ctx, terms)
        if tail is not None and tail <= ctx.ldexp(max(ctx.one, abs(total)), -prec):
            return total, Truncation(len(terms), tail)
        if target >= K_max:
            if tail is None:
                raise ConvergenceError(f"series terms are not geometrically decaying by K = {K_max}")
            return total, Truncation(len(terms), tail, converged=False)
        target = min(2 * target, K_max)


def _ratio_tail(ctx, terms):
    window = [abs(t) for t in terms[-RATIO_WINDOW:]]
    if not any(window):
        return ctx.mpf(0)
    rho = ctx.mpf(0)
    for a, b in zip(window, window[1:]):
        if not a:
            if b:
                return None
            continue
        rho = max(rho, b / a)
    if rho >= 1:
        return None
    return 2 * window[-1] * rho / (1 - rho)


def shifted_sum_real(a: Callable[[object], object], n, prec: int = DEFAULT_PREC, K: int = DEFAULT_K):
    """sum_{1 <= i <= n} a_i read as sum_{i >= 1} (a_i - a_{i+n}) for real n."""
    ctx = context(prec)
    n = real(ctx, n)
    if not n:
        return ctx.mpf(0), Truncation(0, ctx.mpf(0))
    return sum_series(lambda i: a(i) - a(i + n), prec, K)
