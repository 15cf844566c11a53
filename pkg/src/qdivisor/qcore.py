"""Primitive q-objects: q-numbers, q-Pochhammer symbols, Gaussian binomials,
complete homogeneous symmetric functions.

All routines only use ``+ - * /`` and integer powers on their scalar
arguments, so they work unchanged on :class:`fractions.Fraction` (the exact
field), on ``mpmath.mpf`` (the numeric backend) and on any other field-like
type such as :class:`qdivisor.laurent.Laurent`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import PoleError, SchemaError

__all__ = [
    "ParamEnv",
    "binom2",
    "complete_homogeneous",
    "gauss_binomial",
    "h_range",
    "parse_scalar",
    "q_number",
    "q_pochhammer",
]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal literal into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    m = _RATIONAL.match(s)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise SchemaError(f"zero denominator in rational literal {text!r}")
        return Fraction(int(m.group(1)), den)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational literal: {text!r}") from exc


def binom2(i: int) -> int:
    """C(i, 2) = i(i-1)/2; C(i+1, 2) is ``binom2(i + 1)``."""
    return i * (i - 1) // 2


def q_number(n: int, q):
    """The q-number [n] = (1 - q^n)/(1 - q)."""
    if n < 0:
        raise SchemaError(f"q_number needs n >= 0, got {n}")
    if q == 1:
        raise PoleError("q-number is singular at q = 1")
    if n == 0:
        return q - q
    return (1 - q**n) / (1 - q)


def q_pochhammer(a, q, n: int):
    """Finite q-Pochhammer symbol (a; q)_n = prod_{i=1..n} (1 - a q^(i-1))."""
    if n < 0:
        raise SchemaError(f"q_pochhammer needs n >= 0, got {n}")
    # q**0 keeps the empty product in q's number type, so that ratios of
    # empty products stay exact
    out = q**0
    qi = q**0
    for _ in range(n):
        out = out * (1 - a * qi)
        qi = qi * q
    return out


def gauss_binomial(n: int, r: int, q):
    """Gaussian binomial [n choose r]_q as a ratio of q-number products."""
    if n < 0:
        raise SchemaError(f"gauss_binomial needs n >= 0, got {n}")
    if r < 0 or r > n:
        return 0
    r = min(r, n - r)
    one = q**0
    if r == 0:
        return one
    num = one
    den = one
    for j in range(1, r + 1):
        dj = 1 - q**j
        if dj == 0:
            raise PoleError(f"[{j}] vanishes at q = {q}")
        num = num * (1 - q ** (n - j + 1))
        den = den * dj
    return num / den


def complete_homogeneous(k: int, args: Sequence):
    """h_k(args): sum over weakly increasing index k-tuples of products.

    Uses the recurrence h_k(a_1..a_n) = h_k(a_1..a_{n-1}) + a_n h_{k-1}(a_1..a_n).
    """
    if k < 0:
        raise SchemaError(f"complete symmetric function needs k >= 0, got {k}")
    if k == 0:
        return 1
    if len(args) == 0:
        raise SchemaError("complete symmetric function of an empty list with k >= 1")
    h = [1] + [0] * k
    for a in args:
        for j in range(1, k + 1):
            h[j] = h[j] + a * h[j - 1]
    return h[k]


def h_range(k: int, lo: int, hi: int, kernel: Callable[[int], object]):
    """h_k(kernel(lo), kernel(lo+1), ..., kernel(hi)) over consecutive exponents."""
    if lo > hi:
        raise SchemaError(f"h_range needs lo <= hi, got [{lo}, {hi}]")
    if k == 0:
        return 1
    try:
        args = [kernel(s) for s in range(lo, hi + 1)]
    except ZeroDivisionError as exc:
        raise PoleError(f"kernel has a pole in [{lo}, {hi}]") from exc
    return complete_homogeneous(k, args)


_SYMBOLS = ("q", "x", "z", "t", "y", "w")


@dataclass(frozen=True)
class ParamEnv:
    """Named assignment of the scalar symbols used by the identities.

    ``None`` marks an absent symbol. ``a`` is the real order used by the
    non-integer probes and is never required by exact identities.
    """

    q: object = None
    x: object = None
    z: object = None
    t: object = None
    y: object = None
    w: object = None
    z_vec: tuple = field(default_factory=tuple)
    a: object = None

    def __post_init__(self):
        if self.q is not None and (self.q == 0 or self.q == 1 or self.q == -1):
            raise SchemaError(f"q must avoid 0 and +-1, got {self.q}")
        object.__setattr__(self, "z_vec", tuple(self.z_vec))

    def require(self, names: Iterable[str]) -> None:
        missing = [n for n in names if n == "z_vec" and not self.z_vec or n != "z_vec" and getattr(self, n) is None]
        if missing:
            raise SchemaError(f"missing parameter(s): {', '.join(missing)}")

    def with_(self, **changes) -> "ParamEnv":
        return replace(self, **changes)

    def map(self, fn: Callable) -> "ParamEnv":
        """Apply ``fn`` to every present scalar (used to change the backend field)."""
        vals = {s: (None if getattr(self, s) is None else fn(getattr(self, s))) for s in _SYMBOLS}
        return ParamEnv(z_vec=tuple(fn(v) for v in self.z_vec),
                        a=None if self.a is None else fn(self.a), **vals)

    def items(self):
        for s in _SYMBOLS:
            v = getattr(self, s)
            if v is not None:
                yield s, v
        if self.z_vec:
            yield "z_vec", self.z_vec
        if self.a is not None:
            yield "a", self.a

    @classmethod
    def parse(cls, mapping: dict) -> "ParamEnv":
        kw = {}
        for key, val in mapping.items():
            if key == "z_vec":
                kw[key] = tuple(parse_scalar(v) for v in val)
            elif key in _SYMBOLS or key == "a":
                kw[key] = parse_scalar(val)
            else:
                raise SchemaError(f"unknown parameter symbol {key!r}")
        return cls(**kw)
