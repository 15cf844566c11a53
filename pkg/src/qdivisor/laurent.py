"""Truncated Laurent series in a local parameter ``eps`` over exact rationals.

Used to take limits such as ``(1 - t) * F(t)`` at ``t = 1`` exactly: set
``t = 1 + eps``, evaluate ``F`` with the ordinary (generic) evaluators, then
read off the constant coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import PoleError

DEFAULT_ORDER = 6


class Laurent:
    """eps^val * (c_0 + c_1 eps + ...), known up to (excluding) eps^order."""

    __slots__ = ("coeffs", "val", "order")

    def __init__(self, coeffs, val: int = 0, order: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = val + DEFAULT_ORDER
        # normalise: strip leading zeros, truncate at the absolute order
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        coeffs = coeffs[: max(0, order - val)]
        if not coeffs:
            val = order
        self.coeffs = coeffs
        self.val = val
        self.order = order

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "Laurent":
        return cls([1], 1, order)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "Laurent":
        return cls([c], 0, order)

    def _lift(self, other) -> "Laurent":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, (int, Rational)):
            return Laurent([other], 0, self.order)
        return NotImplemented

    def coefficient(self, k: int) -> Fraction:
        if k >= self.order:
            raise ValueError(f"coefficient of eps^{k} is beyond the known order {self.order}")
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        d = self - o
        return d.is_zero()

    def __hash__(self):
        return hash((tuple(self.coeffs), self.val, self.order))

    def __neg__(self):
        return Laurent([-c for c in self.coeffs], self.val, self.order)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        order = min(self.order, o.order)
        lo = min(self.val, o.val)
        n = max(0, order - lo)
        out = [Fraction(0)] * n
        for src in (self, o):
            for i, c in enumerate(src.coeffs):
                j = src.val + i - lo
                if j < n:
                    out[j] += c
        return Laurent(out, lo, order)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            order = min(self.order + o.val, o.order + self.val)
            return Laurent([], self.val + o.val, order)
        val = self.val + o.val
        order = min(self.order + o.val, o.order + self.val)
        n = max(0, order - val)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            for j, b in enumerate(o.coeffs[: n - i]):
                out[i + j] += a * b
        return Laurent(out, val, order)

    __rmul__ = __mul__

    def inverse(self) -> "Laurent":
        if self.is_zero():
            raise PoleError("division by a series that vanishes to the tracked order")
        rel = self.order - self.val
        c0 = self.coeffs[0]
        inv = [Fraction(1) / c0]
        for k in range(1, rel):
            s = sum(self.coeffs[i] * inv[k - i] for i in range(1, min(k, len(self.coeffs) - 1) + 1))
            inv.append(-s / c0)
        return Laurent(inv, -self.val, -self.val + rel)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Laurent.constant(1, max(self.order, DEFAULT_ORDER))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        terms = " + ".join(f"({c})*eps^{self.val + i}" for i, c in enumerate(self.coeffs)) or "0"
        return f"Laurent({terms} + O(eps^{self.order}))"
