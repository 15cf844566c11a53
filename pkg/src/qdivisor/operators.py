"""Quantum-calculus operators acting exactly on polynomials in ``x``.

The base ``q`` is a fixed scalar carried by every :class:`QPoly`. All
operators act coefficient-wise:

=====================  ==========================================
q_derivative           c_k x^k  ->  c_k [k] x^(k-1)
jackson_integral       c_k x^k  ->  c_k x^(k+1) / [k+1]
op_P (power m)         c_k x^k  ->  c_k x^k / [k]^m
op_eta (power e)       c_k x^k  ->  c_k q^(e k) x^k
op_T                   f  ->  integral_0^x (f(1) - f(t)) / (1 - t) d_q t
=====================  ==========================================
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PoleError, SchemaError
from .qcore import q_number

__all__ = [
    "Eta",
    "OperatorChain",
    "P",
    "QPoly",
    "T",
    "apply_chain",
    "jackson_integral",
    "op_P",
    "op_T",
    "op_eta",
    "poch_poly",
    "poly_one_minus_poch",
    "q_derivative",
]


class QPoly:
    """Dense polynomial in x with coefficients in the field of ``q``."""

    __slots__ = ("q", "coeffs")

    def __init__(self, coeffs: Sequence, q):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.q = q

    @classmethod
    def monomial(cls, k: int, q, c=1) -> "QPoly":
        return cls([0] * k + [c], q)

    @classmethod
    def constant(cls, c, q) -> "QPoly":
        return cls([c], q)

    @property
    def degree(self) -> int | None:
        """Degree, or ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _check(self, other: "QPoly"):
        if other.q != self.q:
            raise SchemaError(f"mixing polynomials at q = {self.q} and q = {other.q}")

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, QPoly):
            other = QPoly.constant(other, self.q)
        self._check(other)
        n = max(len(self), len(other))
        return QPoly([self[k] + other[k] for k in range(n)], self.q)

    __radd__ = __add__

    def __neg__(self):
        return QPoly([-c for c in self.coeffs], self.q)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            return QPoly([c * other for c in self.coeffs], self.q)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return QPoly([], self.q)
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return QPoly(out, self.q)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return QPoly([c / scalar for c in self.coeffs], self.q)

    def __repr__(self):
        if not self.coeffs:
            return f"QPoly(0; q={self.q})"
        terms = [f"({c})x^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return f"QPoly({' + '.join(terms)}; q={self.q})"


def q_derivative(f: QPoly) -> QPoly:
    """(f(x) - f(xq)) / (x - xq), coefficient-wise."""
    q = f.q
    return QPoly([f[k] * q_number(k, q) for k in range(1, len(f))], q)


def jackson_integral(f: QPoly) -> QPoly:
    """Definite Jackson integral from 0 to x."""
    q = f.q
    out = [0]
    for k, c in enumerate(f.coeffs):
        d = q_number(k + 1, q)
        if d == 0:
            raise PoleError(f"[{k + 1}] vanishes at q = {q}")
        out.append(c / d)
    return QPoly(out, q)


def op_P(f: QPoly, m: int = 1) -> QPoly:
    """(P_q)^m f, where P_q f(x) = integral_0^x f(t)/t d_q t."""
    if m < 0:
        raise SchemaError(f"operator power must be >= 0, got {m}")
    if m == 0:
        return f
    if f[0] != 0:
        raise SchemaError("P_q needs an operand vanishing at x = 0")
    q = f.q
    out = [0]
    for k in range(1, len(f)):
        d = q_number(k, q) ** m
        if d == 0:
            raise PoleError(f"[{k}] vanishes at q = {q}")
        out.append(f[k] / d)
    return QPoly(out, q)


def _divided_difference_at_one(f: QPoly) -> QPoly:
    # (f(1) - f(t)) / (1 - t): coefficient of t^j is sum_{k > j} c_k
    n = len(f)
    out = [0] * max(0, n - 1)
    acc = 0
    for j in range(n - 2, -1, -1):
        acc = acc + f[j + 1]
        out[j] = acc
    return QPoly(out, f.q)


def op_T(f: QPoly, m: int = 1) -> QPoly:
    """(T_q)^m f, where T_q f(x) = integral_0^x (f(1) - f(t))/(1 - t) d_q t."""
    if m < 0:
        raise SchemaError(f"operator power must be >= 0, got {m}")
    for _ in range(m):
        f = jackson_integral(_divided_difference_at_one(f))
    return f


def op_eta(f: QPoly, e: int = 1) -> QPoly:
    """eta_x^e f(x) = f(x q^e)."""
    if e < 0:
        raise SchemaError(f"shift power must be >= 0, got {e}")
    if e == 0:
        return f
    qe = f.q**e
    out = []
    scale = 1
    for c in f.coeffs:
        out.append(c * scale)
        scale = scale * qe
    return QPoly(out, f.q)


def poly_one_minus_poch(n: int, q) -> QPoly:
    """The polynomial 1 - (x; q)_n expanded in x."""
    if n < 0:
        raise SchemaError(f"n must be >= 0, got {n}")
    poch = QPoly.constant(1, q)
    qi = 1
    for _ in range(n):
        poch = poch * QPoly([1, -qi], q)
        qi = qi * q
    return QPoly.constant(1, q) - poch


# -- operator chains ---------------------------------------------------------

@dataclass(frozen=True)
class Eta:
    power: int


@dataclass(frozen=True)
class P:
    power: int


@dataclass(frozen=True)
class T:
    power: int


_APPLY = {Eta: op_eta, P: op_P, T: op_T}


@dataclass(frozen=True)
class OperatorChain:
    """Product of primitive operators, written left to right, applied right to left."""

    steps: tuple = ()

    def __post_init__(self):
        for s in self.steps:
            if type(s) not in _APPLY:
                raise SchemaError(f"unknown operator step {s!r}")
            if s.power < 0:
                raise SchemaError(f"operator power must be >= 0 in {s!r}")

    @classmethod
    def eta_P_T(cls, m_vec: Sequence[int]) -> "OperatorChain":
        """(eta^{m_k} P^{m_k} T) ... (eta^{m_1} P^{m_1} T); the m_1 block acts first."""
        steps = []
        for m in reversed(m_vec):
            steps += [Eta(m), P(m), T(1)]
        return cls(tuple(steps))

    @classmethod
    def T_eta_P(cls, m_vec: Sequence[int]) -> "OperatorChain":
        """(T^{m_k} eta P) ... (T^{m_1} eta P); the m_1 block acts first."""
        steps = []
        for m in reversed(m_vec):
            steps += [T(m), Eta(1), P(1)]
        return cls(tuple(steps))

    def __matmul__(self, other: "OperatorChain") -> "OperatorChain":
        return OperatorChain(self.steps + other.steps)


def apply_chain(chain: OperatorChain, f: QPoly) -> QPoly:
    for step in reversed(chain.steps):
        f = _APPLY[type(step)](f, step.power)
    return f


def poch_poly(a, n: int, q) -> QPoly:
    """(a x; q)_n as a polynomial in x (helper for closed forms)."""
    out = QPoly.constant(1, q)
    qi = 1
    for _ in range(n):
        out = out * QPoly([1, -a * qi], q)
        qi = qi * q
    return out

