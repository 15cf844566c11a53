"""Data types shared by the registry entries."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Mapping

from ..errors import SchemaError
from ..qcore import ParamEnv, h_range, parse_scalar

__all__ = ["Bounds", "IdentityInstance", "RegistryEntry", "collapsed", "inv_kernel", "lambert", "nonzero",
           "shifted_factors"]

SHAPE_INTS = ("n", "k", "r", "m", "l", "i")
SHAPE_VECS = ("m_vec", "l_vec")
ENV_KEYS = ("q", "x", "z", "t", "y", "w", "z_vec", "a")
DESK_CAPS = {"n": 12, "k": 4, "entry": 4}


@dataclass(frozen=True)
class IdentityInstance:
    """One verifiable data point: an identity id, its shape integers and a ParamEnv."""

    id: str
    env: ParamEnv = field(default_factory=ParamEnv)
    n: int | None = None
    k: int | None = None
    r: int | None = None
    m: int | None = None
    l: int | None = None
    i: int | None = None
    m_vec: tuple = ()
    l_vec: tuple = ()
    trunc: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "m_vec", tuple(self.m_vec))
        object.__setattr__(self, "l_vec", tuple(self.l_vec))

    def with_(self, **changes) -> "IdentityInstance":
        env_changes = {key: changes.pop(key) for key in list(changes) if key in ENV_KEYS}
        inst = replace(self, **changes)
        if env_changes:
            inst = replace(inst, env=inst.env.with_(**env_changes))
        return inst

    def to_dict(self) -> dict:
        out = {"id": self.id}
        for key in SHAPE_INTS + ("trunc",):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        for key in SHAPE_VECS:
            if getattr(self, key):
                out[key] = list(getattr(self, key))
        for key, val in self.env.items():
            out[key] = list(val) if key == "z_vec" else val
        return out

    @classmethod
    def from_params(cls, id: str, params: Mapping) -> "IdentityInstance":
        """Build from ``{"n": "2", "q": "1/2", "m_vec": "1:2", ...}``-style text or values."""
        shape, env = {}, {}
        for key, val in params.items():
            key = "trunc" if key == "R" else key
            if key in SHAPE_INTS or key == "trunc":
                shape[key] = _parse_int(key, val)
            elif key in SHAPE_VECS:
                shape[key] = tuple(_parse_int(key, v) for v in _split_vec(val))
            elif key == "z_vec":
                env[key] = tuple(_split_vec(val))
            elif key in ENV_KEYS:
                env[key] = val
            else:
                raise SchemaError(f"unknown parameter {key!r}")
        return cls(id=id, env=ParamEnv.parse(env), **shape)


def _split_vec(val):
    if isinstance(val, str):
        return [v for v in val.replace(";", ":").split(":") if v.strip()]
    return list(val)


def _parse_int(key, val) -> int:
    try:
        f = parse_scalar(val)
    except SchemaError:
        raise SchemaError(f"{key} must be an integer, got {val!r}") from None
    if f.denominator != 1:
        raise SchemaError(f"{key} must be an integer, got {val!r}")
    return int(f)


@dataclass(frozen=True)
class Bounds:
    """Size caps for random instances."""

    n: int = 8
    k: int = 3
    entry: int = 3

    def __post_init__(self):
        for key, cap in DESK_CAPS.items():
            val = getattr(self, key)
            if not 1 <= val <= cap:
                raise SchemaError(f"bound {key} must lie in [1, {cap}], got {val}")

    @classmethod
    def parse(cls, text: str | None) -> "Bounds":
        if not text:
            return cls()
        kw = {}
        for part in text.split(","):
            if not part.strip():
                continue
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in ("n", "k", "entry", "m", "l"):
                raise SchemaError(f"unknown bound {key!r}")
            kw["entry" if key in ("m", "l") else key] = _parse_int(key, val)
        return cls(**kw)

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class RegistryEntry:
    """How to validate, sample and evaluate one identity."""

    id: str
    section: int
    summary: str
    shape: tuple
    symbols: tuple
    lhs: Callable
    rhs: Callable
    backend: str = "exact"
    check: Callable | None = None
    poles: Callable | None = None
    sample: Callable | None = None
    sample_env: Callable | None = None
    tail: Callable | None = None
    tolerance: object = None
    printed: Mapping = field(default_factory=dict)
    vector: str | None = None
    vector_len: str = "k"

    def params(self) -> tuple:
        out = list(self.shape)
        if self.vector:
            out.append(self.vector)
        out += list(self.symbols)
        if self.backend == "exact+tail":
            out.append("trunc")
        return tuple(out)


# -- helpers shared by the section modules -----------------------------------

def lambert(q):
    return lambda s: q**s / (1 - q**s)


def inv_kernel(q):
    return lambda s: 1 / (1 - q**s)


def collapsed(m: int, i: int, p: int, kernel):
    """kernel(i) * h_{m-1}(kernel(i), ..., kernel(p)), read as [i == p] when m = 0."""
    if m == 0:
        return 1 if i == p else 0
    return kernel(i) * h_range(m - 1, i, p, kernel)


def shifted_factors(label: str, value, q, lo: int, hi: int):
    """Denominator factors 1 - value*q^s for lo <= s <= hi, labelled for error messages."""
    for s in range(lo, hi + 1):
        yield f"1 - {label}*q^{s}", 1 - value * q**s


def nonzero(label: str, value):
    yield label, value

