"""Special cases linking one registry identity to another.

A reduction maps the parameters of a target identity into a specialisation
of the source identity. The check evaluates the source's two sides under the
mapping and the target's two sides directly; it passes when all four values
agree exactly.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import PoleError, SchemaError
from ..laurent import Laurent
from ..qcore import ParamEnv, q_pochhammer as poch
from ..report import VerificationReport
from .base import Bounds, IdentityInstance
from .core import eval_side
from .sampling import rand_q, rand_rational, rng_for

__all__ = ["REDUCTIONS", "Reduction", "get_reduction", "random_reduction_params", "reduction_check"]


@dataclass(frozen=True)
class Reduction:
    name: str
    source: str
    target: str
    mapping: str
    sample: Callable
    source_sides: Callable
    target_inst: Callable


def _exact(v):
    return Fraction(v) if isinstance(v, int) else v


def _inst(id, env, **shape):
    env = {key: tuple(map(_exact, v)) if key == "z_vec" else _exact(v) for key, v in env.items()}
    return IdentityInstance(id=id, env=ParamEnv(**env), **shape)


def _both(id, inst, transform=lambda v: v):
    return tuple(transform(eval_side(id, side, inst)) for side in ("lhs", "rhs"))


# TA1.8 with all m_j = 0 at base 1/q: the difference of the x = 1 and x -> -x
# terminals, times (-1)^m, is the FL1.4 sum at base q.
def _ta_fl_src(p):
    m = p["m"]
    mk = lambda x: _inst("TA1.8", {"q": 1 / p["q"], "x": x}, n=p["n"], k=m, m_vec=(0,) * m)
    one, neg = _both("TA1.8", mk(1)), _both("TA1.8", mk(-p["x"]))
    return tuple((-1) ** m * (a - b) for a, b in zip(one, neg))


# TA1.8 at depth 1 with m_1 = m - 1 and x = 1 is P1.3 verbatim.
def _ta_p_src(p):
    return _both("TA1.8", _inst("TA1.8", {"q": p["q"], "x": 1}, n=p["n"], k=1, m_vec=(p["m"] - 1,)))


def _pb_c_src(p):
    return _both("PB1.11", _inst("PB1.11", {"q": p["q"], "x": p["x"], "z_vec": (p["z"],)}, n=p["n"], k=1,
                                 l_vec=(p["l"],)))


# C3.4 scaled by (-1)^l (q;q)_n / (z^n (q/z;q)_n) is the difference of the
# Z1.5 sums at base 1/q with x = 1 and with x.
def _c_z_src(p):
    q, z, n, l = p["q"], p["z"], p["n"], p["l"]
    scale = (-1) ** l * poch(q, q, n) / (z**n * poch(q / z, q, n))
    return _both("C3.4", _inst("C3.4", {"q": q, "x": p["x"], "z": z}, n=n, l=l), lambda v: scale * v)


def _c_z_tgt(p):
    def mk(x):
        return _inst("Z1.5", {"q": 1 / p["q"], "x": x, "z": p["z"]}, n=p["n"], m=p["l"])
    return mk


# C3.4 at l = 1, z = 1/y, x = w, scaled by y^(n-1) (q;q)_n / (yq;q)_n, is the
# difference of FL3.5 at w = 1 and at w.
def _c_fl_src(p):
    q, y, n = p["q"], p["y"], p["n"]
    scale = y ** (n - 1) * poch(q, q, n) / poch(y * q, q, n)
    return _both("C3.4", _inst("C3.4", {"q": q, "x": p["w"], "z": 1 / y}, n=n, l=1), lambda v: scale * v)


def _c_fl_tgt(p):
    def mk(w):
        return _inst("FL3.5", {"q": p["q"], "w": w, "y": p["y"]}, n=p["n"])
    return mk


# (1 - t) times either side of PC1.12, at t = 1, is GZ1.6 with m = k. The
# limit is taken exactly by expanding in eps = t - 1.
def _pc_gz_src(p):
    eps = Laurent.variable()
    inst = _inst("PC1.12", {"q": p["q"], "z": p["z"], "t": 1 + eps}, n=p["n"], k=p["m"])

    def limit(v):
        v = -eps * v
        if v.val < 0:
            raise PoleError("(1 - t) times the side still has a pole at t = 1")
        return v.coefficient(0)
    return _both("PC1.12", inst, limit)


def _shape(rng, bounds, *keys):
    out = {"n": rng.randint(1, bounds.n)}
    for key in keys:
        out[key] = rng.randint(1, bounds.entry)
    return out


def _s_nm_qx(rng, b):
    return {**_shape(rng, b, "m"), "q": rand_q(rng), "x": rand_rational(rng)}


def _s_nl_qxz(rng, b):
    return {**_shape(rng, b, "l"), "q": rand_q(rng), "x": rand_rational(rng), "z": rand_rational(rng)}


def _s_fl(rng, b):
    return {"n": rng.randint(1, b.n), "q": rand_q(rng), "w": rand_rational(rng), "y": rand_rational(rng)}


def _s_gz(rng, b):
    return {"n": rng.randint(1, b.n), "m": rng.randint(1, b.k), "q": rand_q(rng), "z": rand_rational(rng)}


def _target_pair(id, make, a, b):
    """Target sides at two parameter values, differenced (first minus second)."""
    one, two = _both(id, make(a)), _both(id, make(b))
    return tuple(u - v for u, v in zip(one, two))


REDUCTIONS = {r.name: r for r in [
    Reduction("TA1.8->FL1.4", "TA1.8", "FL1.4", "m_vec = 0, k = m, base 1/q, x-terminals differenced",
              _s_nm_qx, _ta_fl_src, lambda p: _both("FL1.4", _inst("FL1.4", {"q": p["q"], "x": p["x"]}, n=p["n"],
                                                                         m=p["m"]))),
    Reduction("TA1.8->P1.3", "TA1.8", "P1.3", "k = 1, m_vec = (m - 1,), x = 1",
              lambda rng, b: {**_shape(rng, b, "m"), "q": rand_q(rng)}, _ta_p_src,
              lambda p: _both("P1.3", _inst("P1.3", {"q": p["q"]}, n=p["n"], m=p["m"]))),
    Reduction("PB1.11->C3.4", "PB1.11", "C3.4", "k = 1, l_vec = (l,), z_vec = (z,)",
              _s_nl_qxz, _pb_c_src,
              lambda p: _both("C3.4", _inst("C3.4", {"q": p["q"], "x": p["x"], "z": p["z"]}, n=p["n"], l=p["l"]))),
    Reduction("C3.4->Z1.5", "C3.4", "Z1.5", "m = l, base 1/q, Z1.5 at x = 1 minus at x",
              _s_nl_qxz, _c_z_src, lambda p: _target_pair("Z1.5", _c_z_tgt(p), 1, p["x"])),
    Reduction("C3.4->FL3.5", "C3.4", "FL3.5", "l = 1, z = 1/y, x = w, FL3.5 at w = 1 minus at w",
              _s_fl, _c_fl_src, lambda p: _target_pair("FL3.5", _c_fl_tgt(p), 1, p["w"])),
    Reduction("PC1.12->GZ1.6", "PC1.12", "GZ1.6", "k = m, multiply by 1 - t and let t -> 1",
              _s_gz, _pc_gz_src,
              lambda p: _both("GZ1.6", _inst("GZ1.6", {"q": p["q"], "z": p["z"]}, n=p["n"], m=p["m"]))),
]}


def get_reduction(name: str) -> Reduction:
    try:
        return REDUCTIONS[name]
    except KeyError:
        raise SchemaError(f"unknown reduction {name!r}; choose from {', '.join(REDUCTIONS)}") from None


def _values(red, params):
    try:
        return red.source_sides(params), red.target_inst(params)
    except ZeroDivisionError as exc:
        if isinstance(exc, PoleError):
            raise
        raise PoleError(f"{red.name}: division by zero") from exc


def random_reduction_params(name: str, seed: int, bounds: Bounds | None = None, *, trial: int = 0,
                            max_tries: int = 500) -> dict:
    """Pole-free parameters for a reduction, determined by (name, seed, trial)."""
    red = get_reduction(name)
    bounds = bounds or Bounds()
    rng = rng_for(name, seed, trial)
    for _ in range(max_tries):
        params = red.sample(rng, bounds)
        try:
            _values(red, params)
        except PoleError:
            continue
        return params
    raise PoleError(f"no pole-free parameters for {name} after {max_tries} draws")


def reduction_check(name: str, params: dict) -> VerificationReport:
    """Evaluate the mapped source sides and the target sides; all four must agree."""
    start = time.perf_counter()
    red = get_reduction(name)
    (s_lhs, s_rhs), (t_lhs, t_rhs) = _values(red, params)
    equal = s_lhs == s_rhs == t_lhs == t_rhs
    rep = VerificationReport(id=name, instance=dict(params), backend="reduction", lhs=[s_lhs, s_rhs],
                             rhs=[t_lhs, t_rhs], equal=equal, status="pass" if equal else "fail",
                             note=red.mapping)
    rep.elapsed = time.perf_counter() - start
    return rep
