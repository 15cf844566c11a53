"""Deterministic random parameters for verification campaigns."""
from __future__ import annotations

import random
from fractions import Fraction

__all__ = ["MAX_PARAM", "rand_q", "rand_rational", "rng_for", "shape_sampler"]

MAX_PARAM = 50


def rng_for(id: str, seed: int, trial: int = 0) -> random.Random:
    """A generator that depends only on (id, seed, trial)."""
    return random.Random(f"{id}:{seed}:{trial}")


def rand_rational(rng: random.Random, *, nonzero: bool = True, limit: int = MAX_PARAM) -> Fraction:
    while True:
        v = Fraction(rng.randint(-limit, limit), rng.randint(1, limit))
        if v or not nonzero:
            return v


def rand_q(rng: random.Random, *, unit: bool = False, limit: int = MAX_PARAM) -> Fraction:
    """q avoiding 0 and +-1; ``unit=True`` restricts to 0 < q < 1."""
    if unit:
        d = rng.randint(2, limit)
        return Fraction(rng.randint(1, d - 1), d)
    while True:
        v = rand_rational(rng, limit=limit)
        if abs(v) != 1:
            return v


def shape_sampler(*fields: str):
    """Sampler for common shape fields.

    ``n`` is drawn from [1, bounds.n]; ``k`` from [1, bounds.k]; ``m`` and
    ``l`` from [1, bounds.entry]; ``m_vec`` entries from [0, bounds.entry]
    with length k; ``l_vec`` entries from [1, bounds.entry]; ``r`` and ``i``
    from [1, n]; ``k0`` is a depth that may be 0.
    """

    def sample(rng: random.Random, bounds) -> dict:
        out = {}
        if "n" in fields:
            out["n"] = rng.randint(1, bounds.n)
        if "k" in fields:
            out["k"] = rng.randint(1, bounds.k)
        if "k0" in fields:
            out["k"] = rng.randint(0, bounds.k)
        for key in ("m", "l"):
            if key in fields:
                out[key] = rng.randint(1, bounds.entry)
        if "m0" in fields:
            out["m"] = rng.randint(0, bounds.entry)
        if "m_vec" in fields:
            out["m_vec"] = tuple(rng.randint(0, bounds.entry) for _ in range(out["k"]))
        if "l_vec" in fields:
            out["l_vec"] = tuple(rng.randint(1, bounds.entry) for _ in range(out["k"]))
        if "r" in fields:
            out["r"] = rng.randint(1, out["n"])
        if "i" in fields:
            out["i"] = rng.randint(1, out["n"]) if "n" in out else rng.randint(1, bounds.n)
        return out

    return sample
