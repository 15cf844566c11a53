"""Registry entries evaluated only with the high-precision backend."""
from __future__ import annotations

from fractions import Fraction

from ..errors import SchemaError
from ..numeric.identities import (c48_lhs, c48_rhs, fine_lhs, fine_rhs, heine_lhs, heine_rhs, k12_lhs, k12_rhs,
                                  n216_lhs, n216_lhs_printed, n216_rhs, pfrac_lhs, pfrac_rhs)
from .base import RegistryEntry, nonzero
from .sampling import rand_q

TIGHT = Fraction(1, 10**30)
LOOSE = Fraction(1, 10**25)


def _unit_rational(rng, *, nonzero_only=True):
    """A rational in [-3/4, 3/4] with denominator at most 50.

    Keeping away from the unit circle lets the series reach full precision
    well inside the K_MAX term budget.
    """
    while True:
        d = rng.randint(2, 50)
        top = 3 * d // 4
        v = Fraction(rng.randint(-top, top), d)
        if v or not nonzero_only:
            return v


def _small_q(rng):
    while True:
        q = rand_q(rng, unit=True)
        if q <= Fraction(1, 2):
            return q


def _env_k12(rng, shape, bounds):
    return {"q": _small_q(rng)}


def _env_heine(rng, shape, bounds):
    return {"a": _unit_rational(rng), "q": _small_q(rng), "t": _unit_rational(rng)}


def _env_pfrac(rng, shape, bounds):
    return {"q": _small_q(rng), "y": _unit_rational(rng)}


def _env_n216(rng, shape, bounds):
    return {"a": Fraction(rng.randint(0, 60), rng.randint(1, 20)), "q": _small_q(rng), "x": _unit_rational(rng)}


def _env_c48(rng, shape, bounds):
    return {"q": _small_q(rng), "z": _unit_rational(rng), "t": _unit_rational(rng)}


def _fine_shape(rng, bounds):
    n = rng.randint(1, bounds.n)
    return {"n": n, "i": rng.randint(0, n)}


def _c48_shape(rng, bounds):
    return {"k": rng.randint(1, bounds.k)}


def _check_a(s):
    if s.env.a is not None and s.env.a < 0:
        raise SchemaError(f"{s.id} needs a >= 0, got {s.env.a}")


def _check_fine(s):
    if not 0 <= s.i <= s.n:
        raise SchemaError(f"{s.id} needs 0 <= i <= n")


def _c48_poles(s):
    q, z = s.env.q, s.env.z
    yield from nonzero("z", z)
    for m in range(1, s.k + 1):
        yield f"z - q^{m}", z - q**m


def _none(rng, bounds):
    return {}


ENTRIES = [
    RegistryEntry("K1.2", 1, "divisor generating function against a rapidly convergent alternating series",
                  (), ("q",), k12_lhs, k12_rhs, backend="numeric", sample=_none, sample_env=_env_k12,
                  tolerance=TIGHT),
    RegistryEntry("N2.16", 2, "two-level case of TA1.9 with zero exponents, read at a real order a",
                  (), ("a", "q", "x"), n216_lhs, n216_rhs, backend="numeric", check=_check_a, sample=_none,
                  sample_env=_env_n216, tolerance=LOOSE, printed={"lhs": n216_lhs_printed}),
    RegistryEntry("HEINE", 3, "q-binomial series summed as a ratio of infinite products",
                  (), ("a", "q", "t"), heine_lhs, heine_rhs, backend="numeric", sample=_none, sample_env=_env_heine,
                  tolerance=TIGHT),
    RegistryEntry("PFRAC", 3, "partial-fraction expansion of (q;q)_inf/(y;q)_inf",
                  (), ("q", "y"), pfrac_lhs, pfrac_rhs, backend="numeric", sample=_none, sample_env=_env_pfrac,
                  tolerance=TIGHT),
    RegistryEntry("FINE", 3, "terminating-parameter series summed as a product ratio",
                  ("n", "i"), ("q", "y"), fine_lhs, fine_rhs, backend="numeric", check=_check_fine,
                  sample=_fine_shape, sample_env=_env_pfrac, tolerance=TIGHT),
    RegistryEntry("C4.8", 4, "n -> infinity limit of the t-deformed nested sum",
                  ("k",), ("q", "z", "t"), c48_lhs, c48_rhs, backend="numeric", poles=_c48_poles,
                  sample=_c48_shape, sample_env=_env_c48, tolerance=LOOSE),
]
