"""The identity registry: validation, pole checks, evaluation and verification."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ConvergenceError, DomainError, PoleError, QDivisorError, SchemaError
from ..numeric.probe import PROBE_IDS, probe_sides
from ..numeric.series import DEFAULT_K, DEFAULT_PREC, GUARD_BITS, Truncation, context, real
from ..report import VerificationReport
from . import numeric_ids, sec1, sec2, sec3, sec4
from .base import Bounds, IdentityInstance, RegistryEntry
from .errata import errata_for
from .sampling import rand_q, rand_rational, rng_for

__all__ = ["AGREEMENT_TOL", "KERNEL_IDS", "REGISTRY", "TABLE_IDS", "Evaluation", "agreement", "check_poles",
           "entries", "eval_side", "evaluate", "get_entry", "probe_noninteger", "random_instance", "tail_bound",
           "validate", "verify"]

# Kernel facts of the operator calculus are verifiable like any identity but
# are not part of the default listing.
KERNEL_IDS = ("J2.5", "J2.6", "L2.7", "L2.8", "L2.9", "L2.10", "X2.11", "QB2.12", "QB2.13")

REGISTRY: dict[str, RegistryEntry] = {}
for _mod in (sec1, sec2, sec3, sec4, numeric_ids):
    for _e in _mod.ENTRIES:
        if _e.id in REGISTRY:
            raise RuntimeError(f"duplicate registry id {_e.id}")
        REGISTRY[_e.id] = _e

_ORDER = ("D1.1", "K1.2", "P1.3", "FL1.4", "Z1.5", "GZ1.6", "TA1.8", "TA1.9", "C2.14", "C2.15", "N2.16",
          "L3.1", "L3.2", "NB3", "PB1.10", "PB1.11", "C3.3", "C3.4", "FL3.5", "P3.6", "A3.7", "A3.8", "A3.9",
          "C3.10", "HEINE", "PFRAC", "FINE", "P4.1", "S4.2", "S4.3", "S4.4", "S4.5", "E4.7", "PC1.12", "C4.8")
TABLE_IDS = tuple(i for i in _ORDER if i in REGISTRY)

AGREEMENT_TOL = Fraction(1, 10**40)
PROBE_ORDER_IDS = PROBE_IDS + ("N2.16",)
MAX_TRIES = 500
MAX_GUARD_BITS = 2048


def get_entry(id: str) -> RegistryEntry:
    try:
        return REGISTRY[id]
    except KeyError:
        raise SchemaError(f"unknown identity id {id!r}") from None


def entries(section=None, *, kernel: bool = False) -> list:
    """Registry entries in display order, optionally filtered by section number."""
    ids = list(TABLE_IDS) + (list(KERNEL_IDS) if kernel else [])
    out = [REGISTRY[i] for i in ids]
    if section is not None:
        out = [e for e in out if str(e.section) == str(section)]
    return out


# -- validation ----------------------------------------------------------------

def validate(inst: IdentityInstance) -> RegistryEntry:
    """Check that ``inst`` carries exactly what its id needs; return the entry."""
    inst = _complete(inst)
    entry = get_entry(inst.id)
    vec = entry.vector
    if vec:
        values = getattr(inst, vec)
        if not values:
            raise SchemaError(f"{inst.id} needs {vec}")
        declared = getattr(inst, entry.vector_len)
        if declared != len(values):
            raise SchemaError(f"{vec} has length {len(values)} but {entry.vector_len} = {declared}")
        lo = 1 if vec == "l_vec" else 0
        if any(v < lo for v in values):
            raise SchemaError(f"{vec} entries must be >= {lo}")
    for key in entry.shape:
        val = getattr(inst, key)
        if val is None:
            raise SchemaError(f"{inst.id} needs shape parameter {key}")
        if val < 0:
            raise SchemaError(f"{key} must be >= 0, got {val}")
    if "k" in entry.shape and entry.backend != "exact+tail" and inst.k < 1:
        raise SchemaError(f"{inst.id} needs k >= 1")
    entry_env = inst.env
    entry_env.require(entry.symbols)
    if "z_vec" in entry.symbols and len(entry_env.z_vec) != inst.k:
        raise SchemaError(f"z_vec has length {len(entry_env.z_vec)} but k = {inst.k}")
    if entry.backend == "numeric" and "a" not in entry.symbols and entry_env.a is not None:
        raise SchemaError(f"{inst.id} takes no real order a")
    if entry.check:
        entry.check(inst)
    return entry


def _complete(inst: IdentityInstance) -> IdentityInstance:
    entry = get_entry(inst.id)
    if entry.vector and getattr(inst, entry.vector_len) is None:
        inst = inst.with_(**{entry.vector_len: len(getattr(inst, entry.vector))})
    if "z_vec" in entry.symbols and inst.k is None and inst.env.z_vec:
        inst = inst.with_(k=len(inst.env.z_vec))
    return inst


def check_poles(entry: RegistryEntry, inst: IdentityInstance) -> None:
    """Raise PoleError if any denominator of the display vanishes on ``inst``."""
    if entry.poles is None:
        return
    for label, value in entry.poles(inst):
        if value == 0:
            raise PoleError(f"{inst.id}: denominator factor {label} vanishes")


# -- evaluation ------------------------------------------------------------------

@dataclass(frozen=True)
class Evaluation:
    """A side value with its truncation record (``None`` for exact finite sums)."""

    value: object
    truncation: Truncation | None = None


def _side_fn(entry, side, printed):
    if side not in ("lhs", "rhs"):
        raise SchemaError(f"side must be 'lhs' or 'rhs', got {side!r}")
    if printed and side in entry.printed:
        return entry.printed[side]
    return entry.lhs if side == "lhs" else entry.rhs


def _numeric_env(inst, prec):
    ctx = context(prec)
    return inst.with_(env=inst.env.map(lambda v: real(ctx, v)))


def _float_eval(fn, inst, prec):
    """Run an exact evaluator in floating point, accurate to ``prec`` bits.

    Alternating Gaussian-binomial sums can cancel many digits, so the
    evaluator runs with guard bits that double until two passes agree to
    2^-prec relative to max(1, |value|).
    """
    guard = GUARD_BITS
    prev = fn(_numeric_env(inst, prec + guard))
    while guard < MAX_GUARD_BITS:
        guard *= 2
        cur = fn(_numeric_env(inst, prec + guard))
        ctx = context(prec + guard)
        if abs(cur - prev) <= ctx.ldexp(max(ctx.one, abs(cur)), -prec):
            return context(prec).mpf(cur)
        prev = cur
    raise ConvergenceError(f"floating-point evaluation did not settle within {MAX_GUARD_BITS} guard bits")


def evaluate(id: str, side: str, inst: IdentityInstance, *, printed: bool = False, backend: str | None = None,
             prec: int = DEFAULT_PREC, K: int = DEFAULT_K) -> Evaluation:
    """Evaluate one side. ``backend='numeric'`` runs an exact id in floating point."""
    if inst.id != id:
        inst = inst.with_(id=id)
    inst = _complete(inst)
    entry = validate(inst)
    check_poles(entry, inst)
    fn = _side_fn(entry, side, printed)
    backend = backend or entry.backend
    try:
        if entry.backend == "numeric":
            value, tr = fn(inst, prec, K)
            return Evaluation(value, tr)
        if backend == "numeric":
            if not 0 < inst.env.q < 1:
                raise DomainError(f"the numeric backend needs 0 < q < 1, got q = {inst.env.q}")
            return Evaluation(_float_eval(fn, inst, prec))
        value = fn(inst)
        if isinstance(value, float):
            raise TypeError(f"{id} {side} lost exactness (float result)")
        return Evaluation(value)
    except ZeroDivisionError as exc:
        if isinstance(exc, PoleError):
            raise
        raise PoleError(f"{id}: division by zero while evaluating {side}") from exc


def eval_side(id: str, side: str, inst: IdentityInstance, **kw):
    """The value of one side (partial sum for exact+tail ids)."""
    return evaluate(id, side, inst, **kw).value


def tail_bound(id: str, inst: IdentityInstance):
    """Rigorous bound on the omitted terms of an exact+tail left side."""
    inst = _complete(inst.with_(id=id) if inst.id != id else inst)
    entry = validate(inst)
    if entry.backend != "exact+tail":
        raise SchemaError(f"{id} has no truncation")
    return entry.tail(inst)


def _cited(entry, printed):
    return [e.key for e in errata_for(entry.id)]


def verify(id: str, inst: IdentityInstance, *, printed: bool = False, backend: str | None = None,
           prec: int = DEFAULT_PREC, K: int = DEFAULT_K, tolerance=None) -> VerificationReport:
    """Evaluate both sides and compare according to the entry's backend."""
    start = time.perf_counter()
    inst = _complete(inst.with_(id=id) if inst.id != id else inst)
    entry = validate(inst)
    backend = backend or entry.backend
    use_printed = printed and bool(entry.printed)
    lhs = evaluate(id, "lhs", inst, printed=use_printed, backend=backend, prec=prec, K=K)
    rhs = evaluate(id, "rhs", inst, printed=use_printed, backend=backend, prec=prec, K=K)
    rep = VerificationReport(id=id, instance=inst.to_dict(), backend=backend, lhs=lhs.value, rhs=rhs.value,
                             errata=_cited(entry, use_printed))
    if backend == "exact":
        rep.equal = lhs.value == rhs.value
        ok = rep.equal
    elif backend == "exact+tail":
        bound = entry.tail(inst)
        rep.residual = abs(lhs.value - rhs.value)
        rep.tail_bound = bound
        ok = rep.residual <= bound
    else:
        ctx = context(prec)
        diff = abs(lhs.value - rhs.value)
        tail = sum(e.truncation.tail_bound for e in (lhs, rhs) if e.truncation is not None)
        tol = tolerance if tolerance is not None else (entry.tolerance if entry.backend == "numeric"
                                                      else AGREEMENT_TOL)
        rep.residual = ctx.mpf(diff)
        rep.tail_bound = ctx.mpf(tail) if tail else None
        rep.tolerance = tol
        if tail and tail > real(ctx, tol):
            raise ConvergenceError(f"{id}: truncation tail {ctx.nstr(tail, 5)} exceeds the tolerance; "
                                   f"raise --K or --prec")
        ok = diff <= real(ctx, tol)
    if use_printed:
        rep.status = "xfail" if not ok else "pass"
        rep.note = ("printed form reproduces the documented mismatch" if not ok
                    else "printed form happens to agree on this instance")
    else:
        rep.status = "pass" if ok else "fail"
    rep.elapsed = time.perf_counter() - start
    return rep


def agreement(id: str, inst: IdentityInstance, *, prec: int = DEFAULT_PREC) -> VerificationReport:
    """Re-evaluate an exact instance in floating point and compare with the exact values.

    The residual is scaled by max(1, |exact value|) so that identities whose
    sides are large are judged by relative accuracy.
    """
    start = time.perf_counter()
    inst = _complete(inst.with_(id=id) if inst.id != id else inst)
    entry = validate(inst)
    if entry.backend != "exact":
        raise SchemaError(f"{id} is not an exact identity")
    ctx = context(prec)
    worst = ctx.mpf(0)
    exact, approx = {}, {}
    for side in ("lhs", "rhs"):
        exact[side] = eval_side(id, side, inst)
        approx[side] = eval_side(id, side, inst, backend="numeric", prec=prec)
        scale = max(Fraction(1), abs(exact[side]))
        err = abs(approx[side] - real(ctx, exact[side])) / real(ctx, scale)
        worst = max(worst, err)
    rep = VerificationReport(id=id, instance=inst.to_dict(), backend="numeric", lhs=approx["lhs"],
                             rhs=approx["rhs"], residual=worst, tolerance=AGREEMENT_TOL,
                             status="pass" if worst <= real(ctx, AGREEMENT_TOL) else "fail",
                             note="relative agreement with the exact backend")
    rep.elapsed = time.perf_counter() - start
    return rep


# -- random instances --------------------------------------------------------------

def _default_env(entry, rng, unit_q):
    env = {}
    for sym in entry.symbols:
        if sym == "q":
            env["q"] = rand_q(rng, unit=unit_q)
        elif sym not in ("z_vec", "a"):
            env[sym] = rand_rational(rng)
    return env


def _near_shifted_pole(inst) -> bool:
    """z or t equal to a power q^j with |j| <= n + k.

    Only some of these are true poles (the entry's predicate knows which);
    random instances avoid the whole window so that no sampled point sits on
    a shifted pole of a neighbouring shape.
    """
    q = inst.env.q
    if q is None:
        return False
    span = (inst.n or 0) + (inst.k or inst.m or inst.l or 0)
    powers = {q**j for j in range(-span, span + 1)}
    return any(v in powers for v in (inst.env.z, inst.env.t, *inst.env.z_vec) if v is not None)


def random_instance(id: str, seed: int, bounds: Bounds | None = None, *, trial: int = 0, unit_q: bool = False,
                    max_tries: int = MAX_TRIES) -> IdentityInstance:
    """A pole-free instance determined by (id, seed, trial, bounds).

    ``unit_q`` draws q from (0, 1), the regime of the numeric backend.
    """
    entry = get_entry(id)
    bounds = bounds or Bounds()
    rng = rng_for(id, seed, trial)
    for _ in range(max_tries):
        shape = entry.sample(rng, bounds) if entry.sample else {}
        env = _default_env(entry, rng, unit_q) if entry.backend != "numeric" else {}
        if entry.sample_env:
            env.update(entry.sample_env(rng, shape, bounds))
        if unit_q and "q" in env and not 0 < env["q"] < 1:
            env["q"] = rand_q(rng, unit=True)
        try:
            inst = IdentityInstance.from_params(id, {**shape, **env})
            inst = _complete(inst)
            check_poles(validate(inst), inst)
        except (PoleError, SchemaError):
            continue
        if _near_shifted_pole(inst):
            continue
        return inst
    raise ConvergenceError(f"no admissible instance of {id} after {max_tries} draws")


# -- real-order probe -------------------------------------------------------------------

def probe_noninteger(id: str, inst: IdentityInstance, *, prec: int = DEFAULT_PREC,
                     K: int = DEFAULT_K) -> VerificationReport:
    """Evaluate both sides at the real order ``inst.env.a``. Carries no verdict."""
    if id not in PROBE_ORDER_IDS:
        raise SchemaError(f"no real-order probe for {id!r}; choose from {', '.join(PROBE_ORDER_IDS)}")
    start = time.perf_counter()
    inst = inst.with_(id=id) if inst.id != id else inst
    inst.env.require(["a"])
    ctx = context(prec)
    if id == "N2.16":
        lhs = evaluate(id, "lhs", inst, prec=prec, K=K)
        rhs = evaluate(id, "rhs", inst, prec=prec, K=K)
        (lv, lt), (rv, rt) = (lhs.value, lhs.truncation), (rhs.value, rhs.truncation)
    else:
        inst = _complete(inst)
        entry = get_entry(id)
        inst.env.require(entry.symbols)
        if entry.check:
            entry.check(inst.with_(n=inst.n if inst.n is not None else 1))
        try:
            (lv, lt), (rv, rt) = probe_sides(id, inst, prec, K)
        except ZeroDivisionError as exc:
            raise PoleError(f"{id}: division by zero in the real-order evaluation") from exc
    rep = VerificationReport(id=id, instance=inst.to_dict(), backend="probe", lhs=lv, rhs=rv,
                             residual=ctx.mpf(abs(lv - rv)), tail_bound=ctx.mpf(lt.tail_bound + rt.tail_bound),
                             status="report", note="exploratory: real-order reading, no verdict",
                             errata=[e.key for e in errata_for(id)])
    rep.elapsed = time.perf_counter() - start
    return rep


ERRORS = (SchemaError, PoleError, DomainError, ConvergenceError, QDivisorError)
