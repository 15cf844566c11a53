"""Checking registry identities on explicit and random instances."""
from qdivisor.errors import PoleError
from qdivisor.registry import (REDUCTIONS, IdentityInstance, entries, random_instance, random_reduction_params,
                               reduction_check, verify)

# what is in the registry
for e in entries(1):
    print(f"{e.id:7s} {e.backend:10s} {e.summary}")

# one instance, parameters given as text
inst = IdentityInstance.from_params("D1.1", {"n": "2", "m": "1", "q": "1/2"})
rep = verify("D1.1", inst)
print("\nD1.1:", rep.lhs, "=", rep.rhs, rep.status)

# parameters on a pole are rejected up front instead of dividing by zero
try:
    verify("GZ1.6", IdentityInstance.from_params("GZ1.6", {"n": 3, "m": 2, "q": "1/3", "z": "1/9"}))
except PoleError as exc:
    print("pole:", exc)

# random instances are a pure function of (id, seed, trial)
for t in range(3):
    s = random_instance("TA1.8", seed=7, trial=t)
    print("TA1.8", s.to_dict(), verify("TA1.8", s).status)

# an erratum: the printed form disagrees, the corrected form holds
s = IdentityInstance.from_params("J2.6", {"n": 3, "q": "1/2", "x": "1/3", "y": "2"})
print("\nJ2.6 corrected:", verify("J2.6", s).status)
printed = verify("J2.6", s, printed=True)
print("J2.6 as printed:", printed.status, printed.errata)

# reductions tie pairs of identities together
for name in REDUCTIONS:
    p = random_reduction_params(name, seed=1)
    print(f"{name:15s}", reduction_check(name, p).status)
