"""Infinite series at 192 bits, and reading finite identities at a real order."""
import mpmath

from qdivisor.numeric.series import qpoch_infinite, qpoch_real_order
from qdivisor.registry import IdentityInstance, agreement, probe_noninteger, random_instance, verify

v, tr = qpoch_infinite("1/2", "1/2")
print("(1/2; 1/2)_inf =", mpmath.nstr(v, 30), " factors used:", tr.K, " tail <=", mpmath.nstr(tr.tail_bound, 3))

# real order: (x; q)_a = (x; q)_inf / (x q^a; q)_inf
print("(1/3; 1/2)_(1/2) =", mpmath.nstr(qpoch_real_order("1/3", "1/2", "1/2")[0], 25))

# the divisor generating function two ways
rep = verify("K1.2", IdentityInstance.from_params("K1.2", {"q": "1/2"}))
print("\nK1.2 lhs =", mpmath.nstr(rep.lhs, 25), " residual", mpmath.nstr(rep.residual, 3))

for id, params in [("HEINE", {"a": "1/3", "q": "1/2", "t": "1/5"}),
                   ("C4.8", {"k": 2, "q": "1/2", "z": "1/3", "t": "1/5"})]:
    rep = verify(id, IdentityInstance.from_params(id, params))
    print(f"{id:6s} residual {mpmath.nstr(rep.residual, 3):>10s}  tail {mpmath.nstr(rep.tail_bound, 3)}")

# the float backend reproduces exact answers (relative error)
s = random_instance("P4.1", seed=3, unit_q=True)
print("\nP4.1 float vs exact:", mpmath.nstr(agreement("P4.1", s).residual, 3))

# probe: integer orders agree with the exact identity, others are only reported
params = {"k": 2, "q": "1/3", "z": "1/5", "t": "1/7"}
for a in ("3", "1/2", "5/2"):
    r = probe_noninteger("PC1.12", IdentityInstance.from_params("PC1.12", {**params, "a": a}))
    print(f"a = {a:4s} lhs {mpmath.nstr(r.lhs, 15):>20s}  residual {mpmath.nstr(r.residual, 3)}")
