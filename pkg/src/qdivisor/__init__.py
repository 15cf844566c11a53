"""Exact and high-precision verification of q-series divisor identities.

The package is organised in layers:

* :mod:`qdivisor.qcore` -- q-numbers, q-Pochhammer symbols, Gaussian binomials
  and complete homogeneous symmetric functions over exact rationals.
* :mod:`qdivisor.operators` -- polynomial q-derivative, Jackson integral and
  the operators built from them.
* :mod:`qdivisor.nested` -- sums over weakly decreasing index chains.
* :mod:`qdivisor.registry` -- the identity catalog with verification,
  random instances and cross-identity reductions.
* :mod:`qdivisor.numeric` -- mpmath evaluation of the infinite series.
* :mod:`qdivisor.cli` -- the ``qdivisor`` command.
"""
from .errors import ConvergenceError, DomainError, PoleError, QDivisorError, SchemaError
from .nested import nested_qsum
from .qcore import ParamEnv, complete_homogeneous, gauss_binomial, q_number, q_pochhammer

__version__ = "0.1.0"

__all__ = ["ConvergenceError", "DomainError", "ParamEnv", "PoleError", "QDivisorError", "SchemaError",
           "__version__", "complete_homogeneous", "gauss_binomial", "nested_qsum", "q_number", "q_pochhammer"]
