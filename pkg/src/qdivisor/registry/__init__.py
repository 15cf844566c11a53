"""Catalog of identities with exact and high-precision evaluators."""
from .base import Bounds, IdentityInstance, RegistryEntry
from .core import (AGREEMENT_TOL, KERNEL_IDS, REGISTRY, TABLE_IDS, Evaluation, agreement, check_poles, entries,
                   eval_side, evaluate, get_entry, probe_noninteger, random_instance, tail_bound, validate, verify)
from .errata import errata, errata_for
from .reductions import REDUCTIONS, random_reduction_params, reduction_check

__all__ = ["AGREEMENT_TOL", "Bounds", "Evaluation", "IdentityInstance", "KERNEL_IDS", "REDUCTIONS", "REGISTRY", "RegistryEntry",
           "TABLE_IDS", "agreement", "check_poles", "entries", "errata", "errata_for", "eval_side", "evaluate",
           "get_entry", "probe_noninteger", "random_instance", "random_reduction_params", "reduction_check", "tail_bound", "validate", "verify"]
