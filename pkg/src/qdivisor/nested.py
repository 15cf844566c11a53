"""Sums over weakly decreasing index chains n >= i_1 >= ... >= i_k >= 1."""
from __future__ import annotations

import random
from typing import Callable

from .errors import PoleError, SchemaError

__all__ = ["nested_qsum"]

Weight = Callable[[int, int, int], object]


def nested_qsum(n: int, k: int, level_weight: Weight, terminal: Callable[[int], object], *,
                memo: bool = False, rng: random.Random | None = None):
    """Sum of prod_j level_weight(j, i_j, i_{j-1}) * terminal(i_k) over all chains.

    ``i_0 = n``. Levels are numbered from 1. A depth of ``k = 0`` means no
    chain at all, and the value is ``terminal(n)`` (or 0 when ``n = 0``).

    ``memo=True`` switches from plain recursive descent to a table over
    (level, previous index), which is much cheaper for larger n and k.
    ``rng`` shuffles the enumeration order of the recursive mode; the
    exact value must not depend on it.
    """
    if n < 0 or k < 0:
        raise SchemaError(f"nested_qsum needs n >= 0 and k >= 0, got n={n}, k={k}")
    if n == 0:
        return 0
    try:
        if k == 0:
            return terminal(n)
        if memo:
            return _table(n, k, level_weight, terminal)
        return _descend(1, n, k, level_weight, terminal, rng)
    except ZeroDivisionError as exc:
        if isinstance(exc, PoleError):
            raise
        raise PoleError(f"a summand has a pole: {exc}") from exc


def _descend(j, prev, k, weight, terminal, rng):
    idx = list(range(1, prev + 1))
    if rng is not None:
        rng.shuffle(idx)
    total = 0
    for i in idx:
        w = weight(j, i, prev)
        if w == 0:
            continue
        inner = terminal(i) if j == k else _descend(j + 1, i, k, weight, terminal, rng)
        total = total + w * inner
    return total


def _table(n, k, weight, terminal):
    # below[p] holds the sum over levels j+1..k given i_j = p
    below = [None] + [terminal(p) for p in range(1, n + 1)]
    for j in range(k, 1, -1):
        below = [None] + [sum((weight(j, i, p) * below[i] for i in range(1, p + 1)), 0)
                          for p in range(1, n + 1)]
    return sum((weight(1, i, n) * below[i] for i in range(1, n + 1)), 0)
