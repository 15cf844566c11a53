import functools
import itertools
import math
import random
from fractions import Fraction as F

import pytest

from qdivisor.errors import PoleError, SchemaError
from qdivisor.nested import nested_qsum
from qdivisor.registry import eval_side, random_instance
from qdivisor.registry import sec2, sec4

from conftest import rand_frac


def brute(n, k, weight, terminal):
    """Enumerate chains n >= i_1 >= ... >= i_k >= 1 directly."""
    total = F(0)
    for chain in itertools.combinations_with_replacement(range(n, 0, -1), k):
        prev, prod = n, F(1)
        for j, i in enumerate(chain, start=1):
            prod *= weight(j, i, prev)
            prev = i
        total += prod * terminal(chain[-1])
    return total


def test_examples():
    q = F(1, 2)
    assert nested_qsum(0, 3, lambda j, i, p: 1, lambda i: 1) == 0
    assert nested_qsum(2, 2, lambda j, i, p: q**i, lambda i: 1) == F(7, 16)
    lam = q / (1 - q)
    for m in range(1, 5):
        assert nested_qsum(1, m, lambda j, i, p: q**i / (1 - q**i), lambda i: 1) == lam**m


def test_depth_zero_is_terminal():
    assert nested_qsum(4, 0, None, lambda i: i * i) == 16


def test_rejects_negative():
    with pytest.raises(SchemaError):
        nested_qsum(-1, 1, lambda j, i, p: 1, lambda i: 1)
    with pytest.raises(SchemaError):
        nested_qsum(2, -1, lambda j, i, p: 1, lambda i: 1)


def test_pole_reported():
    with pytest.raises(PoleError):
        nested_qsum(3, 2, lambda j, i, p: 1 / (2 - i), lambda i: 1)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in range(1, 5)])
def test_against_enumeration(n, k):
    rng = random.Random(n * 10 + k)
    table = {(j, i, p): rand_frac(rng) for j in range(1, k + 1) for p in range(1, n + 1) for i in range(1, p + 1)}
    term = {i: rand_frac(rng) for i in range(1, n + 1)}
    weight = lambda j, i, p: table[j, i, p]
    expected = brute(n, k, weight, term.__getitem__)
    assert nested_qsum(n, k, weight, term.__getitem__) == expected
    assert nested_qsum(n, k, weight, term.__getitem__, memo=True) == expected
    assert nested_qsum(n, k, weight, term.__getitem__, rng=random.Random(3)) == expected


def test_memo_handles_desk_maximum():
    q = F(2, 3)
    w = lambda j, i, p: q**i / (1 - q**i) * (p - i + 1)
    assert nested_qsum(12, 4, w, lambda i: i, memo=True) == nested_qsum(12, 4, w, lambda i: i)


def test_chain_count():
    # number of chains is C(n + k - 1, k)
    assert nested_qsum(8, 3, lambda j, i, p: 1, lambda i: 1) == math.comb(10, 3)


@pytest.mark.parametrize("id,module", [("TA1.8", sec2), ("TA1.9", sec2), ("P4.1", sec4)])
def test_sides_do_not_depend_on_enumeration_order(id, module, monkeypatch):
    cases = [random_instance(id, 5, trial=t) for t in range(10)]
    plain = [(eval_side(id, "lhs", c), eval_side(id, "rhs", c)) for c in cases]
    monkeypatch.setattr(module, "nested_qsum", functools.partial(nested_qsum, rng=random.Random(99)))
    shuffled = [(eval_side(id, "lhs", c), eval_side(id, "rhs", c)) for c in cases]
    assert plain == shuffled
