import itertools
import math
import random
from fractions import Fraction as F

import pytest

from qdivisor.errors import PoleError, SchemaError
from qdivisor.qcore import (ParamEnv, binom2, complete_homogeneous, gauss_binomial, h_range, parse_scalar, q_number,
                            q_pochhammer)

from conftest import rand_frac


def test_q_number_examples():
    assert q_number(0, F(1, 3)) == 0
    assert q_number(1, F(-7, 5)) == 1
    assert q_number(3, F(1, 2)) == F(7, 4)


def test_q_number_pole():
    with pytest.raises(PoleError):
        q_number(3, 1)


def test_q_pochhammer_examples():
    assert q_pochhammer(F(5), F(1, 2), 0) == 1
    assert q_pochhammer(F(2), F(1, 2), 2) == 0
    assert q_pochhammer(F(3), F(1, 2), 3) == F(1, 4)


def test_q_pochhammer_negative_order():
    with pytest.raises(SchemaError):
        q_pochhammer(F(1, 2), F(1, 3), -1)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(0, 9, 2) for n in range(0, 9, 3)])
def test_pochhammer_splits(m, n):
    a, q = F(3, 7), F(-2, 5)
    assert q_pochhammer(a, q, m + n) == q_pochhammer(a, q, m) * q_pochhammer(a * q**m, q, n)


def test_gauss_binomial_examples():
    assert gauss_binomial(6, 0, F(1, 3)) == 1
    assert gauss_binomial(2, 3, F(1, 3)) == 0
    assert gauss_binomial(4, 2, F(1, 2)) == F(35, 16)


def _gauss_pascal(n, r, q):
    # q-Pascal rule as an independent oracle
    if r < 0 or r > n:
        return 0
    if r == 0 or r == n:
        return 1
    return _gauss_pascal(n - 1, r - 1, q) + q**r * _gauss_pascal(n - 1, r, q)


@pytest.mark.parametrize("n", range(11))
def test_gauss_binomial_symmetry_and_pascal(n):
    q = F(-3, 4)
    for r in range(n + 1):
        g = gauss_binomial(n, r, q)
        assert g == gauss_binomial(n, n - r, q)
        assert g == _gauss_pascal(n, r, q)


def test_gauss_binomial_near_one():
    q = 1 - F(1, 10**6)
    for n in range(1, 9):
        for r in range(n + 1):
            g = float(gauss_binomial(n, r, q))
            assert abs(g / math.comb(n, r) - 1) < 1e-4


def test_gauss_binomial_root_of_unity_pole():
    with pytest.raises(PoleError):
        gauss_binomial(4, 2, F(-1))


def test_complete_homogeneous_examples():
    assert complete_homogeneous(0, [F(9)]) == 1
    assert complete_homogeneous(1, [2, 3]) == 5
    assert complete_homogeneous(2, [2, 3]) == 19


def test_complete_homogeneous_rejects():
    with pytest.raises(SchemaError):
        complete_homogeneous(-1, [1, 2])
    with pytest.raises(SchemaError):
        complete_homogeneous(2, [])


@pytest.mark.parametrize("k", range(4))
def test_complete_homogeneous_matches_enumeration(k, rng):
    args = [rand_frac(rng) for _ in range(5)]
    brute = sum((math.prod(c) for c in itertools.combinations_with_replacement(args, k)), F(0))
    assert complete_homogeneous(k, args) == brute


def test_complete_homogeneous_recurrence(rng):
    for n in range(1, 7):
        args = [rand_frac(rng) for _ in range(n)]
        for k in range(1, 7):
            lhs = complete_homogeneous(k, args)
            rest = complete_homogeneous(k, args[:-1]) if n > 1 else 0
            assert lhs == rest + args[-1] * complete_homogeneous(k - 1, args)


def test_generating_function(rng):
    # coefficient of t^i in prod 1/(1 - a_j t), expanded as truncated power series
    K = 12
    args = [rand_frac(rng, limit=9) for _ in range(4)]
    series = [F(1)] + [F(0)] * K
    for a in args:
        geo = [a**i for i in range(K + 1)]
        series = [sum(series[j] * geo[i - j] for j in range(i + 1)) for i in range(K + 1)]
    for i in range(K + 1):
        assert series[i] == complete_homogeneous(i, args)


def test_h_range_examples():
    q = F(1, 2)
    lam = lambda s: q**s / (1 - q**s)
    assert h_range(0, 2, 5, lam) == 1
    assert h_range(1, 2, 3, lam) == F(10, 21)
    assert h_range(1, 3, 3, lam) == F(1, 7)


def test_h_range_pole_and_range():
    with pytest.raises(PoleError):
        h_range(2, 0, 3, lambda s: 1 / (1 - F(1, 2) ** s))
    with pytest.raises(SchemaError):
        h_range(1, 4, 3, lambda s: s)


def test_binom2():
    assert [binom2(i) for i in range(1, 6)] == [0, 1, 3, 6, 10]
    assert binom2(4 + 1) == 10


@pytest.mark.parametrize("text,value", [("2/5", F(2, 5)), ("-3", F(-3)), (" 7 / 4 ", F(7, 4)),
                                        ("0.125", F(1, 8)), ("1e-3", F(1, 1000))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1/0", "abc", "", "1/2/3"])
def test_parse_scalar_rejects(text):
    with pytest.raises(SchemaError):
        parse_scalar(text)


@pytest.mark.parametrize("q", [0, 1, -1])
def test_param_env_rejects_degenerate_q(q):
    with pytest.raises(SchemaError):
        ParamEnv(q=F(q))


def test_param_env_require_and_parse():
    env = ParamEnv.parse({"q": "1/2", "z_vec": ["1/3", "2"]})
    assert env.q == F(1, 2) and env.z_vec == (F(1, 3), F(2))
    env.require(["q", "z_vec"])
    with pytest.raises(SchemaError):
        env.require(["x"])
    with pytest.raises(SchemaError):
        ParamEnv.parse({"s": "1"})
