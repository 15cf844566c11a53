import random
from fractions import Fraction as F

import pytest

from qdivisor.errors import SchemaError
from qdivisor.operators import (Eta, OperatorChain, P, QPoly, T, apply_chain, jackson_integral, op_eta, op_P, op_T,
                                poch_poly, poly_one_minus_poch, q_derivative)
from qdivisor.qcore import binom2, gauss_binomial, h_range, q_number, q_pochhammer

from conftest import rand_frac

Q = F(1, 2)


def X(k, q=Q, c=1):
    return QPoly.monomial(k, q, c)


def test_qpoly_canonical_form():
    p = QPoly([1, 2, 0, 0], Q)
    assert p.degree == 1
    assert QPoly([0, 0], Q).is_zero()
    assert QPoly([0, 0], Q).degree is None
    assert p == QPoly([1, 2], Q)


def test_q_derivative_examples():
    q = F(2, 7)
    assert q_derivative(X(2, q)) == QPoly([0, 1 + q], q)
    assert q_derivative(QPoly.constant(5, q)).is_zero()
    assert q_derivative(X(3)) == X(2, c=F(7, 4))


def test_q_derivative_matches_definition(rng):
    q = F(3, 5)
    f = QPoly([rand_frac(rng) for _ in range(6)], q)
    df = q_derivative(f)
    for x in (F(1, 3), F(-2), F(7, 4)):
        assert df(x) == (f(x) - f(x * q)) / (x - x * q)


def test_jackson_examples():
    assert jackson_integral(X(2)) == X(3, c=F(4, 7))
    assert jackson_integral(QPoly.constant(1, Q)) == X(1)


def test_jackson_matches_truncated_definition():
    # sum_{j>=0} (1-q) q^j x f(q^j x), truncated; the tail is geometric
    q, x = F(1, 3), F(2, 5)
    f = QPoly([F(1), F(-2), F(3, 4)], q)
    partial = sum((1 - q) * q**j * x * f(q**j * x) for j in range(60))
    assert abs(float(jackson_integral(f)(x) - partial)) < 1e-25


def test_jackson_n1_case_of_product_integral():
    # the integrand (tyq;q)_0 = 1 integrates to x; the printed closed form gives x - 1/y
    y, x = F(3), F(1, 4)
    value = jackson_integral(poch_poly(y * Q, 0, Q))(x)
    assert value == x
    assert -q_pochhammer(x * y, Q, 1) / (y * q_number(1, Q)) == x - 1 / y


def test_op_P_examples():
    assert op_P(X(1), 1) == X(1)
    assert op_P(X(2), 2) == X(2, c=F(4, 9))
    assert op_P(poly_one_minus_poch(1, Q), 1) == X(1)
    with pytest.raises(SchemaError):
        op_P(QPoly([1, 1], Q), 1)
    assert op_P(QPoly([1, 1], Q), 0) == QPoly([1, 1], Q)


def test_op_P_is_jackson_of_f_over_t():
    f = QPoly([0, F(2), F(-1, 3), F(5)], Q)
    shifted = QPoly(f.coeffs[1:], Q)
    assert op_P(f, 1) == jackson_integral(shifted)
    assert op_P(f, 2) == jackson_integral(QPoly(jackson_integral(shifted).coeffs[1:], Q))


def test_op_T_examples():
    assert op_T(X(1), 1) == X(1)
    assert op_T(X(2), 1) == QPoly([0, 1, F(2, 3)], Q)
    one_minus = poly_one_minus_poch(2, Q)
    assert op_T(one_minus, 1) == one_minus / q_number(2, Q)


def test_op_T_matches_divided_difference(rng):
    q = F(-4, 9)
    f = QPoly([rand_frac(rng) for _ in range(5)], q)
    # (f(1) - f(t))/(1 - t) by synthetic division, then integrate
    quotient = [F(0)] * (len(f) - 1)
    for j in range(len(f) - 1):
        quotient[j] = sum(f[i] for i in range(j + 1, len(f)))
    assert op_T(f, 1) == jackson_integral(QPoly(quotient, q))


def test_op_eta_examples():
    q = F(3, 4)
    assert op_eta(X(2, q), 1) == X(2, q, c=q**2)
    assert op_eta(QPoly([1, 1], q), 2) == QPoly([1, q**2], q)
    f = QPoly([1, 2, 3], q)
    assert op_eta(f, 0) == f


def test_poly_one_minus_poch_examples():
    assert poly_one_minus_poch(0, Q).is_zero()
    assert poly_one_minus_poch(1, Q) == X(1)
    assert poly_one_minus_poch(2, Q) == QPoly([0, F(3, 2), F(-1, 2)], Q)


def test_chain_examples():
    chain = OperatorChain((Eta(1), P(1), T(1)))
    assert apply_chain(chain, X(1)) == X(1, c=F(1, 2))
    f = QPoly([1, 2, 3], Q)
    assert apply_chain(OperatorChain(), f) == f
    with pytest.raises(SchemaError):
        OperatorChain((Eta(-1),))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("m", range(0, 4))
def test_chain_block_on_monomial(n, m):
    q = F(2, 5)
    out = apply_chain(OperatorChain.eta_P_T([m]), X(n, q))
    expected = QPoly([0] + [q ** (m * i) / q_number(i, q) ** (m + 1) for i in range(1, n + 1)], q)
    assert out == expected


def test_chain_order_m1_block_first():
    chain = OperatorChain.eta_P_T([1, 2])
    assert chain.steps == (Eta(2), P(2), T(1), Eta(1), P(1), T(1))
    dual = OperatorChain.T_eta_P([3])
    assert dual.steps == (T(3), Eta(1), P(1))
    assert (chain @ dual).steps == chain.steps + dual.steps


# -- kernel lemmas, coefficient-wise ----------------------------------------------

def _lam(q):
    return lambda s: q**s / (1 - q**s)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("m", range(0, 5))
def test_P_on_monomial(n, m):
    q = F(-3, 7)
    assert op_P(X(n, q), m) == X(n, q, c=1 / q_number(n, q) ** m)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("m", range(0, 5))
def test_P_on_one_minus_poch(n, m):
    q = F(2, 3)
    lam = _lam(q)
    total = QPoly.constant(0, q)
    for i in range(1, n + 1):
        coll = (1 if i == n else 0) if m == 0 else lam(i) * h_range(m - 1, i, n, lam)
        shifted = QPoly.constant(1, q) - poch_poly(q ** (-m), i, q)
        total = total + shifted * QPoly.constant((1 - q) ** m * coll, q)
    assert op_P(poly_one_minus_poch(n, q), m) == total


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("m", range(0, 5))
def test_T_on_monomial(n, m):
    q = F(5, 3)
    inv = lambda s: 1 / (1 - q**s)
    coeffs = [F(0)] * (n + 1)
    for i in range(1, n + 1):
        coll = (1 if i == n else 0) if m == 0 else inv(i) * h_range(m - 1, i, n, inv)
        coeffs[i] = (1 - q) ** m * coll
    assert op_T(X(n, q), m) == QPoly(coeffs, q)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("m", range(0, 5))
def test_T_eigenfunction(n, m):
    q = F(-1, 4)
    f = poly_one_minus_poch(n, q)
    assert op_T(f, m) == f / q_number(n, q) ** m


@pytest.mark.parametrize("n", range(0, 11))
def test_expansion_over_x(n):
    q = F(3, 8)
    lhs = QPoly(poly_one_minus_poch(n, q).coeffs[1:], q)
    rhs = QPoly.constant(0, q)
    for i in range(1, n + 1):
        rhs = rhs + poch_poly(1, i - 1, q) * QPoly.constant(q ** (i - 1), q)
    assert lhs == rhs


@pytest.mark.parametrize("n", range(0, 11))
def test_q_binomial_theorem(n):
    q = F(-5, 6)
    rhs = QPoly.constant(0, q)
    for i in range(1, n + 1):
        rhs = rhs + X(i, q, c=gauss_binomial(n, i, q) * (-1) ** (i - 1) * q ** binom2(i))
    assert poly_one_minus_poch(n, q) == rhs


@pytest.mark.parametrize("n", range(1, 11))
def test_inverted_q_binomial_theorem(n):
    q = F(7, 4)
    rhs = QPoly.constant(0, q)
    for i in range(1, n + 1):
        c = gauss_binomial(n, i, q) * (-1) ** (i - 1) * q ** (binom2(i + 1) - i * n)
        rhs = rhs + poly_one_minus_poch(i, q) * QPoly.constant(c, q)
    assert X(n, q) == rhs


def _random_poly(rng, q):
    return QPoly([rand_frac(rng) for _ in range(rng.randint(1, 9))], q)


def test_fundamental_theorem_both_directions():
    rng = random.Random(4)
    checked = 0
    while checked < 50:
        q = rand_frac(rng)
        if abs(q) == 1:
            continue
        checked += 1
        f = _random_poly(rng, q)
        assert q_derivative(jackson_integral(f)) == f
        assert jackson_integral(q_derivative(f)) == f - QPoly.constant(f[0], q)
