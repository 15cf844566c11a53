"""Hypothesis-driven checks of algebraic laws and of a few identities."""
from fractions import Fraction as F

from hypothesis import assume, given, settings, strategies as st

from qdivisor.errors import PoleError
from qdivisor.operators import QPoly, jackson_integral, q_derivative
from qdivisor.qcore import complete_homogeneous, gauss_binomial, q_pochhammer
from qdivisor.registry import verify
from qdivisor.report import decode_value, encode_value

from conftest import inst

small = st.fractions(min_value=-5, max_value=5, max_denominator=50)
qs = small.filter(lambda q: q not in (0, 1, -1))
nat = st.integers(0, 10)


@given(a=small, q=qs, n=nat, m=nat)
def test_pochhammer_splits(a, q, n, m):
    assert q_pochhammer(a, q, n + m) == q_pochhammer(a, q, n) * q_pochhammer(a * q**n, q, m)


@given(q=qs, n=nat, r=nat)
def test_gauss_symmetry_and_pascal(q, n, r):
    assume(r <= n)
    assert gauss_binomial(n, r, q) == gauss_binomial(n, n - r, q)
    if 1 <= r:
        assert gauss_binomial(n + 1, r, q) == gauss_binomial(n, r - 1, q) + q**r * gauss_binomial(n, r, q)


@given(args=st.lists(small, min_size=1, max_size=5), k=st.integers(0, 5), extra=small)
def test_h_adds_one_variable(args, k, extra):
    # h_k(args, y) = sum_j y^j h_{k-j}(args)
    lhs = complete_homogeneous(k, args + [extra])
    assert lhs == sum(extra**j * complete_homogeneous(k - j, args) for j in range(k + 1))


@given(coeffs=st.lists(small, max_size=9), q=qs)
def test_derivative_undoes_integral(coeffs, q):
    f = QPoly(coeffs, q)
    assert q_derivative(jackson_integral(f)) == f
    g = jackson_integral(q_derivative(f))
    assert g == f - QPoly.constant(f[0], q)


@given(v=st.fractions(max_denominator=10**12))
def test_rational_encoding(v):
    assert decode_value(encode_value(v)) == v


@settings(max_examples=40, deadline=None)
@given(n=st.integers(0, 6), m=st.integers(1, 3), q=qs)
def test_d11_holds(n, m, q):
    assert verify("D1.1", inst("D1.1", n=n, m=m, q=q)).equal


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 6), l=st.integers(1, 3), q=qs, x=small, z=small)
def test_c34_holds_or_pole(n, l, q, x, z):
    try:
        rep = verify("C3.4", inst("C3.4", n=n, l=l, q=q, x=x, z=z))
    except PoleError:
        return
    assert rep.equal
