from fractions import Fraction as F

import pytest

from qdivisor.errors import DomainError, SchemaError
from qdivisor.registry import eval_side, probe_noninteger

from conftest import inst


def test_pc112_integer_order_matches_exact():
    rep = probe_noninteger("PC1.12", inst("PC1.12", a=3, k=2, q="1/3", z="1/5", t="1/7"))
    assert rep.status == "report" and rep.residual <= 1e-30
    exact = eval_side("PC1.12", "lhs", inst("PC1.12", n=3, k=2, q="1/3", z="1/5", t="1/7"))
    assert abs(rep.lhs - rep.lhs.context.mpf(exact.numerator) / exact.denominator) <= 1e-30


def test_pb111_integer_order_matches_exact():
    s = dict(l_vec="1", z_vec="1/5", q="1/3", x="1/2")
    rep = probe_noninteger("PB1.11", inst("PB1.11", a=4, **s))
    exact = eval_side("PB1.11", "rhs", inst("PB1.11", n=4, **s))
    assert abs(rep.rhs - rep.rhs.context.mpf(exact.numerator) / exact.denominator) <= 1e-30
    assert rep.residual <= 1e-30


def test_n216_probe_point():
    rep = probe_noninteger("N2.16", inst("N2.16", a="1/2", q="2/5", x="1/3"))
    assert rep.residual <= 1e-25 and rep.status == "report"


@pytest.mark.parametrize("id,params", [("PC1.12", dict(k=1, q="1/3", z="1/5", t="1/7")),
                                       ("PB1.11", dict(l_vec="1", z_vec="1/5", q="1/3", x="1/2"))])
def test_zero_order(id, params):
    rep = probe_noninteger(id, inst(id, a=0, **params))
    assert rep.lhs == 0 and rep.rhs == 0


def test_noninteger_is_report_only():
    rep = probe_noninteger("PC1.12", inst("PC1.12", a="1/2", k=1, q="1/3", z="1/5", t="1/7"))
    assert rep.status == "report" and rep.passed
    assert "exploratory" in rep.note


def test_probe_domain():
    with pytest.raises(DomainError):
        probe_noninteger("PC1.12", inst("PC1.12", a=3, k=1, q="2", z="1/5", t="1/7"))


def test_probe_unknown_id():
    with pytest.raises(SchemaError):
        probe_noninteger("D1.1", inst("D1.1", a=1, m=1, q="1/2"))
