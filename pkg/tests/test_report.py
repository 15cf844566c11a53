import json
from fractions import Fraction as F

from qdivisor.numeric.series import context
from qdivisor.registry import verify
from qdivisor.report import ReportDocument, VerificationReport, decode_value, dumps_roundtrip, encode_value

from conftest import inst


def _doc():
    reps = [verify("D1.1", inst("D1.1", n=2, m=1, q="1/2")),
            verify("K1.2", inst("K1.2", q="1/2")),
            verify("J2.6", inst("J2.6", n=3, q="1/2", x="1/3", y="2"), printed=True)]
    return ReportDocument({"command": "verify"}, reps, "0.1.0")


def test_rational_text():
    assert encode_value(F(-4, 3)) == "-4/3"
    assert decode_value("-4/3") == F(-4, 3)
    big = F(3**200, 7**90)
    assert decode_value(encode_value(big)) == big


def test_real_roundtrip_bit_exact():
    ctx = context(192)
    for v in (+ctx.pi, ctx.mpf(1) / 3, ctx.exp(-100), -ctx.sqrt(2) * 10**40):
        enc = encode_value(v)
        assert enc["prec"] == 192
        assert decode_value(enc) == v


def test_json_roundtrip_byte_identical():
    text = _doc().to_json()
    assert dumps_roundtrip(text) == text


def test_from_dict_restores_values():
    for rep in _doc().reports:
        back = VerificationReport.from_dict(json.loads(json.dumps(rep.to_dict())))
        assert back.to_dict() == rep.to_dict()
    d1 = VerificationReport.from_dict(_doc().reports[0].to_dict())
    assert d1.lhs == F(4, 3)


def test_summary_and_errata():
    doc = _doc().to_dict(timing=False)
    s = doc["summary"]
    assert (s["pass"], s["xfail"], s["total"]) == (2, 1, 3)
    assert doc["errata"] == ["J2.6-constant"]
    assert all("elapsed" not in r for r in doc["reports"])


def test_csv_one_row_per_report():
    text = _doc().to_csv()
    rows = text.strip().splitlines()
    assert rows[0].startswith("id,status,backend")
    assert len(rows) == 4
    assert rows[1].startswith("D1.1,pass,exact")
    assert "4/3" in rows[1]
