"""DeficitReport classification and serialization."""
import json
import math

import pytest

from hessian_symm.report import CSV_FIELDS, FAIL, PASS, VACUOUS, DeficitReport, classify, fmt, pass_tolerance


def test_classify():
    assert classify(0.0, 0.0, 0.0) == VACUOUS
    assert classify(1e-9, 0.0, 0.0) == VACUOUS
    assert classify(1e-7, 0.0, 0.0) == PASS
    assert classify(1.0, 0.5, 0.1) == PASS
    assert classify(0.5, 1.0, 0.1) == FAIL
    assert classify(1.0, 1.0 + 0.5 * pass_tolerance(1.0), 0.1) == PASS
    assert classify(0.0, 1e-12, None) == PASS


def test_tolerance():
    assert pass_tolerance(0.01) == 1e-10
    assert pass_tolerance(-300.0) == pytest.approx(3e-8)


def test_report_row_and_json():
    r = DeficitReport("x", 0.3, 0.1, PASS, n=2, k=1, alpha=0.2, body_id="b", constants={"c1": 1e-6})
    assert r.margin == pytest.approx(0.2) and r.ok
    assert tuple(r.row()) == CSV_FIELDS
    js = r.to_json()
    assert set(js) == {"name", "n", "k", "body_id", "alpha", "lhs", "rhs", "margin", "status", "constants"}
    json.dumps(js)
    assert not DeficitReport("y", 0.0, 1.0, FAIL).ok


def test_json_nonfinite():
    js = DeficitReport("x", math.inf, 0.0, PASS).to_json()
    assert js["lhs"] is None and js["margin"] is None


def test_fmt_round_trip():
    for x in (0.1, 1 / 3, math.pi * 1e-300, 2.0**-1074, 1e308):
        assert float(fmt(x)) == x
    assert fmt(None) == "" and fmt(3) == "3"
