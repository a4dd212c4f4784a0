"""Numeric jets validated against the symbolic differentiation engine."""

from __future__ import annotations

from itertools import product

import pytest

from hkit.exact import R, ScalarExpr, X, evaluate
from hkit.jets import PointJet

from conftest import rational_points


def _symbolic_derivatives(e, point, order):
    out = {}
    for gamma in product(range(order + 1), repeat=5):
        if sum(gamma) > order:
            continue
        v = evaluate(e.multi_diff(gamma), point)
        out[gamma] = complex(v.to_complex())
    return out


EXPRS = [
    R.rpow(-1),
    X[0] * X[0] * X[1],
    X[2] * R.rpow(-3),
    ScalarExpr.axis_pow(-1) * X[4],
    (X[1] * X[3] - X[2] * X[4]) * R.rpow(-3) * ScalarExpr.axis_pow(-1),
]


@pytest.mark.parametrize("expr_index", range(len(EXPRS)))
def test_jet_matches_symbolic(expr_index):
    """Every jet coefficient up to third order agrees with multi_diff."""
    e = EXPRS[expr_index]
    for p in rational_points(3):
        jet = PointJet(p, 3)
        got = jet.derivatives(e)
        want = _symbolic_derivatives(e, p, 3)
        assert set(got) == set(want)
        for gamma, value in want.items():
            assert got[gamma] == pytest.approx(value, rel=1e-10, abs=1e-10)


def test_jet_linearity():
    p = rational_points(1)[0]
    jet = PointJet(p, 2)
    a, b = EXPRS[0], EXPRS[1]
    combined = jet.derivatives(a + b)
    da, db = jet.derivatives(a), jet.derivatives(b)
    for gamma in combined:
        assert combined[gamma] == pytest.approx(da[gamma] + db[gamma],
                                                rel=1e-12, abs=1e-12)
