"""Topological charge quadrature on the four-sphere."""

from __future__ import annotations

import time

import pytest

from hkit.topology import ChargeResult, QuadratureSpec, topological_charge


def test_unit_charge():
    res = topological_charge(QuadratureSpec((16, 16, 8, 8), 1.0))
    assert abs(res.total - 1.0) < 1e-10
    assert len(res.components) == 3
    for q in res.components:
        assert abs(q - 1.0 / 3.0) < 1e-10


def test_components_sum_to_total():
    res = topological_charge()
    assert sum(res.components) == pytest.approx(res.total, abs=1e-14)


def test_node_doubling_estimate():
    res = topological_charge(QuadratureSpec((16, 16, 8, 8), 1.0))
    assert res.estimated_error < 1e-12


def test_radius_independence():
    base = topological_charge(QuadratureSpec((16, 16, 8, 8), 1.0))
    for radius in (0.5, 2.0, 17.0):
        other = topological_charge(QuadratureSpec((16, 16, 8, 8), radius))
        assert abs(other.total - base.total) < 1e-12
        assert other.radius == radius


def test_coarse_grid_is_honest():
    """Fewer nodes gives a larger internal error estimate, and the estimate
    bounds the true defect within an order of magnitude."""
    coarse = topological_charge(QuadratureSpec((6, 6, 4, 4), 1.0))
    fine = topological_charge(QuadratureSpec((16, 16, 8, 8), 1.0))
    assert coarse.estimated_error >= fine.estimated_error
    assert abs(coarse.total - 1.0) < max(10 * coarse.estimated_error, 1e-10)


def test_runtime_budget():
    start = time.perf_counter()
    topological_charge(QuadratureSpec((16, 16, 8, 8), 1.0))
    assert time.perf_counter() - start < 1.0


def test_result_fields():
    res = topological_charge()
    assert isinstance(res, ChargeResult)
    assert res.nodes == (16, 16, 8, 8)
    assert res.radius == 1.0
