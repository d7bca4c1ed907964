"""Coefficient and derivative bound displays with provenance-aware context."""

import math

import numpy as np
import pytest

from diskmaps import (
    HOLD_TOLERANCE,
    INEQUALITY_IDS,
    BoundContext,
    BoundReport,
    EllipticityParams,
    SeriesMap,
    coefficient_bounds_report,
    derivative_bounds_report,
    extract_coeffs,
)


def identity_context() -> BoundContext:
    table = extract_coeffs(SeriesMap([0, 1]), count=8)
    return BoundContext(
        params=EllipticityParams(K=1.0, Kprime=0.0),
        R=1.0,
        R_provenance="given",
        perimeter_sup=2.0 * math.pi,
        radial_sup=1.0,
        coeffs=table,
    )


def test_report_rejects_unknown_inequality_id():
    with pytest.raises(ValueError):
        BoundReport(inequality_id="made-up", index=1, lhs=0.0, rhs=1.0,
                    margin=1.0, status="holds")
    assert "chen-1.0" in INEQUALITY_IDS
    assert "radial-subharmonic" in INEQUALITY_IDS


def test_status_tolerance_edges():
    assert BoundReport.evaluated("Mat-1", 1, 1.0, 1.0).status == "holds"
    exact_edge = BoundReport.evaluated("Mat-1", 1, 1.0, 1.0 - 0.5 * HOLD_TOLERANCE)
    assert exact_edge.status == "holds"
    violated = BoundReport.evaluated("Mat-1", 1, 1.0, 1.0 - 3.0 * HOLD_TOLERANCE)
    assert violated.status == "violated"
    assert BoundReport.indeterminate("Mat-1").status == "indeterminate"
    assert math.isnan(BoundReport.indeterminate("Mat-1").margin)


def test_context_validation():
    with pytest.raises(ValueError):
        BoundContext(R=-1.0)
    with pytest.raises(ValueError):
        BoundContext(perimeter_sup=-0.1)
    with pytest.raises(ValueError):
        BoundContext(radial_sup=-0.1)


def test_missing_context_yields_indeterminate_rows():
    rows = coefficient_bounds_report(BoundContext(), n_max=3)
    assert rows
    assert all(r.status == "indeterminate" for r in rows)
    rows = derivative_bounds_report(BoundContext(), SeriesMap([0, 1]))
    ids = {r.inequality_id for r in rows}
    assert ids == {"kalaj-1", "CP-K", "CRP-2c"}
    assert all(r.status == "indeterminate" for r in rows)


def test_identity_context_is_tight_where_expected():
    rows = coefficient_bounds_report(identity_context(), n_max=4)
    by_key = {(r.inequality_id, r.index): r for r in rows}
    # |a_1| + |b_1| = 1 meets (sqrt(K') + K R)/1 = 1 exactly.
    assert by_key[("chen-1.0", 1)].margin == pytest.approx(0.0, abs=1e-10)
    # K P / (2 pi) = 1 as well.
    assert by_key[("CRP-1c", 1)].margin == pytest.approx(0.0, abs=1e-10)
    # P / pi = 2 leaves a full unit of slack.
    assert by_key[("Mat-1", 1)].margin == pytest.approx(1.0, abs=1e-10)
    assert by_key[("eq-2017", 1)].margin == pytest.approx(0.0, abs=1e-10)
    assert by_key[("chen-1.2", 1)].margin == pytest.approx(0.0, abs=1e-10)
    # Higher indices only gain slack for the 1/n families and the lhs
    # drops to 0, so everything holds.
    assert all(r.status == "holds" for r in rows)


def test_identity_derivative_rows_hold_on_grid():
    rows = derivative_bounds_report(identity_context(), SeriesMap([0, 1]))
    assert {r.inequality_id for r in rows} == {"kalaj-1", "CP-K", "CRP-2c"}
    for r in rows:
        assert r.status == "holds"
        assert isinstance(r.index, complex)


def test_explicit_points_and_per_point_rows():
    ctx = identity_context()
    rows = derivative_bounds_report(ctx, SeriesMap([0, 1]),
                                    points=[0.0, 0.5, 0.5j], per_point=True)
    kalaj = [r for r in rows if r.inequality_id == "kalaj-1"]
    assert len(kalaj) == 3
    # At z = 0 the display reads 1 <= R exactly.
    at0 = next(r for r in kalaj if r.index == 0.0)
    assert at0.margin == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        derivative_bounds_report(ctx, SeriesMap([0, 1]), points=[])
    with pytest.raises(ValueError):
        derivative_bounds_report(ctx, SeriesMap([0, 1]), points=[1.2])


def test_nmax_validation_and_row_count():
    with pytest.raises(ValueError):
        coefficient_bounds_report(identity_context(), n_max=0)
    rows = coefficient_bounds_report(identity_context(), n_max=6)
    # Five coefficient families, one row per index.
    assert len(rows) == 5 * 6


def test_derivative_rows_skip_nan_jets():
    # A map with a jet failure at some points still reports on the rest.
    class Spotty(SeriesMap):
        def jets(self, z):
            v, dz, db = super().jets(z)
            mask = np.abs(z) < 0.05
            dz = np.where(mask, complex("nan"), dz)
            return v, dz, db

    rows = derivative_bounds_report(identity_context(), Spotty([0, 1]),
                                    points=[0.01, 0.5], per_point=True)
    kalaj = {r.index: r for r in rows if r.inequality_id == "kalaj-1"}
    assert kalaj[0.01 + 0j].status == "indeterminate"
    assert kalaj[0.5 + 0j].status == "holds"
