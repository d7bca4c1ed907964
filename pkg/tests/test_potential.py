"""Green potentials, Poisson extensions, and the disk Poisson solver."""

import numpy as np
import pytest

from diskmaps import (
    GreenPotential,
    QuadratureConfig,
    QuadratureError,
    green_derivative_sup,
    green_potential,
    laplacian_residual,
    poisson_extension,
    solve_poisson,
)


def test_constant_source_matches_closed_form(quad_fast, rng):
    # Laplacian((|z|^2 - 1)/4) = 1 with zero boundary values, so G[1] is
    # exactly that profile.
    m = solve_poisson("0", "1", config=quad_fast)
    pts = 0.9 * np.sqrt(rng.uniform(0, 1, 40)) * np.exp(2j * np.pi * rng.uniform(0, 1, 40))
    ref = (np.abs(pts) ** 2 - 1.0) / 4.0
    assert np.max(np.abs(m.values(pts) - ref)) < 1e-5


def test_harmonic_extension_reproduces_re_z(quad_fast, rng):
    ext = poisson_extension("re(z)", quad_fast)
    pts = 0.95 * rng.uniform(0, 1, 30) * np.exp(2j * np.pi * rng.uniform(0, 1, 30))
    assert np.max(np.abs(ext.values(pts) - pts.real)) < 1e-12


def test_poisson_map_jets_match_finite_differences(quad_fast):
    from diskmaps import finite_difference_jet

    m = solve_poisson("re(z)", "abs(z)^2", config=quad_fast)
    for z in (0.2 + 0.1j, -0.4 + 0.3j, 0.55j):
        jet = m.jet(z)
        fd = finite_difference_jet(m.value, z, h=1e-5)
        assert abs(jet.dz - fd.dz) < 2e-5
        assert abs(jet.dzbar - fd.dzbar) < 2e-5


def test_solution_residual_matches_source(quad_fast, rng):
    m = solve_poisson("0", "z", config=quad_fast)
    pts = 0.6 * np.sqrt(rng.uniform(0, 1, 10)) * np.exp(2j * np.pi * rng.uniform(0, 1, 10))
    for z in pts:
        assert laplacian_residual(m, "z", complex(z), h=1e-3) < 1e-4


def test_residual_guards_boundary_and_step(quad_fast):
    m = solve_poisson("0", "1", config=quad_fast)
    with pytest.raises(ValueError):
        laplacian_residual(m, "1", 0.999, h=1e-3)
    with pytest.raises(ValueError):
        laplacian_residual(m, "1", 0.0, h=0.0)
    # With no explicit source the map's own declared Laplacian is used.
    assert laplacian_residual(m, None, 0.3 + 0.2j, h=1e-3) < 1e-4


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(radial_nodes=0)
    with pytest.raises(ValueError):
        QuadratureConfig(angular_nodes=-4)
    with pytest.raises(ValueError):
        QuadratureConfig(boundary_nodes=4)
    with pytest.raises(ValueError):
        QuadratureConfig(angular_nodes=9)  # FFT size must be even
    with pytest.raises(ValueError):
        QuadratureConfig(patch_nodes=9)
    with pytest.raises(ValueError):
        QuadratureConfig(singular_patch_radius=0.7)
    doubled = QuadratureConfig(radial_nodes=64).doubled()
    assert doubled.radial_nodes == 128


def test_green_potential_scalar_and_array_paths_agree(quad_fast):
    pot = GreenPotential("re(z)", quad_fast)
    pts = np.array([0.1 + 0.2j, -0.3j, 0.45])
    vals = pot.values(pts)
    for z, v in zip(pts, vals):
        assert abs(pot.value(complex(z)) - v) < 1e-13


def test_green_potential_order_one_returns_jet(quad_fast):
    jet = green_potential("1", 0.3 + 0.1j, order=1, config=quad_fast)
    # The positive-kernel potential of a unit source is (1 - |z|^2)/4,
    # so dz = -conj(z)/4 and dzbar = -z/4.
    z = 0.3 + 0.1j
    assert abs(jet.value - (1.0 - abs(z) ** 2) / 4.0) < 1e-5
    assert abs(jet.dz + z.conjugate() / 4.0) < 1e-5
    assert abs(jet.dzbar + z / 4.0) < 1e-5
    with pytest.raises(ValueError):
        green_potential("1", 0.3, order=2, config=quad_fast)


def test_source_grid_sup_on_polynomial_source(quad_fast):
    # sup over the closed disk of |24 z - 80 z^4 conj(z)^3| is attained on
    # the boundary where the moduli add along theta = pi: 24 + 80 at r = 1
    # minus cross terms; the radial profile 24 r + 80 r^7 peaks at 104, and
    # the true sup with signs is 56 at z = 1 (24 - 80 flips sign; the max of
    # |24 z - 80 z^4 conj(z)^3| = |z| |24 - 80 z^3 conj(z)^3| = r |24 - 80 r^6|
    # on r in [0, 1] is 56).
    pot = GreenPotential("24*z - 80*z^4*conj(z)^3", quad_fast)
    assert pot.source_grid_sup() == pytest.approx(56.0, abs=1e-3)


def test_self_check_flags_inconsistent_quadrature(quad_fast):
    pot = GreenPotential("1", quad_fast)
    pot.self_check()  # smooth source: doubling the nodes must agree
    coarse = QuadratureConfig(radial_nodes=8, angular_nodes=8,
                              patch_nodes=8, boundary_nodes=16)
    rough = GreenPotential("exp(4*re(z)) * im(z)", coarse)
    with pytest.raises(QuadratureError):
        rough.self_check(tolerance=1e-12)


def test_derivative_sup_reports_interior_and_boundary(quad_fast):
    est = green_derivative_sup("1", config=quad_fast,
                               interior_radial=12, interior_angular=48,
                               shell_count=4, shell_angular=64)
    # |dG/dz| = |conj(z)|/4 <= 1/4, attained in the boundary limit.
    assert est.sup == pytest.approx(0.25, abs=1e-5)
    assert est.boundary_limit == pytest.approx(0.25, abs=1e-5)
    assert est.interior_sup <= est.sup + 1e-12
    assert len(est.shell_radii) == len(est.shell_sups) == 4
