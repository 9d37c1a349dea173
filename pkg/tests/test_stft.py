"""Short-time Fourier transform: grids, transforms, identities, bounds."""

import numpy as np
import pytest

from ultranorm import functions as fn
from ultranorm import sequences as sq
from ultranorm import stft as st
from ultranorm import weights as wt
from ultranorm.grids import BoxGrid

import oracles

G = fn.HermiteGaussian.gaussian()
GRID = st.default_phase_grid(1)
GEVREY = sq.WeightSequence.gevrey(1.0)


def test_grid_geometry_and_nyquist_guard():
    assert GRID.x_axis[0] == -8.0 and GRID.x_axis[-1] < 8.0   # half open
    assert GRID.x_step == pytest.approx(16.0 / 256)
    assert GRID.cell_volume == pytest.approx(GRID.x_step * GRID.xi_step)
    with pytest.raises(ValueError):
        st.PhaseSpaceGrid(1, 8.0, 16, 8.0, 16)    # xi_extent * x_step = 8
    with pytest.raises(ValueError):
        st.PhaseSpaceGrid(3, 1.0, 8, 1.0, 8)


def test_widened_and_refined_grids():
    wide = GRID.widened(2)
    assert wide.x_extent == 16.0 and wide.x_points == 1024
    # Nyquist product is invariant under widening
    assert wide.xi_extent * wide.x_step == \
        pytest.approx(GRID.xi_extent * GRID.x_step)
    fine = GRID.refined(2)
    assert fine.x_extent == 8.0 and fine.x_points == 512
    assert fine.x_step == pytest.approx(GRID.x_step / 2)


def test_origin_value_is_window_pairing():
    val = st.stft_direct(G, G, np.array([0.0]), np.array([0.0]))
    # V_g g(0, 0) = <g, g> = 2^{-1/2}
    assert val == pytest.approx(2.0 ** -0.5, rel=1e-12)


def test_grid_transform_matches_direct_and_oracle():
    f = fn.HermiteGaussian.hermite([2], rate=2.0,
                                   center=[0.4]).modulate([1.0])
    S = st.stft_grid(f, G, GRID)
    rng = np.random.default_rng(3)
    ix = rng.integers(0, GRID.x_points, 40)
    iq = rng.integers(0, GRID.xi_points, 40)
    xs, qs = GRID.x_axis[ix], GRID.xi_axis[iq]
    direct = st.stft_direct(f, G, np.column_stack([xs]),
                            np.column_stack([qs]))
    scale = np.abs(S.values).max()
    assert np.abs(S.values[ix, iq] - direct).max() < 1e-12 * scale
    # independent quadrature oracle at interior nodes
    for x, q in [(0.0, 0.0), (0.5, 1.0), (-1.0, 2.0)]:
        want = oracles.direct_stft(f, G, np.array([x]), np.array([q]))
        kx = int(np.argmin(np.abs(GRID.x_axis - x)))
        kq = int(np.argmin(np.abs(GRID.xi_axis - q)))
        assert abs(S.values[kx, kq] - want) < 1e-10 * scale


def test_grid_transform_two_dimensional():
    g2 = fn.HermiteGaussian.gaussian(dim=2)
    f2 = fn.HermiteGaussian.hermite([1, 0], rate=1.5, dim=2)
    G2 = st.default_phase_grid(2)
    S2 = st.stft_grid(f2, g2, G2)
    rng = np.random.default_rng(5)
    ix = rng.integers(0, G2.x_points, 6)
    iy = rng.integers(0, G2.x_points, 6)
    ip = rng.integers(0, G2.xi_points, 6)
    iq = rng.integers(0, G2.xi_points, 6)
    X = np.column_stack([G2.x_axis[ix], G2.x_axis[iy]])
    Q = np.column_stack([G2.xi_axis[ip], G2.xi_axis[iq]])
    direct = st.stft_direct(f2, g2, X, Q)
    got = S2.values[ix, iy, ip, iq]
    assert np.abs(got - direct).max() < 1e-12 * np.abs(S2.values).max()


def test_linearity_and_covariance():
    f = fn.HermiteGaussian.hermite([1], rate=2.0)
    h = fn.HermiteGaussian.gaussian(rate=1.5, center=[0.3])
    Sf = st.stft_grid(f, G, GRID).values
    Sh = st.stft_grid(h, G, GRID).values
    Smix = st.stft_grid(f * 2.0 + h * (-1.0), G, GRID).values
    # the combined function gets its own truncation radius, so allow the
    # quadrature tails to differ
    assert np.abs(Smix - (2.0 * Sf - Sh)).max() < 1e-11
    # translation covariance: V(T_u f)(x, xi) = e^{-2 pi i xi u} Vf(x-u, xi)
    rng = np.random.default_rng(5)
    pts = rng.uniform(-1.5, 1.5, size=(10, 1))
    xis = rng.uniform(-2.0, 2.0, size=(10, 1))
    u = 0.7
    lhs = st.stft_direct(f.translate([u]), G, pts, xis)
    rhs = np.exp(-2j * np.pi * xis[:, 0] * u) * \
        st.stft_direct(f, G, pts - u, xis)
    assert np.abs(lhs - rhs).max() < 1e-9


def test_modulation_moves_the_frequency_peak():
    S = st.stft_grid(G.modulate([2.0]), G, GRID)
    kx, kq = np.unravel_index(np.argmax(np.abs(S.values)), S.values.shape)
    assert GRID.x_axis[kx] == 0.0
    assert GRID.xi_axis[kq] == 2.0


def test_isometry_holds_and_rejects_zero():
    f = fn.HermiteGaussian.hermite([2], rate=2.0,
                                   center=[0.4]).modulate([1.0])
    res = st.isometry_check(f, G, GRID)
    assert res.ok and abs(res.ratio - 1.0) < 1e-9
    assert res.ratio == pytest.approx(1.0000000000003713, rel=1e-13)
    with pytest.raises(ValueError):
        st.isometry_check(f * 0.0, G, GRID)


def test_reconstruction_identity_gaussian_triple():
    t_axis = np.linspace(-4.0, 4.0, 161)
    rec = st.reconstruction_check(G, G, G, GRID, t_axis)
    assert rec.ok and rec.max_rel_error < 1e-10
    assert rec.pairing == pytest.approx(2.0 ** -0.5, rel=1e-12)
    # the pairing normalization makes gamma = 2 psi reconstruct identically
    rec2 = st.reconstruction_check(G, G, G * 2.0, GRID, t_axis)
    assert rec2.max_rel_error == pytest.approx(rec.max_rel_error, rel=1e-6)


def test_adjoint_roundtrip_recovers_input():
    f = fn.HermiteGaussian.hermite([2], rate=2.0,
                                   center=[0.4]).modulate([1.0])
    S = st.stft_grid(f, G, GRID)
    t_axis = np.linspace(-3.0, 3.0, 121)
    adj = st.adjoint_vstar(S, G, [t_axis])
    assert adj.conclusive
    got = adj.values / G.inner(G)
    want = f.evaluate(t_axis[:, None])
    assert np.abs(got - want).max() < 1e-10


def test_adjoint_flags_cramped_grids():
    small = st.PhaseSpaceGrid(1, 2.0, 64, 2.0, 32)
    S = st.stft_grid(G, G, small)
    adj = st.adjoint_vstar(S, G, [np.linspace(-1.0, 1.0, 11)])
    assert not adj.conclusive and adj.edge_mass > 1e-6


def test_decay_bound_certificate_frozen_constant():
    sysV = wt.AssociatedExpSystem(GEVREY, 1)
    v, w = sysV.member(2), sysV.member(1)
    ng = BoxGrid(6.0, 601, 1)
    dec = st.decay_bound_check(G, G, GEVREY, 1.0, v, w, GRID, ng)
    assert dec.status == "pass" and dec.interior and dec.moments_ok
    assert dec.c_measured == pytest.approx(0.1580346557799397, rel=1e-12)
    # stable under refinement
    fine = st.decay_bound_check(G, G, GEVREY, 1.0, v, w, GRID.refined(2), ng)
    assert abs(fine.c_measured - dec.c_measured) < 1e-9 * dec.c_measured
    # widening pushes the profile max into the noise floor: honest shrug
    wide = st.decay_bound_check(G, G, GEVREY, 1.0, v, w, GRID.widened(2), ng)
    assert wide.status == "inconclusive" and not wide.interior


def test_adjoint_bound_certificate():
    wit = sq.fit_m2prime(GEVREY, 200)
    sysV = wt.AssociatedExpSystem(GEVREY, 1)
    S = st.stft_grid(G, G, GRID)
    adj = st.adjoint_bound_check(S, G, GEVREY, 1.0, sysV.member(2),
                                 sysV.member(1), wit, BoxGrid(4.0, 161, 1))
    assert adj.status == "pass"
    assert np.isfinite(adj.ratio) and adj.ratio > 0
    # k_out = h / (4 H^{d+1} pi) with H = 2, d = 1
    assert adj.k_out == pytest.approx(1.0 / (16.0 * np.pi), rel=1e-14)
    assert not adj.alpha_budget_hit and not adj.edge_hit


def test_sampled_stft_metadata():
    S = st.stft_grid(G, G, GRID)
    assert S.values.shape == (256, 256)
    assert S.flat.shape == (256, 256)
    assert S.tail_bound < 1e-12
    assert S.edge_mass() < 1e-12
    assert S.t_count > 0 and S.t_step > 0
