#!/usr/bin/env python3
"""Transform identities and weighted continuity bounds, measured live.

Runs the Gaussian window through the sampled transform: isometry,
reconstruction, the frequency-decay certificate with its moment reads,
and the adjoint continuity ratio.  Mirrors what `ultranorm verify` checks
but prints the numbers as a narrative.
"""

import numpy as np

from ultranorm import (AssociatedExpSystem, HermiteGaussian, WeightSequence,
                       adjoint_bound_check, decay_bound_check, fit_m2prime,
                       default_phase_grid, isometry_check,
                       reconstruction_check, stft_direct, stft_grid)
from ultranorm.grids import BoxGrid


def main():
    g = HermiteGaussian.gaussian()
    grid = default_phase_grid(1)
    seq = WeightSequence.gevrey(1.0)
    system = AssociatedExpSystem(seq, 1)

    print("sampled transform on the default grid "
          f"({grid.x_points} x {grid.xi_points} over "
          f"[-{grid.x_extent:g}, {grid.x_extent:g})^2):")
    S = stft_grid(g, g, grid)
    v00 = stft_direct(g, g, np.array([0.0]), np.array([0.0]))
    print(f"  V_g g(0, 0) = {v00.real:.12f} (closed form 2^-1/2 = "
          f"{2 ** -0.5:.12f})")
    print(f"  quadrature tail bound {S.tail_bound:.2e}, "
          f"edge mass {S.edge_mass():.2e}")

    iso = isometry_check(g, g, grid)
    print(f"\nisometry ||V g|| / (||g|| ||g||) = {iso.ratio:.12f} "
          f"({'ok' if iso.ok else 'off'} at tol {iso.tol:g})")

    t_axis = np.linspace(-4.0, 4.0, 161)
    rec = reconstruction_check(g, g, g, grid, t_axis)
    print(f"reconstruction max rel error {rec.max_rel_error:.2e} "
          f"on [-4, 4] ({'ok' if rec.ok else 'off'})")

    v, w = system.member(2), system.member(1)
    norm_grid = BoxGrid(6.0, 601, 1)
    dec = decay_bound_check(g, g, seq, 1.0, v, w, grid, norm_grid)
    print(f"\nfrequency decay: |V g| v(x) e^(M(pi |xi|)) <= C M_0 ||g||")
    print(f"  C = {dec.c_measured:.9f} [{dec.status}], profile max "
          f"{'interior' if dec.interior else 'on the edge'}, "
          f"moment reads to |alpha| <= 10 "
          f"{'consistent' if dec.moments_ok else 'INCONSISTENT'}")

    witness = fit_m2prime(seq, 200)
    adj = adjoint_bound_check(S, g, seq, 1.0, v, w, witness,
                              BoxGrid(4.0, 161, 1))
    print(f"\nadjoint continuity at k_out = h/(4 H^2 pi) = "
          f"{adj.k_out:.9f}:")
    print(f"  seminorm(V* F) / norm(F) = {adj.ratio:.9f} [{adj.status}]")


if __name__ == "__main__":
    main()
