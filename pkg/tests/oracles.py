"""Independent brute-force references shared by the test modules.

Everything here is computed from first principles with numpy / scipy only,
never through the package's own fast paths, so a test that compares the
two is a genuine cross-check and not a tautology.
"""

import numpy as np
from scipy.special import gammaln


def brute_assoc_gevrey(s, t, scan_upto=12000):
    """sup_p log(t^p / (p!)^s) by exhaustive or windowed scan.

    The summand p log t - s log p! is concave in p (log-convexity of the
    factorial), so when the analytic argmax t^(1/s) lies past the scan
    range a window around it contains the sup; the window edges are
    checked to be below the interior max.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape)
    p = np.arange(scan_upto + 1, dtype=float)
    logfac = gammaln(p + 1.0)
    for i, ti in enumerate(t.ravel()):
        if ti <= 0.0:
            out.ravel()[i] = 0.0
            continue
        star = ti ** (1.0 / s)
        if star < scan_upto - 10:
            vals = p * np.log(ti) - s * logfac
            out.ravel()[i] = max(vals.max(), 0.0)
        else:
            lo = max(0, int(star) - 50)
            q = np.arange(lo, int(star) + 51, dtype=float)
            vals = q * np.log(ti) - s * gammaln(q + 1.0)
            k = int(np.argmax(vals))
            assert 0 < k < q.size - 1, "window missed the concave peak"
            out.ravel()[i] = max(float(vals[k]), 0.0)
    return out


def brute_assoc_table(log_m, t):
    """sup over the full table of log(t^p M_0 / M_p), clamped at zero."""
    log_m = np.asarray(log_m, dtype=float)
    t = np.asarray(t, dtype=float)
    p = np.arange(log_m.size, dtype=float)
    with np.errstate(divide="ignore"):
        logt = np.where(t > 0, np.log(t), -np.inf)
    vals = p[None, :] * logt[:, None] + log_m[0] - log_m[None, :]
    return np.maximum(vals.max(axis=1), 0.0)


def quad_inner(f, g, extent=12.0, points=20001):
    """Trapezoid <f, g> = integral f conj(g) over [-extent, extent]^1."""
    x = np.linspace(-extent, extent, points)
    pts = x[:, None]
    return np.trapezoid(f.evaluate(pts) * np.conj(g.evaluate(pts)), x)


def quad_inner_2d(f, g, extent=6.0, points=401):
    x = np.linspace(-extent, extent, points)
    mesh = np.stack(np.meshgrid(x, x, indexing="ij"), axis=-1)
    pts = mesh.reshape(-1, 2)
    vals = (f.evaluate(pts) * np.conj(g.evaluate(pts))).reshape(points, points)
    return np.trapezoid(np.trapezoid(vals, x, axis=1), x)


def fd_partial(f, axis, pts, step=1e-3):
    """Fourth-order central difference of f along one axis."""
    pts = np.asarray(pts, dtype=float)
    e = np.zeros(pts.shape[1])
    e[axis] = 1.0
    return (-f.evaluate(pts + 2 * step * e) + 8 * f.evaluate(pts + step * e)
            - 8 * f.evaluate(pts - step * e) + f.evaluate(pts - 2 * step * e)) \
        / (12 * step)


def direct_stft(f, psi, x, xi, extent=14.0, points=28001):
    """V_psi f(x, xi) by plain trapezoid quadrature in one dimension."""
    t = np.linspace(-extent, extent, points)
    pts = t[:, None]
    integrand = f.evaluate(pts) * np.conj(psi.evaluate(pts - np.asarray(x))) \
        * np.exp(-2j * np.pi * np.asarray(xi) * t)
    return np.trapezoid(integrand, t)
