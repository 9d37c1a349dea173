"""Evaluation grids for weights, seminorms, and boundary-trend checks.

Weighted sup-norm checks in this package are always computed over finite
rectangular grids, so every verdict is a grid lower bound of a true
supremum.  The helpers here centralize the two things such checks keep
needing: the flattened point array, and ordered index paths running from
the center of the box to its boundary (used to classify edge behavior).
"""

from __future__ import annotations

import numpy as np


class BoxGrid:
    """Uniform closed grid on a centered box [-extent, extent]^dim.

    Parameters
    ----------
    extent : float
        Half-width of the box, identical along every axis.
    points_per_axis : int
        Number of closed-interval sample points per axis (endpoints
        included).  Odd counts place a sample at the origin.
    dim : int
        Spatial dimension, 1 or 2 for all shipped checks.
    """

    def __init__(self, extent, points_per_axis, dim=1):
        if extent <= 0:
            raise ValueError("extent must be positive")
        if points_per_axis < 2:
            raise ValueError("need at least 2 points per axis")
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.extent = float(extent)
        self.points_per_axis = int(points_per_axis)
        self.dim = int(dim)
        self.axis = np.linspace(-self.extent, self.extent, self.points_per_axis)

    @property
    def step(self):
        return 2.0 * self.extent / (self.points_per_axis - 1)

    def points(self):
        """All grid points as an (N, dim) array, C-ordered over the mesh."""
        if self.dim == 1:
            return self.axis[:, None]
        mesh = np.meshgrid(*([self.axis] * self.dim), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def radii(self):
        """Euclidean norm of every grid point, aligned with points()."""
        return np.sqrt(np.sum(self.points() ** 2, axis=1))

    def on_boundary(self):
        """Boolean mask over points(): True where some coordinate is extremal."""
        pts = self.points()
        return np.any(np.isclose(np.abs(pts), self.extent), axis=1)

    def rays(self):
        """Index paths from the center outward along each signed axis.

        Returns a list of 2 * dim integer arrays.  Each array indexes
        points() along one coordinate ray (center first, boundary last),
        which is the ordering the edge-trend classifiers expect.
        """
        n = self.points_per_axis
        mid = (n - 1) // 2
        out = []
        if self.dim == 1:
            out.append(np.arange(mid, n))
            out.append(np.arange(mid, -1, -1))
            return out
        shape = (n,) * self.dim
        center = [mid] * self.dim
        for axis in range(self.dim):
            for direction in (+1, -1):
                stop = n if direction > 0 else -1
                idx = []
                pos = list(center)
                k = mid
                while k != stop:
                    pos[axis] = k
                    idx.append(np.ravel_multi_index(tuple(pos), shape))
                    k += direction
                out.append(np.asarray(idx))
        return out

    def refine(self, factor=2):
        """Same box, (roughly) factor times denser sampling."""
        return BoxGrid(self.extent, (self.points_per_axis - 1) * factor + 1, self.dim)

    def widen(self, factor=2):
        """Larger box at the same step size."""
        return BoxGrid(self.extent * factor,
                       (self.points_per_axis - 1) * factor + 1, self.dim)

    def __repr__(self):
        return (f"BoxGrid(extent={self.extent}, "
                f"points_per_axis={self.points_per_axis}, dim={self.dim})")


def default_grid(dim):
    """Shipped evaluation boxes: generous in 1-D, coarser in 2-D."""
    if dim == 1:
        return BoxGrid(20.0, 2001, dim=1)
    if dim == 2:
        return BoxGrid(10.0, 201, dim=2)
    raise ValueError("default grids exist for dim 1 and 2 only")


def log_spaced(lo, hi, count):
    """Logarithmically spaced positive arguments for radial profiles."""
    if lo <= 0 or hi <= lo:
        raise ValueError("need 0 < lo < hi")
    return np.geomspace(lo, hi, count)


def as_points(x, dim):
    """Coerce scalars / 1-D coordinate lists / (N, dim) arrays to (N, dim).

    1-D input of length N is read as N points when dim == 1 and as a single
    point when its length equals dim > 1.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        if dim != 1:
            raise ValueError(f"scalar point given for dim={dim}")
        return arr.reshape(1, 1)
    if arr.ndim == 1:
        if dim == 1:
            return arr.reshape(-1, 1)
        if arr.shape[0] == dim:
            return arr.reshape(1, dim)
        raise ValueError(f"cannot read shape {arr.shape} as points in dim={dim}")
    if arr.ndim == 2 and arr.shape[1] == dim:
        return arr
    raise ValueError(f"cannot read shape {arr.shape} as points in dim={dim}")
