"""Finite Blaschke products.

b(z) = e^{i phase} prod_j (z - z_j) / (1 - conj(z_j) z) with all z_j in the
open disk.  Each factor is a disk automorphism, so |b| = 1 on the circle and
|b| <= 1 inside; b vanishes exactly at the z_j.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError

_MIN_SEPARATION = 1e-12


class BlaschkeProduct:
    """Immutable finite Blaschke product with distinct zeros."""

    __slots__ = ("zeros", "phase")

    def __init__(self, zeros=(), phase=0.0):
        z = np.asarray(list(zeros), dtype=complex)
        if z.size and np.max(np.abs(z)) >= 1.0:
            raise InvalidArgumentError("all zeros must lie strictly inside the unit disk")
        if z.size > 1:
            diff = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(diff, np.inf)
            if diff.min() < _MIN_SEPARATION:
                raise InvalidArgumentError(
                    "zeros must be pairwise distinct (min separation %g)" % _MIN_SEPARATION)
        self.zeros = z
        self.phase = float(phase)

    @property
    def degree(self):
        return self.zeros.size

    def __call__(self, z):
        """Evaluate on the closed disk; poles sit outside so this is finite."""
        z = np.asarray(z, dtype=complex)
        out = np.full_like(z, np.exp(1j * self.phase))
        for zj in self.zeros:
            out = out * (z - zj) / (1.0 - np.conj(zj) * z)
        return out

    def on_circle(self, theta):
        """Boundary values b(e^{i theta})."""
        return self(np.exp(1j * np.asarray(theta, dtype=float)))

    def boundary_conj(self, theta):
        """conj(b) on the circle; equals 1/b there since |b| = 1."""
        return np.conj(self.on_circle(theta))

    def __repr__(self):
        return "BlaschkeProduct(degree=%d, phase=%g)" % (self.degree, self.phase)
