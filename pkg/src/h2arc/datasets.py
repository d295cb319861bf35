"""Bundled benchmark problem: five interior samples of z^5 + z^2 + 1 plus
closed-form boundary data with a tunable non-extendable part.

The boundary function f equals the trace of z^5 + z^2 + 1 plus
eps / (z - (0.4 + 0.3i)); for eps > 0 the pole term has purely
negative-index Fourier content on the circle, so f stops being the trace of
a disk-holomorphic function.  The reference h on the complementary arc is
1 / (z - 0.5i).
"""

from __future__ import annotations

import numpy as np

from .fourier import Arc, BoundaryFn
from .interpolant import InterpolationData
from .solver import ProblemSpec

BENCHMARK_POINTS = np.array([
    0.5 + 0.4j,
    -0.3 + 0.3j,
    0.2 + 0.6j,
    0.2 - 0.5j,
    0.8 - 0.1j,
])

F_POLE = 0.4 + 0.3j
H_POLE = 0.5j


def benchmark_values(points=None):
    """Exact interior data: z^5 + z^2 + 1 at each point."""
    pts = BENCHMARK_POINTS if points is None else np.asarray(points, dtype=complex)
    return pts ** 5 + pts ** 2 + 1.0


def benchmark_f(eps=0.5, quad_points=512):
    def fn(theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        return z ** 5 + z ** 2 + 1.0 + eps / (z - F_POLE)

    return BoundaryFn(fn, quad_points)


def benchmark_h(quad_points=512):
    def fn(theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        return 1.0 / (z - H_POLE)

    return BoundaryFn(fn, quad_points)


def benchmark_spec(eps=0.5, Q=20, theta0=np.pi / 3, M=None, quad_points=None,
                   interpolant="kernel"):
    """Assemble the standard benchmark ProblemSpec."""
    data = InterpolationData(BENCHMARK_POINTS, benchmark_values())
    qp = quad_points or max(512, 4 * Q)
    return ProblemSpec(f=benchmark_f(eps, qp), h=benchmark_h(qp), data=data,
                       arc=Arc(theta0), M=M, Q=Q, quad_points=qp,
                       interpolant=interpolant)
