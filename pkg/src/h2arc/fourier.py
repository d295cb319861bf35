"""Truncated Fourier representation of boundary functions on the unit circle.

Boundary functions live on the circle parameterized by the angle theta in
radians.  The inner product throughout is

    <u, v> = (1/2pi) integral u(theta) conj(v(theta)) dtheta,

so that {e^{ik theta}} is orthonormal.  Analytic (nonnegative-index) Fourier
content identifies with holomorphic functions on the disk whose Taylor
coefficients are square-summable.

Two quadrature schemes coexist here:

* a uniform trapezoid grid (always containing theta = 0), used by the
  projection operators and :func:`inner_product_arc`.  Arc restriction clips
  the grid to the arc, giving half weight to nodes that land exactly on an
  arc endpoint; with any grid the I- and J-restricted rules add up exactly
  to the full-circle rule.
* composite Gauss-Legendre panels on an arc (:func:`arc_quadrature`), used
  wherever machine-accurate arc integrals of smooth integrands are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError

# node-vs-endpoint coincidence tolerance for the trapezoid arc rule
_ENDPOINT_TOL = 1e-12


class FourierPoly:
    """Analytic trigonometric polynomial g(z) = sum_{k=1}^{Q} c_k z^{k-1}.

    The discrete stand-in for disk-holomorphic functions: coefficients are
    the first Q nonnegative-index Fourier coefficients of the boundary trace.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size < 1:
            raise InvalidArgumentError("coeffs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise InvalidArgumentError("coeffs must be finite")
        self.coeffs = c

    @property
    def order(self):
        """Number of retained coefficients Q."""
        return self.coeffs.size

    def __len__(self):
        return self.coeffs.size

    def eval(self, z):
        """Evaluate at complex z (scalar or array) by Horner's scheme."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out

    def trace(self, theta):
        """Boundary values at angles theta."""
        return self.eval(np.exp(1j * np.asarray(theta, dtype=float)))

    def h2_norm(self):
        """Hardy-space norm: sqrt of the coefficient energy (Parseval)."""
        return float(np.linalg.norm(self.coeffs))

    def __add__(self, other):
        n = max(len(self), len(other))
        a = np.zeros(n, dtype=complex)
        a[: len(self)] = self.coeffs
        a[: len(other)] += other.coeffs
        return FourierPoly(a)

    def __sub__(self, other):
        n = max(len(self), len(other))
        a = np.zeros(n, dtype=complex)
        a[: len(self)] = self.coeffs
        a[: len(other)] -= other.coeffs
        return FourierPoly(a)

    def __mul__(self, scalar):
        return FourierPoly(self.coeffs * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return "FourierPoly(order=%d)" % self.order


class BoundaryFn:
    """A 2pi-periodic complex-valued evaluator on the circle.

    Wraps a vectorized callable ``theta -> complex`` together with the
    uniform-grid resolution used by grid-based operations on it.
    """

    __slots__ = ("fn", "quad_points")

    def __init__(self, fn, quad_points=512):
        if quad_points < 1:
            raise InvalidArgumentError("quad_points must be positive")
        self.fn = fn
        self.quad_points = int(quad_points)

    def __call__(self, theta):
        return np.asarray(self.fn(np.asarray(theta, dtype=float)), dtype=complex)

    @classmethod
    def from_poly(cls, poly, quad_points=512):
        """Boundary trace of a :class:`FourierPoly`."""
        return cls(poly.trace, quad_points)

    @classmethod
    def constant(cls, value, quad_points=512):
        v = complex(value)
        return cls(lambda th: np.full_like(np.asarray(th, dtype=float), v, dtype=complex),
                   quad_points)

    @classmethod
    def from_samples(cls, theta, values, quad_points=512):
        """Periodic linear interpolation through uniform angle samples."""
        th = np.asarray(theta, dtype=float) % (2 * np.pi)
        order = np.argsort(th)
        th = th[order]
        vals = np.asarray(values, dtype=complex)[order]
        # wrap-around knots so interpolation is periodic
        th_ext = np.concatenate([th, [th[0] + 2 * np.pi]])
        vals_ext = np.concatenate([vals, [vals[0]]])

        def interp(t):
            t = np.asarray(t, dtype=float) % (2 * np.pi)
            t = np.where(t < th[0], t + 2 * np.pi, t)
            re = np.interp(t, th_ext, vals_ext.real)
            im = np.interp(t, th_ext, vals_ext.imag)
            return re + 1j * im

        return cls(interp, quad_points)


@dataclass(frozen=True)
class Arc:
    """The arc J = {e^{i theta}: theta in [-theta0, theta0]}; I is its complement."""

    theta0: float

    def __post_init__(self):
        if not (0.0 < self.theta0 < np.pi):
            raise InvalidArgumentError("theta0 must lie strictly between 0 and pi")

    @property
    def j_measure(self):
        """Normalized length of J: |J| / 2pi."""
        return self.theta0 / np.pi


def uniform_grid(n):
    """n uniform angles on [0, 2pi) starting at theta = 0."""
    return 2 * np.pi * np.arange(n) / n


def _arc_weights(theta, arc, part):
    """Trapezoid weights (including the 1/2pi factor) clipped to an arc.

    Nodes strictly inside the arc get full weight; a node landing exactly on
    +-theta0 gets half weight.  The I and J weight vectors always add up to
    the full-circle vector, so arc inner products are exactly additive.
    """
    n = theta.size
    h = 2 * np.pi / n
    full = np.full(n, h / (2 * np.pi))
    if part == "full":
        return full
    # signed angle in (-pi, pi]
    wrapped = (theta + np.pi) % (2 * np.pi) - np.pi
    dist = np.abs(wrapped)
    on_edge = np.abs(dist - arc.theta0) <= _ENDPOINT_TOL
    inside_j = dist < arc.theta0 - _ENDPOINT_TOL
    w = np.zeros(n)
    if part == "J":
        w[inside_j] = full[inside_j]
    elif part == "I":
        w[~inside_j & ~on_edge] = full[~inside_j & ~on_edge]
    else:
        raise InvalidArgumentError("part must be one of 'full', 'I', 'J'")
    w[on_edge] = 0.5 * full[on_edge]
    return w


def inner_product_arc(u, v, arc=None, part="full", n=None):
    """(1/2pi) integral of u * conj(v) over the circle, I, or J.

    Uses the uniform trapezoid grid of ``n`` points (defaults to the larger
    ``quad_points`` of the operands).  For spectrally-accurate arc integrals
    of smooth functions use :func:`arc_quadrature` instead; this rule is
    O(h^2) on arcs whose endpoints lie on grid nodes.
    """
    if part != "full" and arc is None:
        raise InvalidArgumentError("an Arc is required for part %r" % part)
    if n is None:
        n = max(getattr(u, "quad_points", 0), getattr(v, "quad_points", 0), 16)
    theta = uniform_grid(n)
    w = _arc_weights(theta, arc, part)
    return complex(np.sum(w * u(theta) * np.conj(v(theta))))


def project_plus(u, Q, n=None):
    """First Q nonnegative-index Fourier coefficients of u as a FourierPoly.

    Coefficients are computed by full-circle trapezoid quadrature on the
    uniform grid, which is spectrally accurate for smooth periodic u.  The
    grid must oversample the target band: n >= 4Q.
    """
    Q = int(Q)
    if Q < 1:
        raise InvalidArgumentError("Q must be at least 1")
    if n is None:
        n = getattr(u, "quad_points", 0) or 4 * Q
    if n < 4 * Q:
        raise InvalidArgumentError("quad_points=%d violates the oversampling rule n >= 4Q=%d"
                                   % (n, 4 * Q))
    theta = uniform_grid(n)
    vals = u(theta)
    k = np.arange(Q)
    coeffs = np.exp(-1j * np.outer(k, theta)) @ vals / n
    return FourierPoly(coeffs)


def project_minus(u, Q, n=None):
    """First Q negative-index coefficients of u: entry m is that of e^{-i(m+1)theta}."""
    Q = int(Q)
    if Q < 1:
        raise InvalidArgumentError("Q must be at least 1")
    if n is None:
        n = getattr(u, "quad_points", 0) or 4 * Q
    if n < 4 * Q:
        raise InvalidArgumentError("quad_points=%d violates the oversampling rule n >= 4Q=%d"
                                   % (n, 4 * Q))
    theta = uniform_grid(n)
    vals = u(theta)
    k = np.arange(1, Q + 1)
    return np.exp(1j * np.outer(k, theta)) @ vals / n


def reconstruct(plus_poly, minus_coeffs, theta):
    """Evaluate the two-sided truncation P_plus u + P_minus u at angles theta."""
    theta = np.asarray(theta, dtype=float)
    out = plus_poly.trace(theta)
    for m, c in enumerate(minus_coeffs, start=1):
        out = out + c * np.exp(-1j * m * theta)
    return out


# ---------------------------------------------------------------------------
# Gauss-Legendre arc panels
# ---------------------------------------------------------------------------

_GL_NODES_PER_PANEL = 24


def arc_quadrature(theta_a, theta_b, max_mode, nodes_per_panel=_GL_NODES_PER_PANEL):
    """Nodes and weights integrating (1/2pi) int_a^b u(theta) dtheta.

    Composite Gauss-Legendre panels sized so that oscillations up to
    e^{i max_mode theta} are integrated to near machine precision.
    """
    if theta_b <= theta_a:
        raise InvalidArgumentError("empty arc: theta_b must exceed theta_a")
    length = theta_b - theta_a
    n_panels = max(8, int(np.ceil(length * max(max_mode, 1) / 40.0)) + 4)
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.linspace(theta_a, theta_b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel() / (2 * np.pi)
    return nodes, weights
