"""Interior-data interpolants.

Given distinct points z_j in the open disk with target values w_j, two
holomorphic interpolants are provided:

* the reproducing-kernel interpolant psi(z) = sum_k c_k / (1 - conj(z_k) z),
  the unique interpolant of minimal Hardy norm; its coefficients solve a
  Hermitian positive-definite Gram system, and its boundary-trace Fourier
  coefficients follow analytically from the geometric series of each kernel
  term;
* the Lagrange polynomial interpolant of degree N-1, kept as an independent
  second construction (the final constrained solution must not depend on
  which interpolant is used).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConditioningError, InvalidArgumentError
from .fourier import FourierPoly

_MIN_SEPARATION = 1e-12
_MAX_GRAM_CONDITION = 1e12


@dataclass(frozen=True)
class InterpolationData:
    """Distinct interior points and the values to match there.  N = 0 is allowed."""

    points: np.ndarray
    values: np.ndarray

    def __init__(self, points=(), values=()):
        pts = np.asarray(list(points), dtype=complex)
        vals = np.asarray(list(values), dtype=complex)
        if pts.size != vals.size:
            raise InvalidArgumentError("points and values must have equal length")
        if pts.size and np.max(np.abs(pts)) >= 1.0:
            raise InvalidArgumentError("interpolation points must lie strictly inside the disk")
        if pts.size > 1:
            d = np.abs(pts[:, None] - pts[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() < _MIN_SEPARATION:
                raise InvalidArgumentError("interpolation points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @property
    def n_points(self):
        return self.points.size


class Interpolant:
    """A holomorphic interpolant: evaluator plus its truncated boundary trace."""

    __slots__ = ("kind", "_eval", "trace_poly", "data")

    def __init__(self, kind, evaluator, trace_poly, data):
        self.kind = kind
        self._eval = evaluator
        self.trace_poly = trace_poly
        self.data = data

    def __call__(self, z):
        return self._eval(np.asarray(z, dtype=complex))

    def on_circle(self, theta):
        return self(np.exp(1j * np.asarray(theta, dtype=float)))

    def h2_norm(self):
        """Hardy norm of the truncated trace."""
        return self.trace_poly.h2_norm()

    def __repr__(self):
        return "Interpolant(kind=%r, n_points=%d)" % (self.kind, self.data.n_points)


def gram_matrix(points):
    """Kernel Gram matrix G[k, j] = 1 / (1 - conj(z_k) z_j); Hermitian PD."""
    pts = np.asarray(points, dtype=complex)
    if pts.size > 1:
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() < _MIN_SEPARATION:
            raise InvalidArgumentError("duplicate interpolation points make the Gram "
                                       "matrix singular")
    return 1.0 / (1.0 - np.conj(pts)[:, None] * pts[None, :])


def kernel_interpolant(data, Q):
    """Minimal-Hardy-norm interpolant through the data, truncated at order Q.

    Solves the Gram system by Cholesky; refuses when the condition-number
    estimate exceeds 1e12 (points too close for a reliable solve).
    """
    Q = int(Q)
    if Q < max(data.n_points, 1):
        raise InvalidArgumentError("Q must be at least the number of interpolation points")
    if data.n_points == 0:
        zero = FourierPoly(np.zeros(Q))

        def eval_zero(z):
            return np.zeros_like(np.asarray(z, dtype=complex))

        return Interpolant("kernel", eval_zero, zero, data)

    G = gram_matrix(data.points)
    cond = float(np.linalg.cond(G))
    if not np.isfinite(cond) or cond > _MAX_GRAM_CONDITION:
        raise ConditioningError(
            "Gram system too ill-conditioned (estimate %.3e > %.0e); "
            "interpolation points are too close" % (cond, _MAX_GRAM_CONDITION),
            condition=cond)
    try:
        factor = scipy.linalg.cho_factor(G)
    except scipy.linalg.LinAlgError as exc:
        raise ConditioningError("Gram Cholesky factorization failed: %s" % exc,
                                condition=cond)
    # interpolation condition reads transpose(G) c = w; G is Hermitian, so
    # solve G conj(c) = conj(w) with the Cholesky factor of G itself
    coeff = np.conj(scipy.linalg.cho_solve(factor, np.conj(data.values)))
    pts_conj = np.conj(data.points)

    def evaluator(z):
        z = np.asarray(z, dtype=complex)
        flat = np.sum(coeff[:, None] / (1.0 - pts_conj[:, None] * z.ravel()[None, :]), axis=0)
        return flat.reshape(z.shape)

    # geometric series of each kernel term: trace coefficient n is
    # sum_k c_k conj(z_k)^n, computed analytically rather than by quadrature
    n = np.arange(Q)
    trace = FourierPoly(np.sum(coeff[:, None] * pts_conj[:, None] ** n[None, :], axis=0))
    return Interpolant("kernel", evaluator, trace, data)


def lagrange_basis(points):
    """Monomial coefficients (ascending) of each Lagrange basis polynomial."""
    pts = np.asarray(points, dtype=complex)
    N = pts.size
    basis = []
    for j in range(N):
        c = np.array([1.0 + 0.0j])
        for k in range(N):
            if k == j:
                continue
            denom = pts[j] - pts[k]
            if abs(denom) < _MIN_SEPARATION:
                raise ConditioningError("coincident nodes in Lagrange construction")
            c = np.convolve(c, np.array([-pts[k], 1.0])) / denom
        basis.append(c)
    return basis


def lagrange_interpolant(data, Q):
    """Degree-(N-1) polynomial interpolant in Lagrange form, padded to order Q."""
    Q = int(Q)
    if data.n_points < 1:
        raise InvalidArgumentError("the polynomial interpolant needs at least one point")
    if Q < data.n_points:
        raise InvalidArgumentError("Q must be at least the number of interpolation points")
    coeffs = np.zeros(Q, dtype=complex)
    for wj, basis_c in zip(data.values, lagrange_basis(data.points)):
        coeffs[: basis_c.size] += wj * basis_c
    poly = FourierPoly(coeffs)
    return Interpolant("lagrange", poly.eval, poly, data)


def make_interpolant(data, Q, kind="kernel"):
    if kind == "kernel":
        return kernel_interpolant(data, Q)
    if kind == "lagrange":
        return lagrange_interpolant(data, Q)
    raise InvalidArgumentError("unknown interpolant kind %r" % kind)
