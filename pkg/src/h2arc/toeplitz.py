"""Compression of multiplication by the arc indicator to the analytic band.

On the truncated basis {z^{k-1}}, k = 1..Q, projecting chi_J * g back onto
the band yields the real symmetric Toeplitz matrix

    A[k, m] = sin((m - k) theta0) / (pi (m - k)),   A[k, k] = theta0 / pi.

A is a positive contraction: all eigenvalues lie strictly inside (0, 1)
whenever 0 < theta0 < pi (at theta0 = pi the matrix degenerates to the
identity).  Dense storage is used throughout; at the orders this package
targets (Q <= a few hundred) direct symmetric solves beat any fast Toeplitz
machinery worth maintaining.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError, NumericalError
from .fourier import FourierPoly

SPECTRUM_SLACK = 1e-10


class ToeplitzMatrix:
    """Dense symmetric Toeplitz compression of an arc-indicator symbol."""

    __slots__ = ("theta0", "order", "dense")

    def __init__(self, theta0, order, dense):
        self.theta0 = theta0
        self.order = order
        self.dense = dense

    def apply(self, g):
        """Matrix-vector product; accepts a FourierPoly or coefficient vector."""
        if isinstance(g, FourierPoly):
            if g.order != self.order:
                raise InvalidArgumentError("dimension mismatch: %d vs %d"
                                           % (g.order, self.order))
            return FourierPoly(self.dense @ g.coeffs)
        vec = np.asarray(g, dtype=complex)
        if vec.shape != (self.order,):
            raise InvalidArgumentError("dimension mismatch: %s vs %d"
                                       % (vec.shape, self.order))
        return self.dense @ vec

    def spectrum(self):
        """(lambda_min, lambda_max) by dense symmetric eigensolve."""
        try:
            eigs = np.linalg.eigvalsh(self.dense)
        except np.linalg.LinAlgError as exc:
            raise NumericalError("eigensolve failed: %s" % exc)
        return float(eigs[0]), float(eigs[-1])

    def __repr__(self):
        return "ToeplitzMatrix(theta0=%g, order=%d)" % (self.theta0, self.order)


def build_matrix(theta0, Q):
    """Toeplitz matrix for the arc of half-angle theta0 at truncation Q.

    theta0 = pi is admitted and yields the identity (the arc fills the
    circle); problem arcs themselves require 0 < theta0 < pi.
    """
    theta0 = float(theta0)
    Q = int(Q)
    if not (0.0 < theta0 <= np.pi):
        raise InvalidArgumentError("theta0 must lie in (0, pi]")
    if Q < 1:
        raise InvalidArgumentError("Q must be at least 1")
    k = np.arange(Q)
    d = k[None, :] - k[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        dense = np.sin(d * theta0) / (np.pi * d)
    dense[d == 0] = theta0 / np.pi
    return ToeplitzMatrix(theta0, Q, dense)


def power_moments(matrix, xi, S):
    """Moments F(k) = <A^k xi, xi> for k = 0..S, as nonnegative reals.

    Powers are never formed explicitly: iterated matrix-vector products give
    x_m = A^m xi, and the split forms F(2m) = <x_m, x_m>,
    F(2m+1) = <x_m, x_{m+1}> keep every moment a genuine quadratic form, so
    nonnegativity and monotonic decay survive rounding.
    """
    S = int(S)
    if S < 0:
        raise InvalidArgumentError("S must be nonnegative")
    vec = xi.coeffs if isinstance(xi, FourierPoly) else np.asarray(xi, dtype=complex)
    iterates = [vec]
    for _ in range(S // 2 + 1):
        iterates.append(matrix.dense @ iterates[-1])
    F = np.empty(S + 1)
    for k in range(S + 1):
        m, odd = divmod(k, 2)
        inner = np.vdot(iterates[m], iterates[m + odd])
        if abs(inner.imag) > 1e-12 * max(abs(inner.real), 1.0):
            raise NumericalError("moment %d has imaginary residue %g" % (k, inner.imag))
        F[k] = inner.real
    return F
