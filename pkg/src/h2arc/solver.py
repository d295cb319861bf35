"""Constrained boundary approximation on the disk.

Problem: among holomorphic functions matching prescribed interior values,
find the one closest (in L2) to given data f on the arc I while staying
within L2 distance M of reference data h on the complementary arc J.  With
psi any interpolant of the interior data and b the Blaschke product
vanishing at the interior points, candidates take the form psi + b g with g
ranging over the Hardy space, and the minimizer solves

    (1 + mu A) g = P_plus( bconj (f - psi) on I, (1 + mu) bconj (h - psi) on J )

where A is the arc-indicator Toeplitz compression and mu > -1 is a scalar
parameter.  The approximation error e(mu) = ||psi + b g - f||^2 on I grows
strictly with mu while the discrepancy M0(mu) = ||psi + b g - h|| on J
strictly falls, with de/dmu = -(mu + 1) d(M0^2)/dmu; the constraint is
enforced by tuning mu until M0(mu) = M (bisection, exploiting strict
monotonicity).

All arc integrals in the assembly and in e/M0 are evaluated on composite
Gauss-Legendre panels (machine accurate for these smooth integrands), so the
monotonicity and derivative identities hold down to rounding in the discrete
system as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .blaschke import BlaschkeProduct
from .errors import (InfeasibleConstraintError, InvalidArgumentError,
                     NumericalError)
from .fourier import Arc, BoundaryFn, FourierPoly, arc_quadrature
from .interpolant import InterpolationData, make_interpolant
from .toeplitz import build_matrix

# bisection bracket expansion and hard stops
_BRACKET_LO0 = -0.99
_BRACKET_HI0 = 1.0
_MU_LO_STOP = -1.0 + 1e-9
_MU_HI_STOP = 1e6
_MAX_BISECT = 400

_QUAD_MODE_MARGIN = 40


@dataclass
class ProblemSpec:
    """Full problem instance.

    f is meaningful on I, h on J; M is the discrepancy budget on J (may be
    left None when only fixed-mu solves are wanted); Q is the truncation
    order of the unknown; quad_points the uniform-grid resolution used by
    grid-based diagnostics.
    """

    f: BoundaryFn
    h: BoundaryFn
    data: InterpolationData
    arc: Arc
    M: Optional[float] = None
    Q: int = 20
    quad_points: int = 0
    interpolant: str = "kernel"
    blaschke_phase: float = 0.0

    def __post_init__(self):
        if self.Q < 1:
            raise InvalidArgumentError("Q must be at least 1")
        if self.Q < self.data.n_points:
            raise InvalidArgumentError(
                "Q=%d cannot represent an interpolant of %d points"
                % (self.Q, self.data.n_points))
        if not self.quad_points:
            self.quad_points = max(512, 4 * self.Q)
        if self.quad_points < 4 * self.Q:
            raise InvalidArgumentError(
                "quad_points=%d violates the oversampling rule n >= 4Q=%d"
                % (self.quad_points, 4 * self.Q))
        if self.M is not None and not (self.M > 0):
            raise InfeasibleConstraintError(
                "the discrepancy budget M must be strictly positive")


class DiscreteSystem:
    """Assembled discrete problem: matrix, data vectors and node caches.

    Immutable after construction; every solve is a pure function of mu.
    """

    def __init__(self, spec, kind=None):
        self.spec = spec
        kind = kind or spec.interpolant
        self.psi = make_interpolant(spec.data, spec.Q, kind)
        self.b = BlaschkeProduct(spec.data.points, spec.blaschke_phase)
        self.matrix = build_matrix(spec.arc.theta0, spec.Q)
        self.A = self.matrix.dense
        t0 = spec.arc.theta0
        max_mode = 2 * spec.Q + _QUAD_MODE_MARGIN
        self.thI, self.wI = arc_quadrature(t0, 2 * np.pi - t0, max_mode)
        self.thJ, self.wJ = arc_quadrature(-t0, t0, max_mode)
        zI, zJ = np.exp(1j * self.thI), np.exp(1j * self.thJ)
        self.bI, self.bJ = self.b(zI), self.b(zJ)
        self.fI, self.hJ = spec.f(self.thI), spec.h(self.thJ)
        self.psiI, self.psiJ = self.psi(zI), self.psi(zJ)
        k = np.arange(spec.Q)
        self.VI = np.exp(1j * np.outer(self.thI, k))
        self.VJ = np.exp(1j * np.outer(self.thJ, k))
        # analytic-band moments of the two arc-restricted right-hand parts
        self.r = self.VI.conj().T @ (self.wI * np.conj(self.bI) * (self.fI - self.psiI))
        self.t = self.VJ.conj().T @ (self.wJ * np.conj(self.bJ) * (self.hJ - self.psiJ))
        self.f_norm_I = float(np.sqrt(np.sum(self.wI * np.abs(self.fI) ** 2).real))
        self.h_norm_J = float(np.sqrt(np.sum(self.wJ * np.abs(self.hJ) ** 2).real))

    def rhs(self, mu):
        return self.r + (1.0 + mu) * self.t

    def solve_coefficients(self, mu):
        """g solving (1 + mu A) g = rhs(mu); requires mu > -1."""
        if mu <= -1.0:
            raise InvalidArgumentError("mu must exceed -1 (operator invertible there)")
        lhs = np.eye(self.spec.Q) + mu * self.A
        s = self.rhs(mu)
        try:
            factor = scipy.linalg.cho_factor(lhs)
            g = scipy.linalg.cho_solve(factor, s.real) \
                + 1j * scipy.linalg.cho_solve(factor, s.imag)
        except scipy.linalg.LinAlgError:
            try:
                g = scipy.linalg.solve(lhs, s, assume_a="sym")
            except scipy.linalg.LinAlgError as exc:
                raise NumericalError("linear solve failed at mu=%g: %s" % (mu, exc))
        if not np.all(np.isfinite(g)):
            raise NumericalError("linear solve returned non-finite coefficients")
        return g

    def errors(self, g):
        """(e, M0sq): squared I-error and squared J-discrepancy of psi + b g."""
        resI = self.psiI + self.bI * (self.VI @ g) - self.fI
        resJ = self.psiJ + self.bJ * (self.VJ @ g) - self.hJ
        e = float(np.sum(self.wI * np.abs(resI) ** 2).real)
        m0sq = float(np.sum(self.wJ * np.abs(resJ) ** 2).real)
        return e, m0sq

    def xi_vector(self, g):
        """xi = A g - t, the sensitivity direction d g / d mu = -(1+mu A)^{-1} xi."""
        return self.A @ g - self.t

    def gtilde(self, g):
        """Evaluator z -> psi(z) + b(z) g(z) on the closed disk."""
        poly = FourierPoly(g)
        psi, b = self.psi, self.b

        def evaluate(z):
            z = np.asarray(z, dtype=complex)
            return psi(z) + b(z) * poly.eval(z)

        return evaluate


@dataclass
class SolveResult:
    """Outcome of one solve: coefficients, parameter, and both error measures."""

    g: FourierPoly
    mu: float
    e: float
    M0: float
    gtilde: Callable
    system: DiscreteSystem = field(repr=False)

    def recompute_errors(self):
        """Re-derive (e, M0) from g by an independent, finer arc quadrature."""
        spec = self.system.spec
        t0 = spec.arc.theta0
        max_mode = 4 * spec.Q + 2 * _QUAD_MODE_MARGIN
        thI, wI = arc_quadrature(t0, 2 * np.pi - t0, max_mode)
        thJ, wJ = arc_quadrature(-t0, t0, max_mode)
        gt_I, gt_J = self.gtilde(np.exp(1j * thI)), self.gtilde(np.exp(1j * thJ))
        e = float(np.sum(wI * np.abs(gt_I - spec.f(thI)) ** 2).real)
        m0sq = float(np.sum(wJ * np.abs(gt_J - spec.h(thJ)) ** 2).real)
        return e, float(np.sqrt(m0sq))


def discretize(spec, kind=None):
    """Assemble the discrete system once; reusable across many mu values."""
    return DiscreteSystem(spec, kind)


def assemble_rhs(spec, mu, system=None):
    """Right-hand-side coefficient vector at the given mu."""
    if mu <= -1.0:
        raise InvalidArgumentError("mu must exceed -1")
    system = system or discretize(spec)
    return system.rhs(mu)


def solve_for_mu(spec, mu, system=None):
    """Solve the optimality system at fixed mu and evaluate both errors."""
    system = system or discretize(spec)
    g = system.solve_coefficients(mu)
    e, m0sq = system.errors(g)
    return SolveResult(FourierPoly(g), float(mu), e, float(np.sqrt(m0sq)),
                       system.gtilde(g), system)


def tune_mu(spec, rtol=1e-6, system=None):
    """Find mu so the J-discrepancy equals the budget: M0(mu) = spec.M.

    M0 is strictly decreasing in mu, so a bracket [lo, hi] with
    M0(lo) >= M >= M0(hi) is located by geometric expansion and then shrunk
    by bisection until |M0 - M| < rtol * M.
    """
    if spec.M is None or not (spec.M > 0):
        raise InfeasibleConstraintError("a strictly positive budget M is required")
    system = system or discretize(spec)
    M = float(spec.M)

    def m0_at(mu):
        g = system.solve_coefficients(mu)
        return g, float(np.sqrt(system.errors(g)[1]))

    lo, hi = _BRACKET_LO0, _BRACKET_HI0
    _, m0_lo = m0_at(lo)
    while m0_lo < M and lo > _MU_LO_STOP:
        lo = max(_MU_LO_STOP, -1.0 + (lo + 1.0) / 10.0)
        _, m0_lo = m0_at(lo)
    _, m0_hi = m0_at(hi)
    while m0_hi > M and hi < _MU_HI_STOP:
        hi = min(_MU_HI_STOP, 10.0 * hi)
        _, m0_hi = m0_at(hi)
    if m0_lo < M or m0_hi > M:
        raise InfeasibleConstraintError(
            "budget M=%g is unattainable; reachable discrepancies are [%g, %g]"
            % (M, m0_hi, m0_lo), attainable=(m0_hi, m0_lo))

    mu = 0.5 * (lo + hi)
    for _ in range(_MAX_BISECT):
        g, m0 = m0_at(mu)
        if abs(m0 - M) < rtol * M:
            break
        if m0 > M:
            lo = mu
        else:
            hi = mu
        mu = 0.5 * (lo + hi)
    else:
        raise NumericalError("discrepancy bisection did not converge to rtol=%g" % rtol)
    e, m0sq = system.errors(g)
    return SolveResult(FourierPoly(g), float(mu), e, float(np.sqrt(m0sq)),
                       system.gtilde(g), system)


@dataclass
class SweepRow:
    mu: float
    e: float = np.nan
    M0sq: float = np.nan
    error: Optional[str] = None


def mu_sweep(spec, mu_grid, system=None):
    """One solve per grid value, ordered by mu; failures are recorded per row."""
    grid = sorted(float(m) for m in mu_grid)
    if any(m <= -1.0 for m in grid):
        raise InvalidArgumentError("all grid values must exceed -1")
    system = system or discretize(spec)
    rows = []
    for mu in grid:
        try:
            res = solve_for_mu(spec, mu, system=system)
            rows.append(SweepRow(mu, res.e, res.M0 ** 2))
        except (InvalidArgumentError, NumericalError) as exc:
            rows.append(SweepRow(mu, error=type(exc).__name__))
    return rows


def default_mu_grid(points=60, start=1e-3, stop=4.0):
    """Log-spaced grid in 1 + mu, resolving the steep region near mu = -1."""
    return -1.0 + np.logspace(np.log10(start), np.log10(stop), points)
