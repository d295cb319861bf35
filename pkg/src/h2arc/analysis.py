"""Sensitivity experiments, arc extrapolation, and the projection shortcut.

Three independent tool sets share this module:

* first-order stability bounds for the tuned solution under perturbations of
  the boundary data (f, h), the interior values (omega) or the interior
  positions (z), together with the experiment harness that measures actual
  deviations against those bounds;
* extrapolation of a function holomorphic in the disk from its values on the
  arc I alone, by a damped Cauchy integral: a quenching factor of modulus
  rho > 1 on I and 1 on J suppresses the unknown-arc contribution as the
  damping power alpha grows;
* the mu = 0 projection shortcut psi + b P_plus(bconj (f on I, h on J)),
  which solves the problem whose budget happens to equal its own
  discrepancy, plus its first-order correction in the budget offset.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .blaschke import BlaschkeProduct
from .errors import (DegenerateDataError, InvalidArgumentError,
                     OutOfDomainError)
from .fourier import BoundaryFn, FourierPoly, uniform_grid
from .interpolant import InterpolationData, lagrange_basis
from .solver import discretize, solve_for_mu, tune_mu

_DELTA_DIRECTION_MODES = 8


# ---------------------------------------------------------------------------
# stability constants and perturbation experiments
# ---------------------------------------------------------------------------

@dataclass
class StabilityConstants:
    """Quantities entering the first-order perturbation bounds."""

    mu: float
    m0: float
    m1: float
    xi_norm: float
    amplification: float        # 1 + m1 M^2 / (m0 ||xi||^2)
    C1: float                   # m1 (||f on I, h on J|| + |mu| ||h - psi||_J)
    C2: float                   # 1 + |mu| m1
    xi_lower_bound: Optional[float] = None


def stability_constants(result, M=None):
    """Constants of the perturbation bounds, computed from a solved state.

    When the projection shortfall ||psi - h + b P_plus(bconj(f,h))||_J stays
    below the budget M, the a-priori bound ||xi|| >= (M - shortfall)/|mu| is
    reported as well.
    """
    system = result.system
    mu = result.mu
    M = float(M if M is not None else (system.spec.M or result.M0))
    m0 = min(1.0 / (1.0 + mu), 1.0)
    m1 = max(1.0 / (1.0 + mu), 1.0)
    xi = system.xi_vector(result.g.coeffs)
    xi_norm = float(np.linalg.norm(xi))
    norm_fh = float(np.sqrt(system.f_norm_I ** 2 + system.h_norm_J ** 2))
    hmpsi = float(np.sqrt(np.sum(system.wJ * np.abs(system.hJ - system.psiJ) ** 2).real))
    C1 = m1 * (norm_fh + abs(mu) * hmpsi)
    C2 = 1.0 + abs(mu) * m1
    amplification = 1.0 + m1 * M ** 2 / (m0 * xi_norm ** 2)

    xi_lb = None
    if abs(mu) > 0:
        proj = _projection_coefficients(system)
        resJ = system.psiJ + system.bJ * (system.VJ @ proj) - system.hJ
        shortfall = float(np.sqrt(np.sum(system.wJ * np.abs(resJ) ** 2).real))
        if shortfall < M:
            xi_lb = (M - shortfall) / abs(mu)
    return StabilityConstants(mu, m0, m1, xi_norm, amplification, C1, C2, xi_lb)


@dataclass
class PerturbationReport:
    kind: str
    delta: float
    measured: float
    bound: float
    ratio: float
    constants: StabilityConstants
    error: Optional[str] = None


def _random_direction_fn(rng):
    """Band-limited random boundary function for f/h perturbation directions."""
    c = rng.standard_normal(_DELTA_DIRECTION_MODES) \
        + 1j * rng.standard_normal(_DELTA_DIRECTION_MODES)
    poly = FourierPoly(c)

    def fn(theta):
        return poly.trace(theta)

    return fn


def _h2_grid_norm(values):
    return float(np.sqrt(np.mean(np.abs(values) ** 2)))


def _bound_for(kind, consts, system, spec):
    """Right-hand side of the first-order bound per unit perturbation."""
    amp = consts.amplification
    if kind == "f":
        return consts.m1 * amp
    if kind == "h":
        return ((1.0 + consts.m1 * (1.0 + consts.mu)) * amp - 1.0)
    pts = spec.data.points
    if kind == "omega":
        lag_norm = max(np.linalg.norm(c) for c in lagrange_basis(pts))
        return (1.0 + abs(consts.mu) * consts.m1) * amp * lag_norm
    if kind == "z":
        # the interpolant inside these bounds is the Lagrange form; the
        # solver itself may keep using the kernel interpolant
        w0 = float(np.max(np.abs(spec.data.values)))
        N = pts.size
        mono = []
        for j in range(N):
            c = np.array([1.0 + 0.0j])
            for m in range(N):
                if m != j:
                    c = np.convolve(c, np.array([-pts[m], 1.0]))
            mono.append(np.linalg.norm(c))
        sep = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(sep, np.inf)
        max_invsum = max(np.sum(1.0 / sep[j][np.isfinite(sep[j])]) for j in range(N))
        min_prod = min(np.prod(sep[j][np.isfinite(sep[j])]) for j in range(N))
        dpsi = 2.0 * w0 * max(mono) * max_invsum / min_prod
        db = 2.0 * max(1.0 / (1.0 - np.abs(pts)))
        return amp * (consts.C1 * db + consts.C2 * dpsi)
    raise InvalidArgumentError("unknown perturbation kind %r" % kind)


def perturbation_experiment(spec, kind, deltas, seed=0, rtol=1e-12):
    """Measure solution deviations against the first-order bounds.

    A fixed random direction (from ``seed``) is scaled through the given
    magnitudes; for each one the constrained problem is re-tuned at the same
    budget and the full-circle deviation of the final solution is compared
    with the bound evaluated from baseline constants.  Infeasible or invalid
    perturbed problems are recorded per row and the experiment continues.
    """
    if kind not in ("f", "h", "omega", "z"):
        raise InvalidArgumentError("kind must be one of 'f', 'h', 'omega', 'z'")
    system = discretize(spec)
    base = tune_mu(spec, rtol=rtol, system=system)
    consts = stability_constants(base)
    theta = uniform_grid(spec.quad_points)
    base_vals = base.gtilde(np.exp(1j * theta))
    unit_bound = _bound_for(kind, consts, system, spec)

    rng = np.random.default_rng(seed)
    if kind in ("f", "h"):
        dir_fn = _random_direction_fn(rng)
        if kind == "f":
            nodes, weights = system.thI, system.wI
        else:
            nodes, weights = system.thJ, system.wJ
        scale = float(np.sqrt(np.sum(weights * np.abs(dir_fn(nodes)) ** 2).real))
    else:
        n = spec.data.n_points
        vec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vec /= np.sum(np.abs(vec))      # unit l1 norm, matching the bounds
        scale = 1.0

    reports = []
    for delta in deltas:
        delta = float(delta)
        try:
            pert_spec = _perturbed_spec(spec, kind, delta, dir_fn if kind in ("f", "h")
                                        else vec, scale)
            pert = tune_mu(pert_spec, rtol=rtol)
            measured = _h2_grid_norm(pert.gtilde(np.exp(1j * theta)) - base_vals)
            bound = unit_bound * delta
            ratio = measured / bound if bound > 0 else np.inf
            reports.append(PerturbationReport(kind, delta, measured, bound, ratio, consts))
        except Exception as exc:    # per-row failure, experiment continues
            reports.append(PerturbationReport(kind, delta, np.nan, unit_bound * delta,
                                              np.nan, consts, error=type(exc).__name__))
    return reports


def _perturbed_spec(spec, kind, delta, direction, scale):
    if kind == "f":
        base = spec.f

        def fn(theta, _b=base, _d=direction):
            return _b(theta) + (delta / scale) * _d(theta)

        return replace(spec, f=BoundaryFn(fn, base.quad_points))
    if kind == "h":
        base = spec.h

        def fn(theta, _b=base, _d=direction):
            return _b(theta) + (delta / scale) * _d(theta)

        return replace(spec, h=BoundaryFn(fn, base.quad_points))
    if kind == "omega":
        data = InterpolationData(spec.data.points, spec.data.values + delta * direction)
        return replace(spec, data=data)
    # kind == "z": positions move, values stay; constructor enforces the
    # perturbed points staying distinct and inside the disk
    data = InterpolationData(spec.data.points + delta * direction, spec.data.values)
    return replace(spec, data=data)


# ---------------------------------------------------------------------------
# extrapolation from the arc I
# ---------------------------------------------------------------------------

def quenching_conjugate(theta, arc):
    """Boundary conjugate function of the I-indicator (principal-value limit)."""
    theta = np.asarray(theta, dtype=float)
    t0 = arc.theta0
    return np.log(np.abs(np.sin((theta - t0) / 2.0)
                         / np.sin((theta + t0) / 2.0))) / np.pi


def schwarz_indicator(z, arc, n_levels=40):
    """Schwarz-kernel integral of the I-indicator at interior z.

    Returns W(z) with Re W the harmonic extension of the indicator of I and
    Im W its conjugate vanishing at the origin; computed by panel quadrature
    over I.
    """
    theta, weights = _graded_arc_panels(arc, n_levels)
    xi = np.exp(1j * theta)
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    vals = np.array([np.sum(weights * (xi + zz) / (xi - zz)) for zz in flat])
    return vals.reshape(z.shape) if z.shape else complex(vals[0])


def _graded_arc_panels(arc, n_levels, n_gl=24):
    """Panels over I geometrically refined toward both endpoints.

    The damped Cauchy integrand oscillates like s^{i c} near the arc ends
    (log-singular phase); geometric panels keep a bounded number of
    oscillations per panel, so fixed-order Gauss-Legendre stays accurate.
    Weights carry the 1/2pi factor.
    """
    a, b = arc.theta0, 2 * np.pi - arc.theta0
    L = b - a
    x, w = np.polynomial.legendre.leggauss(n_gl)
    lefts = a + 0.5 * L * 0.5 ** np.arange(n_levels + 1)
    rights = b - 0.5 * L * 0.5 ** np.arange(n_levels + 1)
    edges = np.unique(np.concatenate([[a], lefts[::-1], rights, [b]]))
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel() / (2 * np.pi)
    return nodes, weights


def carleman_extrapolate(f, arc, rho, alpha, z, r_max=0.95, n_levels=60):
    """Damped Cauchy integral of f over the arc I, evaluated at interior z.

    For f the trace of a disk-holomorphic function the result converges to
    f(z) as alpha grows; the neglected-arc contribution decays like
    |Phi(z)|^{-alpha} with the quenching factor Phi of modulus rho on I and
    1 on J.  The phase of Phi^alpha oscillates ever faster near the arc
    endpoints, hence the endpoint-graded panels.
    """
    if rho <= 1.0:
        raise InvalidArgumentError("rho must exceed 1")
    if alpha <= 0:
        raise InvalidArgumentError("alpha must be positive")
    z = complex(z)
    if abs(z) > r_max:
        raise OutOfDomainError("|z|=%g exceeds r_max=%g; extrapolation is "
                               "restricted to a compact subdisk" % (abs(z), r_max))
    theta, weights = _graded_arc_panels(arc, n_levels)
    xi = np.exp(1j * theta)
    log_rho = np.log(rho)
    # log Phi on I: modulus rho, phase from the conjugate function
    log_phi_boundary = log_rho * (1.0 + 1j * quenching_conjugate(theta, arc))
    log_phi_z = log_rho * schwarz_indicator(z, arc)
    damp = np.exp(alpha * (log_phi_boundary - log_phi_z))
    fvals = np.asarray(f(theta), dtype=complex)
    # contour element: d xi = i e^{i theta} d theta, and the 1/(2 pi i) factor
    integrand = fvals / (xi - z) * damp * xi
    return complex(np.sum(weights * integrand))


# ---------------------------------------------------------------------------
# the mu = 0 projection shortcut and its first-order correction
# ---------------------------------------------------------------------------

def _projection_coefficients(system):
    """Coefficients of P_plus(bconj f on I, bconj h on J) at truncation Q."""
    cI = system.VI.conj().T @ (system.wI * np.conj(system.bI) * system.fI)
    cJ = system.VJ.conj().T @ (system.wJ * np.conj(system.bJ) * system.hJ)
    return cI + cJ


def companion_mu0(spec, system=None):
    """Evaluator of psi + b P_plus(bconj(f on I, h on J)).

    With the minimal-norm (kernel) interpolant this equals the mu = 0 solve:
    bconj psi has no analytic part then, so the interpolant drops out of the
    projection.  Requires the kernel interpolant for exactly that reason.
    """
    system = system or discretize(spec)
    if system.psi.kind != "kernel":
        raise InvalidArgumentError("the projection shortcut requires the kernel "
                                   "interpolant")
    return system.gtilde(_projection_coefficients(system))


def companion_first_order(spec, delta_M2, system=None):
    """Projection shortcut corrected to first order in a budget offset.

    Approximates the solution whose squared budget is M0^2(0) + delta_M2:
    the parameter moves by delta_M2 / (dM0^2/dmu)|_0 = -delta_M2 / (2 F(0))
    and the solution by that times dg/dmu|_0 = -xi0, i.e. the correction is
    + b xi0 delta_M2 / (2 F(0)).
    """
    system = system or discretize(spec)
    if system.psi.kind != "kernel":
        raise InvalidArgumentError("the projection shortcut requires the kernel "
                                   "interpolant")
    g0 = system.solve_coefficients(0.0)
    xi0 = system.xi_vector(g0)
    f0 = float(np.vdot(xi0, xi0).real)
    slope = -2.0 * f0     # d(M0^2)/dmu at 0
    if abs(slope) < 1e-15:
        raise DegenerateDataError("d(M0^2)/dmu vanishes at mu=0; the budget "
                                  "offset cannot be inverted")
    coeff = _projection_coefficients(system) + xi0 * (float(delta_M2) / (2.0 * f0))
    return system.gtilde(coeff)
