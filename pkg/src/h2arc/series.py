"""Power-series expansions of the error and discrepancy around mu = 0.

Write xi0 = A g(0) - t for the solution at mu = 0.  The moments
F(k) = <A^k xi0, xi0> determine both curves for |mu| < 1:

    M0^2(mu) = M0^2(0) - sum_{k>=0} (-1)^k (k+2) F(k) mu^{k+1}
    e(mu)    = e(0) + 2 sum_{k>=0} (-1)^k F(k) mu^{k+1}
                    + sum_{k>=1} (-1)^k k [F(k) - F(k-1)] mu^{k+1}

Since A is a positive contraction the moments are nonnegative and
non-increasing, and both series converge on |mu| < 1 (slowly near -1).  The
truncation order S counts the maximal retained power of mu; a calibration
helper fixes S by comparing against one direct solve at the most negative mu
of interest.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (CalibrationError, DegenerateDataError,
                     InvalidArgumentError, OutOfDomainError)
from .fourier import FourierPoly
from .solver import discretize
from .toeplitz import power_moments

_S_MAX_DEFAULT = 512


@dataclass
class MomentTable:
    """Moments F(0..S) with the mu = 0 anchors they expand around."""

    F: np.ndarray
    xi0: FourierPoly
    base_e0: float
    base_M0sq: float

    @property
    def max_power(self):
        """Largest power of mu the table can serve."""
        return self.F.size - 1


def compute_xi0(spec, system=None):
    """The mu = 0 sensitivity direction xi0 = A g(0) - t as a FourierPoly."""
    system = system or discretize(spec)
    g0 = system.solve_coefficients(0.0)
    return FourierPoly(system.xi_vector(g0))


def moment_table(spec, S, system=None):
    """Anchors e(0), M0^2(0) from one direct solve plus the first S+1 moments."""
    if S < 0:
        raise InvalidArgumentError("S must be nonnegative")
    system = system or discretize(spec)
    g0 = system.solve_coefficients(0.0)
    e0, m0sq0 = system.errors(g0)
    xi0 = system.xi_vector(g0)
    F = power_moments(system.matrix, xi0, S)
    return MomentTable(F, FourierPoly(xi0), e0, m0sq0)


def _check_mu(mu):
    if abs(mu) >= 1.0:
        raise OutOfDomainError("series valid for |mu| < 1 only (got mu=%g)" % mu)


def _horner(coeffs_desc, mu):
    acc = 0.0
    for c in coeffs_desc:
        acc = acc * mu + c
    return acc


def m0_series(table, mu, S=None):
    """Partial sum of the squared-discrepancy series through power mu^S."""
    _check_mu(mu)
    S = table.max_power if S is None else int(S)
    if S > table.max_power:
        raise InvalidArgumentError("table holds moments only up to power %d"
                                   % table.max_power)
    if S == 0:
        return table.base_M0sq
    k = np.arange(S)
    a = (-1.0) ** k * (k + 2) * table.F[:S]
    return table.base_M0sq - mu * _horner(a[::-1], mu)


def e_series(table, mu, S=None):
    """Partial sum of the approximation-error series through power mu^S."""
    _check_mu(mu)
    S = table.max_power if S is None else int(S)
    if S > table.max_power:
        raise InvalidArgumentError("table holds moments only up to power %d"
                                   % table.max_power)
    if S == 0:
        return table.base_e0
    k = np.arange(S)
    b = 2.0 * (-1.0) ** k * table.F[:S]
    if S > 1:
        k2 = np.arange(1, S)
        b[1:] += (-1.0) ** k2 * k2 * (table.F[k2] - table.F[k2 - 1])
    return table.base_e0 + mu * _horner(b[::-1], mu)


def calibrate(spec, mu0, tol, s_max=_S_MAX_DEFAULT, system=None):
    """Smallest S whose error series matches a direct solve at mu0 within tol.

    mu0 is the most negative parameter of planned use; the series converges
    faster for every mu > mu0, so the returned S serves the whole range.
    Raises CalibrationError (carrying the best relative error achieved) when
    even s_max terms do not reach tol.
    """
    if not (-1.0 < mu0 <= 0.0):
        raise InvalidArgumentError("mu0 must lie in (-1, 0]")
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    system = system or discretize(spec)
    from .solver import solve_for_mu
    e_direct = solve_for_mu(spec, mu0, system=system).e
    table = moment_table(spec, s_max, system=system)
    best = np.inf
    for S in range(s_max + 1):
        rel = abs(e_series(table, mu0, S) - e_direct) / e_direct
        if rel <= tol:
            return S
        best = min(best, rel)
    raise CalibrationError(
        "no truncation order up to %d meets tol=%g at mu0=%g "
        "(best relative error %.3e); convergence degrades as mu0 approaches -1"
        % (s_max, tol, mu0, best), best_rel_error=float(best))


def fit_blowup_exponent(rows, window=(1e-4, 1e-1), min_rows=8):
    """Diagnostic fit of the blow-up law M0^2 ~ (1+mu)^{-1} |log(1+mu)|^{-l}.

    ``rows`` supplies (mu, M0^2) pairs, e.g. sweep rows; only points with
    1 + mu inside ``window`` enter the fit.  Returns the exponent l from the
    least-squares slope of log[M0^2 (1+mu)] against log|log(1+mu)| (the
    slope is -l).  Purely diagnostic: no reference value is implied for
    measured data.
    """
    mus, m0sqs = [], []
    for row in rows:
        mu, m0sq = (row.mu, row.M0sq) if hasattr(row, "mu") else (row[0], row[1])
        if m0sq is None or not np.isfinite(m0sq):
            continue
        if window[0] <= 1.0 + mu <= window[1]:
            mus.append(mu)
            m0sqs.append(m0sq)
    if len(mus) < min_rows:
        raise InvalidArgumentError(
            "need at least %d rows with 1+mu in [%g, %g], got %d"
            % (min_rows, window[0], window[1], len(mus)))
    mus = np.asarray(mus)
    m0sqs = np.asarray(m0sqs)
    if np.any(m0sqs <= 0):
        raise DegenerateDataError("nonpositive discrepancy values cannot be fit")
    spread = np.ptp(m0sqs) / np.max(m0sqs)
    if spread < 1e-9:
        raise DegenerateDataError("discrepancy values are constant; nothing to fit")
    x = np.log(np.abs(np.log1p(mus)))
    y = np.log(m0sqs * (1.0 + mus))
    slope = np.polyfit(x, y, 1)[0]
    return float(-slope)
