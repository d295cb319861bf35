"""Run configuration: JSON ingestion, validation and lossless round-trip.

Complex numbers are serialized as "re,im" strings; angles are radians.
Boundary functions are given either by built-in selectors (the benchmark
closed forms) or by uniform angle-sample tables with periodic linear
interpolation.  Every validation error names the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import datasets
from .errors import InvalidArgumentError
from .fourier import Arc, BoundaryFn
from .interpolant import InterpolationData
from .solver import ProblemSpec, default_mu_grid


def parse_complex(text, field_name="value"):
    if isinstance(text, (int, float)):
        return complex(text)
    try:
        re_part, im_part = str(text).split(",")
        return complex(float(re_part), float(im_part))
    except Exception:
        raise InvalidArgumentError(
            "%s: expected a complex number as 're,im', got %r" % (field_name, text))


def format_complex(value):
    value = complex(value)
    return "%.17g,%.17g" % (value.real, value.imag)


def _require(cond, message):
    if not cond:
        raise InvalidArgumentError(message)


def _boundary_fn(node, field_name, quad_points):
    _require(isinstance(node, dict) and "kind" in node,
             "%s: expected an object with a 'kind' key" % field_name)
    kind = node["kind"]
    if kind == "benchmark_f":
        return datasets.benchmark_f(float(node.get("eps", 0.5)), quad_points)
    if kind == "benchmark_h":
        return datasets.benchmark_h(quad_points)
    if kind == "zero":
        return BoundaryFn.constant(0.0, quad_points)
    if kind == "samples":
        _require("theta" in node and "values" in node,
                 "%s: sample tables need 'theta' and 'values'" % field_name)
        theta = [float(t) for t in node["theta"]]
        values = [parse_complex(v, "%s.values" % field_name) for v in node["values"]]
        _require(len(theta) == len(values) and len(theta) >= 2,
                 "%s: need matching theta/values of length >= 2" % field_name)
        return BoundaryFn.from_samples(theta, values, quad_points)
    raise InvalidArgumentError("%s.kind: unknown selector %r" % (field_name, kind))


@dataclass
class RunConfig:
    """Validated run configuration; ``raw`` preserves the source for round-trips."""

    spec: ProblemSpec
    mu_grid: np.ndarray
    series_S: Optional[int]
    calibration: Optional[dict]
    seed: int
    m_factor: Optional[float]
    raw: dict = field(repr=False, default_factory=dict)


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return build_config(raw)


def build_config(raw):
    _require(isinstance(raw, dict), "config: top level must be an object")
    problem = raw.get("problem")
    _require(isinstance(problem, dict), "problem: section is required")

    theta0 = problem.get("theta0", np.pi / 3)
    _require(isinstance(theta0, (int, float)) and 0.0 < theta0 < np.pi,
             "problem.theta0: must be a number strictly between 0 and pi")
    arc = Arc(float(theta0))

    Q = problem.get("Q", 20)
    _require(isinstance(Q, int) and Q >= 1, "problem.Q: must be a positive integer")

    points = [parse_complex(p, "problem.points") for p in problem.get("points", [])]
    values = [parse_complex(v, "problem.values") for v in problem.get("values", [])]
    _require(len(points) == len(values),
             "problem.points/values: lengths differ (%d vs %d)"
             % (len(points), len(values)))
    for p in points:
        _require(abs(p) < 1.0, "problem.points: |z|=%g must be < 1" % abs(p))
    if len(points) > 1:
        pts = np.asarray(points)
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        _require(d.min() > 1e-12, "problem.points: duplicate points")
    _require(Q >= len(points), "problem.Q: must be at least the number of points")

    quad_points = problem.get("quad_points", max(512, 4 * Q))
    _require(isinstance(quad_points, int) and quad_points >= 4 * Q,
             "problem.quad_points: must be an integer >= 4Q = %d" % (4 * Q))

    f = _boundary_fn(problem.get("f", {"kind": "benchmark_f", "eps": 0.5}),
                     "problem.f", quad_points)
    h = _boundary_fn(problem.get("h", {"kind": "benchmark_h"}), "problem.h",
                     quad_points)

    M = problem.get("M")
    m_factor = problem.get("M_factor")
    _require(M is None or m_factor is None,
             "problem.M/M_factor: give at most one of them")
    if M is not None:
        _require(isinstance(M, (int, float)) and M > 0,
                 "problem.M: must be a positive number")
        M = float(M)
    if m_factor is not None:
        _require(isinstance(m_factor, (int, float)) and m_factor > 0,
                 "problem.M_factor: must be a positive number")

    interpolant = problem.get("interpolant", "kernel")
    _require(interpolant in ("kernel", "lagrange"),
             "problem.interpolant: must be 'kernel' or 'lagrange'")

    spec = ProblemSpec(f=f, h=h, data=InterpolationData(points, values), arc=arc,
                       M=M, Q=Q, quad_points=quad_points, interpolant=interpolant)

    sweep = raw.get("sweep", {})
    if "list" in sweep:
        mu_grid = np.asarray([float(m) for m in sweep["list"]], dtype=float)
        _require(mu_grid.size >= 1, "sweep.list: must be nonempty")
    else:
        pts_n = sweep.get("points", 60)
        start = sweep.get("start", 1e-3)
        stop = sweep.get("stop", 4.0)
        _require(isinstance(pts_n, int) and pts_n >= 1,
                 "sweep.points: must be a positive integer")
        _require(0 < start < stop, "sweep.start/stop: need 0 < start < stop "
                 "(offsets of mu from -1)")
        mu_grid = default_mu_grid(pts_n, start, stop)
    _require(bool(np.all(mu_grid > -1.0)), "sweep: all mu values must exceed -1")

    series = raw.get("series", {})
    series_S = series.get("S")
    calibration = series.get("calibrate")
    _require(series_S is None or (isinstance(series_S, int) and series_S >= 0),
             "series.S: must be a nonnegative integer")
    if calibration is not None:
        _require(isinstance(calibration, dict) and "mu0" in calibration
                 and "tol" in calibration,
                 "series.calibrate: needs 'mu0' and 'tol'")

    seed = raw.get("seed", 0)
    _require(isinstance(seed, int), "seed: must be an integer")

    return RunConfig(spec=spec, mu_grid=mu_grid, series_S=series_S,
                     calibration=calibration, seed=seed, m_factor=m_factor,
                     raw=raw)


def dump_config(config):
    """Serialize the raw configuration; load(dump(load(x))) is the identity."""
    return json.dumps(config.raw, indent=2, sort_keys=True)
