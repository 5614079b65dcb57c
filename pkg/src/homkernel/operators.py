"""Grid realization of integral operators and the commutation checks.

Grids are tensor products of composite Gauss-Legendre panels in the
logarithmic radial coordinate (the plain coordinate z on the cylinder)
with a uniform periodic rule in the angle.  Weights include the measure
density, so ``sum(w_i f(x_i))`` approximates the integral of f against the
domain measure.  Dilations translate the log coordinate, which keeps
pulled-back functions well resolved.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .geometry import (
    CaseBError,
    Domain,
    DomainSpec,
    GroupElement,
    Point,
    _act_radial_checked,
    density,
    point_character,
    wrap_angle,
)

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


class GridLocusError(RuntimeError):
    """A quadrature node hit the kernel's singular locus with f != 0 there."""


@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes, measure-weighted quadrature weights, and panel structure."""

    domain: DomainSpec
    t_nodes: np.ndarray          # log r (or z) positions, shape (n_r,)
    t_weights: np.ndarray        # include density and chart Jacobian, shape (n_r,)
    theta_nodes: np.ndarray      # shape (n_theta,)
    theta_weight: float
    t_edges: np.ndarray          # panel boundaries in the log coordinate
    r_inner: float
    r_outer: float
    breakpoints: tuple = ()      # user-inserted panel boundaries (chart scale)
    exclusion: float = 0.0

    @property
    def n_r(self) -> int:
        return self.t_nodes.size

    @property
    def n_theta(self) -> int:
        return self.theta_nodes.size

    @property
    def c1_nodes(self) -> np.ndarray:
        """First chart coordinate: r on radial domains, z on the cylinder."""
        if self.domain.tag is Domain.CYLINDER:
            return self.t_nodes
        return np.exp(self.t_nodes)

    def node_mesh(self):
        c1 = self.c1_nodes
        return np.meshgrid(c1, self.theta_nodes, indexing="ij")

    def weight_mesh(self) -> np.ndarray:
        return self.t_weights[:, None] * np.full(self.n_theta, self.theta_weight)[None, :]

    def total_weight(self) -> float:
        return float(self.t_weights.sum() * self.theta_weight * self.n_theta)


def build_grid(
    d: DomainSpec,
    n_r: int = 128,
    n_theta: int = 128,
    r_inner: float | None = None,
    r_outer: float | None = None,
    breakpoints: Sequence[float] = (),
    panel_order: int = 8,
) -> QuadratureGrid:
    """Quadrature grid adapted to the domain chart.

    ``breakpoints`` lists radii (or z values on the cylinder) inserted as
    panel boundaries so that kernels or data with jumps there are
    integrated panel-by-panel.
    """
    if d.tag is Domain.GL2_PLANE:
        raise CaseBError("grid application targets the reduced domains; use the gl2 module")
    if d.tag is Domain.CYLINDER:
        t_lo = math.log(1e-3) if r_inner is None else float(r_inner)
        t_hi = math.log(1e3) if r_outer is None else float(r_outer)
    else:
        R = d.chart_radius
        if r_inner is None:
            r_inner = 1e-3 * min(R, 1.0)
        if r_outer is None:
            r_outer = (1.0 - 1e-4) * R if math.isfinite(R) else (3.0 if d.tag is Domain.LOBACHEVSKY else 1e3)
        t_lo, t_hi = math.log(r_inner), math.log(r_outer)
    inserted = []
    for b in breakpoints:
        tb = float(b) if d.tag is Domain.CYLINDER else math.log(float(b))
        if t_lo < tb < t_hi:
            inserted.append(tb)
    n_panels = max(1, n_r // panel_order)
    edges = np.unique(np.concatenate([np.linspace(t_lo, t_hi, n_panels + 1), np.array(inserted)]))
    nodes, weights = np.polynomial.legendre.leggauss(panel_order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    t = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    wt = (half[:, None] * weights[None, :]).ravel()
    order = np.argsort(t)
    t, wt = t[order], wt[order]
    if d.tag is Domain.CYLINDER:
        w_full = wt * density(d, t)
        r_in, r_out = t_lo, t_hi
    else:
        r = np.exp(t)
        w_full = wt * r * density(d, r)   # dr = r dt
        r_in, r_out = float(math.exp(t_lo)), float(math.exp(t_hi))
    theta = np.arange(n_theta) * (TWO_PI / n_theta)
    g = QuadratureGrid(
        domain=d,
        t_nodes=t,
        t_weights=w_full,
        theta_nodes=theta,
        theta_weight=TWO_PI / n_theta,
        t_edges=edges,
        r_inner=r_in,
        r_outer=r_out,
        breakpoints=tuple(float(b) for b in breakpoints),
    )
    for arr in (g.t_nodes, g.t_weights, g.theta_nodes, g.t_edges):
        arr.flags.writeable = False
    return g


def coarsen(grid: QuadratureGrid, factor: int = 2) -> QuadratureGrid:
    d = grid.domain
    if d.tag is Domain.CYLINDER:
        inner, outer = float(grid.t_edges[0]), float(grid.t_edges[-1])
    else:
        inner, outer = grid.r_inner, grid.r_outer
    return build_grid(
        d,
        n_r=max(8, grid.n_r // factor),
        n_theta=max(8, grid.n_theta // factor),
        r_inner=inner,
        r_outer=outer,
        breakpoints=grid.breakpoints,
        panel_order=8,
    )


@dataclass(frozen=True)
class GridFunction:
    """Values on a grid plus an optional closed form for exact resampling."""

    grid: QuadratureGrid
    values: np.ndarray
    analytic: Optional[Callable] = None
    coverage: float = 1.0

    def norm_lp(self, p: float = 2.0) -> float:
        w = self.grid.weight_mesh()
        return float(np.sum(w * np.abs(self.values) ** p) ** (1.0 / p))


def tabulate(grid: QuadratureGrid, fn: Callable) -> GridFunction:
    """Sample a closed-form function (c1, theta) -> value on the grid."""
    c1, th = grid.node_mesh()
    vals = np.asarray(fn(c1, th))
    return GridFunction(grid=grid, values=vals, analytic=fn)


def _interpolator(f: GridFunction):
    grid = f.grid
    th_ext = np.concatenate([grid.theta_nodes, [grid.theta_nodes[0] + TWO_PI]])
    vals_ext = np.concatenate([f.values, f.values[:, :1]], axis=1)
    return RegularGridInterpolator(
        (grid.t_nodes, th_ext), vals_ext, method="linear",
        bounds_error=False, fill_value=0.0,
    )


@dataclass(frozen=True)
class ApplyResult:
    values: np.ndarray
    estimate: np.ndarray

    def max_estimate(self) -> float:
        return float(np.max(self.estimate))


def _apply_on_grid(kernel, f: GridFunction, pts: np.ndarray) -> np.ndarray:
    grid = f.grid
    c1, th = grid.node_mesh()
    w = grid.weight_mesh()
    x1 = pts[:, 0][:, None]
    x2 = pts[:, 1][:, None]
    kvals = np.asarray(kernel.eval(x1, x2, c1.ravel()[None, :], th.ravel()[None, :]))
    fw = (w * f.values).ravel()
    bad = ~np.isfinite(kvals)
    if bad.any():
        hot = bad & (np.abs(f.values).ravel()[None, :] > 0)
        if hot.any():
            i, j = np.argwhere(hot)[0]
            raise GridLocusError(
                f"kernel is not finite at node {j} for evaluation point {pts[i]}; "
                "the grid clashes with the singular locus"
            )
        kvals = np.where(bad, 0.0, kvals)
    return kvals @ fw


def apply_operator(kernel, f: GridFunction, eval_points, refine: bool = True) -> ApplyResult:
    """Quadrature application Kf(x) = sum_i w_i K(x, y_i) f(y_i).

    The error estimate is the difference against a half-resolution grid
    (resampled through the closed form when available, bilinear otherwise).
    """
    pts = np.asarray([[p.c1, p.c2] if isinstance(p, Point) else list(p) for p in eval_points], dtype=float)
    full = _apply_on_grid(kernel, f, pts)
    if not refine:
        return ApplyResult(values=full, estimate=np.full(pts.shape[0], np.nan))
    coarse_grid = coarsen(f.grid)
    if f.analytic is not None:
        coarse_f = tabulate(coarse_grid, f.analytic)
    else:
        interp = _interpolator(f)
        c1, th = coarse_grid.node_mesh()
        t = c1 if f.grid.domain.tag is Domain.CYLINDER else np.log(c1)
        coarse_vals = interp(np.stack([t.ravel(), th.ravel()], axis=1)).reshape(c1.shape)
        coarse_f = GridFunction(grid=coarse_grid, values=coarse_vals)
    half = _apply_on_grid(kernel, coarse_f, pts)
    return ApplyResult(values=full, estimate=np.abs(full - half))


def pullback(d: DomainSpec, g: GroupElement, f: GridFunction) -> GridFunction:
    """Quasiregular action: (L_g f)(x) = f(g^{-1} x) resampled on the grid.

    Nodes whose preimage leaves the chart or the tabulated support are set
    to zero; the surviving fraction is recorded as ``coverage`` and a
    warning is emitted when it drops below 99%.
    """
    if d.tag is Domain.GL2_PLANE:
        raise CaseBError("grid pullback targets the reduced domains")
    grid = f.grid
    ginv = g.inverse()
    c1, th = grid.node_mesh()
    th_new = wrap_angle(th + ginv.phi)
    if d.tag is Domain.CYLINDER:
        c1_new = c1 - g.a
        valid = np.ones_like(c1_new, dtype=bool)
    else:
        c1_new, valid = _act_radial_checked(d, ginv.a, c1)
    if f.analytic is not None:
        vals = np.zeros(c1.shape, dtype=np.result_type(f.values.dtype, float))
        if valid.any():
            out = np.asarray(f.analytic(np.where(valid, c1_new, 1.0), th_new))
            vals = np.where(valid, out, 0.0)
        support_ok = valid
        analytic_fn = _compose_pullback(d, ginv, f.analytic)
    else:
        interp = _interpolator(f)
        t_new = c1_new if d.tag is Domain.CYLINDER else np.where(valid, np.log(np.where(valid, c1_new, 1.0)), np.nan)
        pts = np.stack([np.where(valid, t_new, grid.t_nodes[0] - 1.0).ravel(), th_new.ravel()], axis=1)
        vals = np.where(valid, interp(pts).reshape(c1.shape), 0.0)
        in_support = valid & (t_new >= grid.t_nodes[0]) & (t_new <= grid.t_nodes[-1])
        support_ok = in_support
        analytic_fn = None
    coverage = float(np.mean(support_ok))
    if coverage < 0.99:
        log.warning(
            "pullback coverage %.3f on %s: %d of %d nodes left the support",
            coverage, d.tag.value, int((~support_ok).sum()), support_ok.size,
        )
    return GridFunction(grid=grid, values=vals, analytic=analytic_fn, coverage=coverage)


def _compose_pullback(d: DomainSpec, ginv, analytic: Callable) -> Callable:
    def fn(c1, th):
        c1 = np.asarray(c1, dtype=float)
        th_new = wrap_angle(np.asarray(th, dtype=float) + ginv.phi)
        if d.tag is Domain.CYLINDER:
            return analytic(c1 + ginv.a, th_new)
        c1_new, valid = _act_radial_checked(d, ginv.a, c1)
        out = np.asarray(analytic(np.where(valid, c1_new, 1.0), th_new))
        return np.where(valid, out, 0.0)

    return fn


def lp_reweight(d: DomainSpec, p: float, f: GridFunction, inverse: bool = False) -> GridFunction:
    """Multiplication by the point character to the power +-1/p.

    Conjugating a grid operator by this map turns the measure into its
    invariant reweighting; on GL2Plane no such reduction exists and the
    call is rejected.
    """
    if d.tag is Domain.GL2_PLANE:
        raise CaseBError(
            "no reduction to an invariant measure exists on GL2Plane; "
            "the stabilizer itself rescales the measure"
        )
    if p <= 0:
        raise ValueError("p must be positive")
    s = -1.0 / p if inverse else 1.0 / p
    grid = f.grid
    c1, _ = grid.node_mesh()
    factor = point_character(d, c1) ** s
    analytic_fn = None
    if f.analytic is not None:
        inner = f.analytic

        def analytic_fn(c1v, thv):
            return point_character(d, np.asarray(c1v, dtype=float)) ** s * inner(c1v, thv)

    return GridFunction(grid=grid, values=factor * f.values, analytic=analytic_fn, coverage=f.coverage)


# ---------------------------------------------------------------------------
# commutation checks


@dataclass(frozen=True)
class CommutationReport:
    residual: float
    estimate: float
    tol: float
    passed: bool
    norm_p: float
    n_eval: int


def _eval_subset(grid: QuadratureGrid, band=(0.25, 0.75), stride_theta: int = 4):
    t = grid.t_nodes
    lo = t[0] + band[0] * (t[-1] - t[0])
    hi = t[0] + band[1] * (t[-1] - t[0])
    idx_r = np.nonzero((t >= lo) & (t <= hi))[0][::2]
    idx_th = np.arange(0, grid.n_theta, stride_theta)
    c1 = grid.c1_nodes[idx_r]
    pts = np.array([[a, b] for a in c1 for b in grid.theta_nodes[idx_th]])
    w = np.array([grid.t_weights[i] * grid.theta_weight for i in idx_r for _ in idx_th])
    return pts, w


def _lp_norm(w, v, p):
    return float(np.sum(w * np.abs(v) ** p) ** (1.0 / p))


def check_operator_homogeneity(
    d: DomainSpec,
    kernel,
    g: GroupElement,
    f: GridFunction,
    tol: float = 1e-6,
    norm_p: float = 2.0,
    band=(0.25, 0.75),
) -> CommutationReport:
    """Residual of L_g (K f) = K (L_g f) on an evaluation subset.

    Both sides are quadrature values on the same grid; a strongly
    homogeneous kernel must agree up to the grid refinement estimate.
    """
    grid = f.grid
    pts, w = _eval_subset(grid, band=band)
    ginv = g.inverse()
    back = _map_points(d, ginv, pts)
    lhs = apply_operator(kernel, f, back)
    rhs = apply_operator(kernel, pullback(d, g, f), pts)
    num = _lp_norm(w, lhs.values - rhs.values, norm_p)
    den = _lp_norm(w, lhs.values, norm_p)
    est = (_lp_norm(w, lhs.estimate + rhs.estimate, norm_p)) / den if den > 0 else math.inf
    residual = num / den if den > 0 else math.inf
    bound = max(tol, est)
    return CommutationReport(
        residual=residual, estimate=est, tol=tol,
        passed=bool(residual <= bound), norm_p=norm_p, n_eval=len(pts),
    )


def check_convolution_reduction(
    d: DomainSpec,
    kernel,
    p: float,
    g: GroupElement,
    f: GridFunction,
    tol: float = 1e-6,
    band=(0.25, 0.75),
) -> CommutationReport:
    """Residual of L_g (K~ f) = K~ (L_g f) with K~ the reweighted operator.

    K~ = U K U^{-1} where U multiplies by the point character to the power
    1/p; the conjugated operator commutes with the group action with no
    dilation factor, and the residual equals the plain homogeneity
    residual computed in the matching invariantly weighted norm.
    """
    grid = f.grid
    pts, w = _eval_subset(grid, band=band)
    lam_pts = point_character(d, pts[:, 0])
    w_tilde = w / point_character(d, pts[:, 0])
    ginv = g.inverse()
    back = _map_points(d, ginv, pts)
    lam_back = point_character(d, back[:, 0])

    h = lp_reweight(d, p, f, inverse=True)
    lhs = apply_operator(kernel, h, back)
    lhs_vals = lam_back ** (1.0 / p) * lhs.values

    lgf = pullback(d, g, f)
    h2 = lp_reweight(d, p, lgf, inverse=True)
    rhs = apply_operator(kernel, h2, pts)
    rhs_vals = lam_pts ** (1.0 / p) * rhs.values

    num = _lp_norm(w_tilde, lhs_vals - rhs_vals, p)
    den = _lp_norm(w_tilde, lhs_vals, p)
    est_vec = lam_back ** (1.0 / p) * lhs.estimate + lam_pts ** (1.0 / p) * rhs.estimate
    est = _lp_norm(w_tilde, est_vec, p) / den if den > 0 else math.inf
    residual = num / den if den > 0 else math.inf
    bound = max(tol, est)
    return CommutationReport(
        residual=residual, estimate=est, tol=tol,
        passed=bool(residual <= bound), norm_p=p, n_eval=len(pts),
    )


def _map_points(d: DomainSpec, g: GroupElement, pts: np.ndarray) -> np.ndarray:
    from .geometry import act_coords

    c1, c2 = act_coords(d, g, pts[:, 0], pts[:, 1])
    return np.stack([np.asarray(c1), np.asarray(c2)], axis=1)


# ---------------------------------------------------------------------------
# CSV serialization


def grid_function_to_csv(f: GridFunction, path):
    """Write rows (c1, theta, weight, value) for the full grid."""
    grid = f.grid
    c1, th = grid.node_mesh()
    w = grid.weight_mesh()
    vals = f.values
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["c1", "theta", "weight", "value"])
        for i in range(grid.n_r):
            for j in range(grid.n_theta):
                writer.writerow(
                    [f"{c1[i, j]:.17g}", f"{th[i, j]:.17g}", f"{w[i, j]:.17g}", f"{vals[i, j]:.17g}"]
                )


def grid_function_from_csv(d: DomainSpec, path) -> GridFunction:
    """Rebuild a grid function written by ``grid_function_to_csv``.

    The panel structure is not stored; the reconstructed grid carries the
    node set and weights, which is enough to integrate and interpolate.
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            rows.append(tuple(float(v) for v in row))
    arr = np.asarray(rows)
    c1 = np.unique(arr[:, 0])
    th = np.unique(arr[:, 1])
    n_r, n_th = c1.size, th.size
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    arr = arr[order]
    vals = arr[:, 3].reshape(n_r, n_th)
    w = arr[:, 2].reshape(n_r, n_th)
    theta_weight = TWO_PI / n_th
    t_nodes = c1 if d.tag is Domain.CYLINDER else np.log(c1)
    t_weights = w[:, 0] / theta_weight
    grid = QuadratureGrid(
        domain=d,
        t_nodes=t_nodes,
        t_weights=t_weights,
        theta_nodes=th,
        theta_weight=theta_weight,
        t_edges=np.array([t_nodes[0], t_nodes[-1]]),
        r_inner=float(c1[0]),
        r_outer=float(c1[-1]),
    )
    return GridFunction(grid=grid, values=vals)
