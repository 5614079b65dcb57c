"""Multiplicative convolution on the unit disk and its kernel form.

The convolution integrates g(w) f(z conj(w)) against the normalized area
measure of the disk.  Substituting xi = z conj(w) shows the same operator
is an integral operator with the piecewise kernel

    K(z, w) = g(conj(w) / conj(z)) / |z|^2   when |w| < |z|,   0 otherwise,

which scales like 1/|zw-scale|^2 under joint rotation-dilation, i.e. is a
homogeneous kernel of the punctured disk with the plain area measure.
Both evaluation paths are implemented and compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .geometry import Domain, DomainSpec, radial_disk
from .kernels import Kernel
from . import operators

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DiskFunction:
    """Complex-valued function on the unit disk, vectorized over arrays."""

    fn: Callable
    label: str = ""

    def __call__(self, z):
        return self.fn(np.asarray(z))


def monomial(n: int) -> DiskFunction:
    return DiskFunction(fn=lambda z: np.asarray(z) ** n, label=f"w^{n}")


def constant(c: complex = 1.0) -> DiskFunction:
    return DiskFunction(fn=lambda z: np.full_like(np.asarray(z, dtype=complex), c), label=f"const{c}")


@dataclass(frozen=True)
class DiskGrid:
    """Tensor rule with Gauss-Legendre in r^2 (exact for the r dr factor)
    and a uniform angular rule; weights sum to 1 for the normalized measure."""

    u_nodes: np.ndarray
    u_weights: np.ndarray
    theta: np.ndarray

    @property
    def points(self) -> np.ndarray:
        r = np.sqrt(self.u_nodes)
        return r[:, None] * np.exp(1j * self.theta)[None, :]

    @property
    def weights(self) -> np.ndarray:
        n_t = self.theta.size
        return np.repeat(self.u_weights[:, None] / n_t, n_t, axis=1)


def disk_grid(n_r: int = 64, n_theta: int = 128) -> DiskGrid:
    nodes, weights = np.polynomial.legendre.leggauss(n_r)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    theta = np.arange(n_theta) * (TWO_PI / n_theta)
    return DiskGrid(u_nodes=u, u_weights=w, theta=theta)


def convolve(g: DiskFunction, f: DiskFunction, z: complex, grid: Optional[DiskGrid] = None) -> complex:
    """Quadrature of the multiplicative convolution at z."""
    z = complex(z)
    if not abs(z) < 1.0 or z == 0:
        raise ValueError("z must lie in the punctured open unit disk")
    if grid is None:
        grid = disk_grid()
    pts = grid.points
    vals = np.asarray(g(pts)) * np.asarray(f(z * np.conj(pts)))
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand is not finite on the grid")
    return complex(np.sum(grid.weights * vals))


def convolve_with_estimate(g: DiskFunction, f: DiskFunction, z: complex,
                           grid: Optional[DiskGrid] = None) -> tuple[complex, float]:
    if grid is None:
        grid = disk_grid()
    full = convolve(g, f, z, grid)
    half = convolve(g, f, z, disk_grid(max(8, grid.u_nodes.size // 2), max(8, grid.theta.size // 2)))
    return full, abs(full - half)


def as_kernel(g: DiskFunction) -> Kernel:
    """The convolution as a two-point kernel on the Lebesgue disk domain.

    Vanishes for |w| >= |z| (the boundary circle is a null set); the
    domain is the unit disk with normalized area measure, whose dilation
    group is the rotation-scaling family.
    """
    d = radial_disk(R=1.0, C=0.0)

    def eval_kernel(x1, x2, y1, y2):
        rz = np.asarray(x1, dtype=float)
        rw = np.asarray(y1, dtype=float)
        inside = rw < rz
        z = rz * np.exp(1j * np.asarray(x2, dtype=float))
        w = rw * np.exp(1j * np.asarray(y2, dtype=float))
        arg = np.where(inside, np.conj(w) / np.conj(np.where(z != 0, z, 1.0)), 0.0)
        vals = np.asarray(g.fn(arg))
        return np.where(inside, vals / np.where(inside, rz**2, 1.0), 0.0)

    return Kernel(
        domain=d,
        eval=eval_kernel,
        singular=lambda x1, x2, y1, y2: np.asarray(x1) == 0.0,
        label=f"hb({g.label})",
    )


@dataclass(frozen=True)
class EquivalenceReport:
    convolution: complex
    operator: complex
    difference: float
    tolerance: float
    passed: bool


def check_equivalence(
    g: DiskFunction,
    f: DiskFunction,
    z: complex,
    n_r: int = 64,
    n_theta: int = 128,
    tol_floor: float = 1e-9,
) -> EquivalenceReport:
    """Convolution value against the kernel-operator value at z.

    The operator path integrates over the disk with a radial panel edge
    placed at |z|, where the kernel jumps to zero; the tolerance combines
    both refinement estimates.
    """
    z = complex(z)
    conv, conv_est = convolve_with_estimate(g, f, z, disk_grid(n_r, n_theta))
    d = radial_disk(R=1.0, C=0.0)
    grid = operators.build_grid(
        d, n_r=max(64, n_r), n_theta=n_theta,
        r_inner=1e-7, breakpoints=(abs(z),),
    )
    K = as_kernel(g)
    c1, th = grid.node_mesh()
    fvals = np.asarray(f.fn(c1 * np.exp(1j * th)))
    gf = operators.GridFunction(
        grid=grid, values=fvals,
        analytic=lambda r, t: f.fn(np.asarray(r) * np.exp(1j * np.asarray(t))),
    )
    res = operators.apply_operator(K, gf, [(abs(z), math.atan2(z.imag, z.real))])
    op_val = complex(res.values[0])
    tol = max(tol_floor, 10.0 * (conv_est + float(res.estimate[0])))
    diff = abs(conv - op_val)
    return EquivalenceReport(
        convolution=conv,
        operator=op_val,
        difference=diff,
        tolerance=tol,
        passed=bool(diff <= tol),
    )
