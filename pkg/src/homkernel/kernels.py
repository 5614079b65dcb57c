"""Homogeneous two-point kernels built from generating functions.

A kernel K is strongly homogeneous when lambda_g * K(gx, gy) = K(x, y) for
every group element and every point pair.  On each built-in domain every
such kernel is determined by one free generating function of the quotient
coordinates; ``build_kernel`` realizes the closed forms, ``recover_generating``
inverts them, and ``check_strong_homogeneity`` falsifies the identity by
seeded sampling.

Generating-function argument conventions:

* Cylinder: ``F(u, psi)`` with u = z_x - z_y and psi = theta_x - theta_y mod 2*pi.
* Radial domains: ``F(eta, psi)`` with eta the ratio of cumulative-profile
  square roots (on the punctured plane simply r_x / r_y).
* GL2Plane: two constants ``(c_plus, c_minus)``, the values attached to the
  two orientations of the frame {x, y}; the kernel vanishes where the
  cross-product does, which is forced for any homogeneous kernel there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import sampling
from .geometry import (
    Domain,
    DomainSpec,
    Point,
    radial_cumulative,
    radial_cumulative_inv,
    wrap_angle,
)

RESIDUAL_FLOOR = 1e-30


class NoViolation(ValueError):
    """The floor-kernel shift argument has no violation at this pair."""


@dataclass(frozen=True)
class GeneratingFunction:
    """Free datum of a homogeneous kernel; see the module docstring."""

    fn: Optional[Callable] = None
    c_plus: Optional[float] = None
    c_minus: Optional[float] = None
    label: str = ""

    @staticmethod
    def from_callable(fn: Callable, label: str = "") -> "GeneratingFunction":
        return GeneratingFunction(fn=fn, label=label)

    @staticmethod
    def gl2(c_plus: float, c_minus: float) -> "GeneratingFunction":
        return GeneratingFunction(
            c_plus=float(c_plus), c_minus=float(c_minus),
            label=f"gl2({c_plus},{c_minus})",
        )

    def __call__(self, first, psi):
        if self.fn is None:
            raise TypeError("GL2 generating data carries no callable")
        return self.fn(first, psi)


@dataclass(frozen=True)
class Kernel:
    """Evaluable two-point kernel with a declared singular locus.

    ``eval`` takes four coordinate arrays (x1, x2, y1, y2) and broadcasts.
    """

    domain: DomainSpec
    eval: Callable
    singular: Callable = field(default=lambda x1, x2, y1, y2: np.zeros(np.broadcast(x1, y1).shape, dtype=bool))
    label: str = ""

    def at(self, x: Point, y: Point):
        v = np.asarray(self.eval(x.c1, x.c2, y.c1, y.c2))
        return complex(v) if np.iscomplexobj(v) else float(v)


def cross_product(x1, x2, y1, y2):
    return np.asarray(x1) * np.asarray(y2) - np.asarray(x2) * np.asarray(y1)


def build_kernel(d: DomainSpec, F: GeneratingFunction) -> Kernel:
    """Kernel realizing the domain's general homogeneous form for F."""
    tag = d.tag
    if tag is Domain.GL2_PLANE:
        if F.c_plus is None or F.c_minus is None:
            raise ValueError("GL2Plane needs the two orientation constants")
        cp, cm = F.c_plus, F.c_minus

        def eval_gl2(x1, x2, y1, y2):
            c = cross_product(x1, x2, y1, y2)
            with np.errstate(divide="ignore", invalid="ignore"):
                pos = np.where(c > 0, cp / np.where(c != 0, c, 1.0), 0.0)
                neg = np.where(c < 0, cm / np.where(c != 0, c, 1.0), 0.0)
            return pos + neg

        return Kernel(
            domain=d,
            eval=eval_gl2,
            singular=lambda x1, x2, y1, y2: cross_product(x1, x2, y1, y2) == 0.0,
            label=F.label or "gl2-kernel",
        )

    if F.fn is None:
        raise ValueError(f"{tag.value} needs a callable generating function")
    fn = F.fn

    if tag is Domain.CYLINDER:
        def eval_cyl(x1, x2, y1, y2):
            return np.exp(-(np.asarray(x1) + np.asarray(y1))) * fn(
                np.asarray(x1) - np.asarray(y1), wrap_angle(np.asarray(x2) - np.asarray(y2))
            )

        return Kernel(domain=d, eval=eval_cyl, label=F.label)

    if tag is Domain.PUNCTURED_PLANE:
        def eval_plane(x1, x2, y1, y2):
            rx, ry = np.asarray(x1, float), np.asarray(y1, float)
            return fn(rx / ry, wrap_angle(np.asarray(x2) - np.asarray(y2))) / (rx * ry)

        return Kernel(domain=d, eval=eval_plane, label=F.label)

    def eval_radial(x1, x2, y1, y2):
        sx = radial_cumulative(d, np.asarray(x1, float) ** 2)
        sy = radial_cumulative(d, np.asarray(y1, float) ** 2)
        return fn(np.sqrt(sx / sy), wrap_angle(np.asarray(x2) - np.asarray(y2))) / np.sqrt(sx * sy)

    return Kernel(domain=d, eval=eval_radial, label=F.label)


@dataclass(frozen=True)
class HomogeneityReport:
    max_residual: float
    passed: bool
    tol: float
    n_samples: int
    acceptance_rate: float
    worst: dict


def _homogeneity_chunk(d: DomainSpec, K: Kernel, n: int, rng, a_range):
    """Residuals plus the worst sample of one seeded chunk."""
    if d.tag is Domain.GL2_PLANE:
        mats, xs, ys = sampling.sample_gl2_triples(n, rng)
        lam = np.abs(np.linalg.det(mats))
        gx = np.einsum("nij,nj->ni", mats, xs)
        gy = np.einsum("nij,nj->ni", mats, ys)
        k_orig = np.asarray(K.eval(xs[:, 0], xs[:, 1], ys[:, 0], ys[:, 1]))
        k_moved = np.asarray(K.eval(gx[:, 0], gx[:, 1], gy[:, 0], gy[:, 1]))
        acceptance = 1.0

        def describe(i):
            return {"matrix": mats[i].tolist(), "x": xs[i].tolist(), "y": ys[i].tolist()}
    else:
        batch = sampling.sample_case_a_triples(d, n, rng, a_range=a_range)
        lam = np.exp(2.0 * batch["a"])
        k_orig = np.asarray(K.eval(batch["x1"], batch["x2"], batch["y1"], batch["y2"]))
        k_moved = np.asarray(K.eval(batch["gx1"], batch["gx2"], batch["gy1"], batch["gy2"]))
        acceptance = batch["acceptance_rate"]

        def describe(i):
            return {
                "a": float(batch["a"][i]), "phi": float(batch["phi"][i]),
                "x": (float(batch["x1"][i]), float(batch["x2"][i])),
                "y": (float(batch["y1"][i]), float(batch["y2"][i])),
            }

    on_locus = ~np.isfinite(k_orig) | ~np.isfinite(k_moved)
    num = np.abs(lam * k_moved - k_orig)
    scale = np.abs(k_orig)
    residual = np.where(scale > RESIDUAL_FLOOR, num / np.where(scale > 0, scale, 1.0), num)
    residual = np.where(on_locus, 0.0, residual)
    idx = int(np.argmax(residual))
    worst = {"residual": float(residual[idx])} | describe(idx)
    return residual, worst, acceptance, int(on_locus.sum())


def check_strong_homogeneity(
    d: DomainSpec,
    K: Kernel,
    n_samples: int = 1000,
    tol: float = 1e-10,
    seed: int = 0,
    a_range=(-2.0, 2.0),
    chunk_size: int = 256,
) -> HomogeneityReport:
    """Sampled falsification of lambda_g K(gx, gy) = K(x, y).

    Residuals are relative to |K(x, y)| with an absolute fallback below
    ``RESIDUAL_FLOOR`` to avoid division blowup near kernel zeros.  Work
    is split into chunks with independently spawned random streams, so the
    report is identical whether chunks run serially or on the worker pool
    capped by HOMOKERNEL_THREADS.
    """
    sizes = [chunk_size] * (n_samples // chunk_size)
    if n_samples % chunk_size:
        sizes.append(n_samples % chunk_size)
    streams = sampling.split_streams(seed, len(sizes))
    jobs = [(n, rng) for n, rng in zip(sizes, streams)]
    workers = sampling.worker_count()
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _homogeneity_chunk(d, K, job[0], job[1], a_range), jobs))
    else:
        parts = [_homogeneity_chunk(d, K, n, rng, a_range) for n, rng in jobs]
    residuals = np.concatenate([p[0] for p in parts])
    n_locus = sum(p[3] for p in parts)
    if n_locus == residuals.size:
        raise sampling.SamplingError("every sample landed on the singular locus")
    worst = max((p[1] for p in parts), key=lambda w: w["residual"])
    acceptance = float(np.mean([p[2] for p in parts]))
    max_res = float(residuals.max())
    return HomogeneityReport(
        max_residual=max_res,
        passed=bool(max_res <= tol),
        tol=tol,
        n_samples=int(residuals.size),
        acceptance_rate=acceptance,
        worst=worst,
    )


def recover_generating(d: DomainSpec, K: Kernel) -> GeneratingFunction:
    """Generating function read off from the kernel at reference pairs.

    Inverse of ``build_kernel`` for strongly homogeneous kernels.  On
    domains whose cumulative profile has a bounded range, a fixed
    reference point cannot realize every ratio; a representative pair is
    therefore chosen per requested ratio, which covers exactly the ratios
    achieved by some valid point pair.
    """
    tag = d.tag
    if tag is Domain.GL2_PLANE:
        cp = float(np.asarray(K.eval(1.0, 0.0, 0.0, 1.0)))
        cm = -float(np.asarray(K.eval(0.0, 1.0, 1.0, 0.0)))
        return GeneratingFunction.gl2(cp, cm)
    if tag is Domain.CYLINDER:
        def fn_cyl(u, psi):
            u = np.asarray(u, float)
            return np.exp(u) * K.eval(u, wrap_angle(psi), np.zeros_like(u), np.zeros_like(u))

        return GeneratingFunction.from_callable(fn_cyl, label=f"recovered({K.label})")
    if tag is Domain.PUNCTURED_PLANE:
        def fn_plane(eta, psi):
            eta = np.asarray(eta, float)
            return eta * K.eval(eta, wrap_angle(psi), np.ones_like(eta), np.zeros_like(eta))

        return GeneratingFunction.from_callable(fn_plane, label=f"recovered({K.label})")

    from .geometry import DilationRangeError, _cumulative_range

    lo, hi = _cumulative_range(d)

    def fn_radial(eta, psi):
        eta = np.asarray(eta, float)
        e2 = eta**2
        # pair (s_x, s_y) with s_x / s_y = eta^2, both inside (lo, hi)
        sy_lo = np.maximum(lo, lo / np.where(e2 > 0, e2, 1.0))
        sy_hi = np.minimum(hi, hi / np.where(e2 > 0, e2, 1.0))
        if np.any(sy_lo >= sy_hi) or np.any(e2 <= 0):
            raise DilationRangeError(
                "ratio not realized by any point pair of this domain"
            )
        if math.isinf(hi):
            sy = np.maximum(sy_lo * 2.0, np.where(sy_lo > 0, sy_lo, 1.0))
        else:
            sy = np.where(sy_lo > 0, np.sqrt(sy_lo * sy_hi), 0.5 * sy_hi)
        sx = e2 * sy
        rx = np.sqrt(radial_cumulative_inv(d, sx))
        ry = np.sqrt(radial_cumulative_inv(d, sy))
        return np.sqrt(sx * sy) * K.eval(rx, wrap_angle(psi), ry, np.zeros_like(ry))

    return GeneratingFunction.from_callable(fn_radial, label=f"recovered({K.label})")


# ---------------------------------------------------------------------------
# the translation counterexample: almost-everywhere invariance without
# pointwise invariance


def _frac(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def floor_kernel(x, y) -> int:
    """Exact evaluation of the fractional-part comparison kernel.

    Value 0 where frac(y) == frac(x - y) and 1 elsewhere; arguments are
    converted to exact rationals, so floats are honored bit-for-bit.
    """
    qx, qy = Fraction(x), Fraction(y)
    return 0 if _frac(qy) == _frac(qx - qy) else 1


def translation_violation(x, y) -> Fraction:
    """Shift r with floor_kernel(x + r, y + r) != floor_kernel(x, y).

    The kernel is translation invariant almost everywhere but not at every
    pair: unless x - 2y is an integer, the shift r = x - 2y lands the pair
    on the zero set while the original pair sits off it.  Exact rational
    arithmetic throughout.

    Raises NoViolation when x - 2y is an integer.
    """
    qx, qy = Fraction(x), Fraction(y)
    r = qx - 2 * qy
    if r.denominator == 1:
        raise NoViolation("x - 2y is an integer; no shift violation at this pair")
    assert floor_kernel(qx + r, qy + r) == 0 and floor_kernel(qx, qy) == 1
    return r
