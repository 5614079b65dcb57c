"""Seeded samplers for randomized verification.

All samplers consume a ``numpy.random.Generator``; reports built on them are
reproducible from a single 64-bit seed.  ``split_streams`` derives
independent child streams so sampling work can be chunked without changing
results.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm

from .geometry import (
    Domain,
    DomainSpec,
    _cumulative_range,
    radial_cumulative,
    radial_cumulative_inv,
    wrap_angle,
)

TWO_PI = 2.0 * math.pi


class SamplingError(RuntimeError):
    """Rejection sampling could not produce enough valid samples."""


def worker_count() -> int:
    """Internal parallelism cap from HOMOKERNEL_THREADS (default 1)."""
    import os

    try:
        return max(1, int(os.environ.get("HOMOKERNEL_THREADS", "1")))
    except ValueError:
        return 1


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def split_streams(seed: int, n: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def sample_radii(d: DomainSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Log-uniform radii over roughly two decades inside the chart."""
    if d.tag is Domain.CYLINDER:
        raise ValueError("cylinder has no radial coordinate")
    R = d.chart_radius
    if math.isinf(R):
        return 10.0 ** rng.uniform(-1.0, 1.0, size=n)
    return R * 10.0 ** rng.uniform(-2.0, -0.01, size=n)


def sample_group_parameters(n: int, rng: np.random.Generator, a_range=(-2.0, 2.0)):
    a = rng.uniform(a_range[0], a_range[1], size=n)
    phi = rng.uniform(0.0, TWO_PI, size=n)
    return a, phi


def sample_case_a_triples(
    d: DomainSpec,
    n: int,
    rng: np.random.Generator,
    a_range=(-2.0, 2.0),
    max_batches: int = 60,
):
    """(g, x, y) batches valid under the action, as coordinate arrays.

    Returns dict with keys a, phi, x1, x2, y1, y2, gx1, gx2, gy1, gy2 and
    the rejection acceptance rate.  Raises SamplingError when the domain
    admits too few valid draws.
    """
    if d.tag is Domain.GL2_PLANE:
        raise ValueError("use sample_gl2_triples on GL2Plane")
    cols = {k: [] for k in ("a", "phi", "x1", "x2", "y1", "y2", "gx1", "gx2", "gy1", "gy2")}
    total = 0
    drawn = 0
    for _ in range(max_batches):
        m = max(n, 64)
        drawn += m
        a, phi = sample_group_parameters(m, rng, a_range)
        th_x = rng.uniform(0.0, TWO_PI, size=m)
        th_y = rng.uniform(0.0, TWO_PI, size=m)
        if d.tag is Domain.CYLINDER:
            zx = rng.uniform(-2.0, 2.0, size=m)
            zy = rng.uniform(-2.0, 2.0, size=m)
            gx1, gy1 = zx + a, zy + a
            valid = np.ones(m, dtype=bool)
            x1, y1 = zx, zy
        else:
            x1 = sample_radii(d, m, rng)
            y1 = sample_radii(d, m, rng)
            lo, hi = _cumulative_range(d)
            sx = np.exp(2.0 * a) * radial_cumulative(d, x1**2)
            sy = np.exp(2.0 * a) * radial_cumulative(d, y1**2)
            valid = (sx > lo) & (sx < hi) & (sy > lo) & (sy < hi)
            if valid.any():
                mid = lo + 0.5 if math.isinf(hi) else 0.5 * (lo + hi)
                gx1 = np.sqrt(radial_cumulative_inv(d, np.where(valid, sx, mid)))
                gy1 = np.sqrt(radial_cumulative_inv(d, np.where(valid, sy, mid)))
            else:
                gx1 = gy1 = np.zeros(m)
        gx2 = wrap_angle(th_x + phi)
        gy2 = wrap_angle(th_y + phi)
        for key, arr in (
            ("a", a), ("phi", phi),
            ("x1", x1), ("x2", th_x), ("y1", y1), ("y2", th_y),
            ("gx1", gx1), ("gx2", gx2), ("gy1", gy1), ("gy2", gy2),
        ):
            cols[key].append(np.asarray(arr)[valid])
        total += int(valid.sum())
        if total >= n:
            break
    if total < n:
        raise SamplingError(
            f"only {total}/{n} valid samples on {d.tag.value}; "
            "the dilation range rejects almost every draw"
        )
    out = {k: np.concatenate(v)[:n] for k, v in cols.items()}
    out["acceptance_rate"] = total / drawn
    return out


def sample_gl2_matrices(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Orientation-preserving matrices as exponentials of random matrices."""
    mats = np.empty((n, 2, 2))
    for i in range(n):
        mats[i] = expm(scale * rng.uniform(-1.0, 1.0, size=(2, 2)))
    return mats


def sample_plane_points(n: int, rng: np.random.Generator) -> np.ndarray:
    r = 10.0 ** rng.uniform(-1.0, 1.0, size=n)
    th = rng.uniform(0.0, TWO_PI, size=n)
    return np.stack([r * np.cos(th), r * np.sin(th)], axis=1)


def sample_gl2_triples(n: int, rng: np.random.Generator, min_cross: float = 1e-6):
    """Matrices plus point pairs bounded away from the collinear locus."""
    mats = sample_gl2_matrices(n, rng)
    xs = np.empty((n, 2))
    ys = np.empty((n, 2))
    filled = 0
    for _ in range(60):
        m = n - filled
        if m == 0:
            break
        cx = sample_plane_points(m, rng)
        cy = sample_plane_points(m, rng)
        cr = cx[:, 0] * cy[:, 1] - cx[:, 1] * cy[:, 0]
        ok = np.abs(cr) >= min_cross * np.linalg.norm(cx, axis=1) * np.linalg.norm(cy, axis=1)
        k = int(ok.sum())
        xs[filled : filled + k] = cx[ok]
        ys[filled : filled + k] = cy[ok]
        filled += k
    if filled < n:
        raise SamplingError("could not sample point pairs off the collinear locus")
    return mats, xs, ys
