"""Measure spaces with explicit dilation-group actions.

Seven built-in domains.  Each couples a two-coordinate chart with a measure
density and a group acting by measure dilations:

    mu(g.A) = lambda_g * mu(A)

for a positive multiplicative character lambda.

Chart conventions (coordinates ``(c1, c2)``):

==============  =====================  ==========================================
tag             chart                  density w.r.t. chart coordinates
==============  =====================  ==========================================
Cylinder        (z, theta)             exp(2z)
PuncturedPlane  (r, theta), r > 0      r
RadialDisk      (r, theta), r in(0,R)  r / pi
PoincareDisk    (r, theta), r in(0,1)  r / (pi (1-r^2)^2)
BergmanDisk     (r, theta), r in(0,1)  (alpha+1) (1-r^2)^alpha r / pi
Lobachevsky     (r, theta), r > 0      sinh(r^2) sqrt(2 cosh(r^2)^2 - 1) r / pi
GL2Plane        (x1, x2) != (0,0)      1
==============  =====================  ==========================================

The radial families share one mechanism: a strictly increasing cumulative
profile ``radial_cumulative(t) = integral of the radial weight + C`` in the
variable ``t = r^2``.  Dilations act on the radial part through

    r_new = sqrt( radial_cumulative_inv( exp(2a) * radial_cumulative(r^2) ) )

and rotations add to theta.  The offset ``C`` selects one admissible
one-parameter family of dilations per measure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Union

import numpy as np

TWO_PI = 2.0 * math.pi

#: smallest admissible offset for the Lobachevsky profile
LOBACHEVSKY_MIN_C = math.log(1.0 + math.sqrt(2.0)) / (2.0 * math.sqrt(2.0)) - 0.5


class Domain(str, Enum):
    CYLINDER = "Cylinder"
    PUNCTURED_PLANE = "PuncturedPlane"
    RADIAL_DISK = "RadialDisk"
    POINCARE_DISK = "PoincareDisk"
    BERGMAN_DISK = "BergmanDisk"
    LOBACHEVSKY = "Lobachevsky"
    GL2_PLANE = "GL2Plane"


RADIAL_TAGS = frozenset(
    {
        Domain.PUNCTURED_PLANE,
        Domain.RADIAL_DISK,
        Domain.POINCARE_DISK,
        Domain.BERGMAN_DISK,
        Domain.LOBACHEVSKY,
    }
)


class AdmissibilityError(ValueError):
    """Domain parameter outside its admissible range."""


class DilationRangeError(ValueError):
    """A dilation would carry a point outside the chart; never clamped."""


class RegionError(ValueError):
    """Region invalid for the domain or not mappable under the group element."""


class CaseBError(ValueError):
    """Operation requires a character that descends to the point space.

    On GL2Plane the stabilizer does not preserve the measure, so the
    dilation factor cannot be attached to points and no reduction to an
    invariant measure exists.
    """


def wrap_angle(theta):
    """Reduce an angle into [0, 2*pi) with a single floor-based mod.

    Tiny negative inputs round to exactly 2*pi under the mod; they are
    folded back to 0 to keep the half-open interval honest.
    """
    w = np.mod(theta, TWO_PI)
    return np.where(w >= TWO_PI, 0.0, w)


def circular_distance(a, b):
    """Distance between angles on the circle, min(|d|, 2*pi - |d|)."""
    d = np.abs(wrap_angle(a) - wrap_angle(b))
    return np.minimum(d, TWO_PI - d)


# ---------------------------------------------------------------------------
# domains and points


@dataclass(frozen=True)
class DomainSpec:
    """One of the built-in measure spaces with a chosen dilation family.

    Parameters not used by a tag are ignored but kept for a uniform JSON
    form: R (outer chart radius), C (profile offset), alpha (Bergman
    weight exponent).
    """

    tag: Domain
    R: float = math.inf
    C: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "tag", Domain(self.tag))
        t, C = self.tag, self.C
        if t in (Domain.POINCARE_DISK, Domain.BERGMAN_DISK):
            if self.R != 1.0:
                raise AdmissibilityError(f"{t.value} chart radius is fixed to 1")
        if t is Domain.POINCARE_DISK and C < -1.0:
            raise AdmissibilityError("PoincareDisk requires C >= -1")
        if t is Domain.BERGMAN_DISK:
            if C < 1.0:
                raise AdmissibilityError("BergmanDisk requires C >= 1")
            if self.alpha <= -1.0:
                raise AdmissibilityError("BergmanDisk requires alpha > -1")
        if t is Domain.LOBACHEVSKY and C < LOBACHEVSKY_MIN_C - 1e-15:
            raise AdmissibilityError(
                f"Lobachevsky requires C >= {LOBACHEVSKY_MIN_C!r}"
            )
        if t is Domain.RADIAL_DISK:
            if C < 0.0:
                raise AdmissibilityError("RadialDisk requires C >= 0")
            if not self.R > 0.0:
                raise AdmissibilityError("RadialDisk requires R > 0")
        if t is Domain.PUNCTURED_PLANE and C != 0.0:
            raise AdmissibilityError("PuncturedPlane has no profile offset")

    @property
    def is_radial(self) -> bool:
        return self.tag in RADIAL_TAGS

    @property
    def chart_radius(self) -> float:
        if self.tag in (Domain.POINCARE_DISK, Domain.BERGMAN_DISK):
            return 1.0
        if self.tag is Domain.RADIAL_DISK:
            return self.R
        return math.inf

    def to_json(self) -> str:
        r = None if math.isinf(self.R) else self.R
        return json.dumps(
            {"tag": self.tag.value, "R": r, "C": self.C, "alpha": self.alpha},
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "DomainSpec":
        obj = json.loads(text)
        r = obj.get("R")
        return DomainSpec(
            tag=Domain(obj["tag"]),
            R=math.inf if r is None else float(r),
            C=float(obj.get("C", 0.0)),
            alpha=float(obj.get("alpha", 0.0)),
        )


def cylinder() -> DomainSpec:
    return DomainSpec(Domain.CYLINDER)


def punctured_plane() -> DomainSpec:
    return DomainSpec(Domain.PUNCTURED_PLANE)


def radial_disk(R: float = 1.0, C: float = 0.0) -> DomainSpec:
    return DomainSpec(Domain.RADIAL_DISK, R=R, C=C)


def poincare_disk(C: float = -1.0) -> DomainSpec:
    return DomainSpec(Domain.POINCARE_DISK, R=1.0, C=C)


def bergman_disk(alpha: float, C: float = 1.0) -> DomainSpec:
    return DomainSpec(Domain.BERGMAN_DISK, R=1.0, C=C, alpha=alpha)


def lobachevsky(C: float = LOBACHEVSKY_MIN_C) -> DomainSpec:
    return DomainSpec(Domain.LOBACHEVSKY, C=C)


def gl2_plane() -> DomainSpec:
    return DomainSpec(Domain.GL2_PLANE)


class Point(NamedTuple):
    """Chart point; meaning of the slots depends on the domain tag.

    (z, theta) on the cylinder, (r, theta) on radial domains,
    (x1, x2) on GL2Plane.
    """

    c1: float
    c2: float


def make_point(d: DomainSpec, c1: float, c2: float) -> Point:
    """Validated, angle-normalized point of the given domain."""
    if d.tag is Domain.GL2_PLANE:
        if c1 == 0.0 and c2 == 0.0:
            raise ValueError("GL2Plane excludes the origin")
        return Point(float(c1), float(c2))
    if d.tag is Domain.CYLINDER:
        if not np.isfinite(c1):
            raise ValueError("cylinder coordinate z must be finite")
        return Point(float(c1), float(wrap_angle(c2)))
    if not (0.0 < c1 < d.chart_radius):
        raise ValueError(f"radius {c1} outside chart (0, {d.chart_radius})")
    return Point(float(c1), float(wrap_angle(c2)))


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class CylElement:
    """Element (a, phi) of R x T: dilation exponent and rotation."""

    a: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "phi", float(wrap_angle(self.phi)))

    def compose(self, other: "CylElement") -> "CylElement":
        return CylElement(self.a + other.a, self.phi + other.phi)

    def inverse(self) -> "CylElement":
        return CylElement(-self.a, -self.phi)

    @property
    def is_identity(self) -> bool:
        return self.a == 0.0 and self.phi == 0.0


CYL_IDENTITY = CylElement(0.0, 0.0)


class MatElement:
    """Invertible 2x2 real matrix acting linearly on GL2Plane."""

    __slots__ = ("m",)

    def __init__(self, m):
        m = np.array(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("matrix must be 2x2")
        if np.linalg.det(m) == 0.0:
            raise ValueError("matrix must be invertible")
        m.flags.writeable = False
        object.__setattr__(self, "m", m)

    def __setattr__(self, *_):
        raise AttributeError("MatElement is immutable")

    def __repr__(self):
        return f"MatElement({self.m.tolist()})"

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))

    def compose(self, other: "MatElement") -> "MatElement":
        return MatElement(self.m @ other.m)

    def inverse(self) -> "MatElement":
        return MatElement(np.linalg.inv(self.m))


MAT_IDENTITY = MatElement(np.eye(2))

GroupElement = Union[CylElement, MatElement]


def identity_element(d: DomainSpec) -> GroupElement:
    return MAT_IDENTITY if d.tag is Domain.GL2_PLANE else CYL_IDENTITY


def _check_variant(d: DomainSpec, g: GroupElement):
    if d.tag is Domain.GL2_PLANE:
        if not isinstance(g, MatElement):
            raise TypeError("GL2Plane acts through MatElement")
    elif not isinstance(g, CylElement):
        raise TypeError(f"{d.tag.value} acts through CylElement")


def character(d: DomainSpec, g: GroupElement) -> float:
    """Dilation factor lambda_g: exp(2a) for (a, phi), |det m| for matrices."""
    _check_variant(d, g)
    if isinstance(g, MatElement):
        return abs(g.det)
    return math.exp(2.0 * g.a)


# ---------------------------------------------------------------------------
# radial measure machinery


def radial_weight(d: DomainSpec, t):
    """Weight gamma(t) of the radial measure, t = r^2."""
    t = np.asarray(t, dtype=float)
    tag = d.tag
    if tag in (Domain.PUNCTURED_PLANE, Domain.RADIAL_DISK):
        return np.ones_like(t)
    if tag is Domain.POINCARE_DISK:
        return 1.0 / (1.0 - t) ** 2
    if tag is Domain.BERGMAN_DISK:
        a = d.alpha
        return (a + 1.0) * (1.0 - t) ** a
    if tag is Domain.LOBACHEVSKY:
        return np.sinh(t) * np.sqrt(2.0 * np.cosh(t) ** 2 - 1.0)
    raise ValueError(f"{tag.value} has no radial weight")


def radial_cumulative(d: DomainSpec, t):
    """Strictly increasing positive profile: antiderivative of the weight + C."""
    t = np.asarray(t, dtype=float)
    tag = d.tag
    if tag is Domain.PUNCTURED_PLANE:
        return t + 0.0
    if tag is Domain.RADIAL_DISK:
        return t + d.C
    if tag is Domain.POINCARE_DISK:
        return 1.0 / (1.0 - t) + d.C
    if tag is Domain.BERGMAN_DISK:
        return d.C - (1.0 - t) ** (d.alpha + 1.0)
    if tag is Domain.LOBACHEVSKY:
        ch = np.cosh(t)
        s = np.sqrt(2.0 * ch**2 - 1.0)
        return ch * s / 2.0 - np.log(s + math.sqrt(2.0) * ch) / (2.0 * math.sqrt(2.0)) + d.C
    raise ValueError(f"{tag.value} has no radial profile")


def _cumulative_range(d: DomainSpec) -> tuple[float, float]:
    """Open interval of values taken by the profile on the chart."""
    tag = d.tag
    if tag is Domain.PUNCTURED_PLANE:
        return 0.0, math.inf
    if tag is Domain.RADIAL_DISK:
        return d.C, d.C + d.R**2
    if tag is Domain.POINCARE_DISK:
        return 1.0 + d.C, math.inf
    if tag is Domain.BERGMAN_DISK:
        return d.C - 1.0, d.C
    if tag is Domain.LOBACHEVSKY:
        return d.C - LOBACHEVSKY_MIN_C, math.inf
    raise ValueError(f"{tag.value} has no radial profile")


def _lobachevsky_inverse(d: DomainSpec, s: np.ndarray) -> np.ndarray:
    # bracketed bisection, then Newton polish; residual-based stop
    s = np.asarray(s, dtype=float)
    lo = np.zeros_like(s)
    hi = np.maximum(1.0, 0.5 * np.log(4.0 * math.sqrt(2.0) * np.maximum(s - d.C + 1.0, 1.0)))
    for _ in range(200):
        mask = radial_cumulative(d, hi) < s
        if not mask.any():
            break
        hi = np.where(mask, 2.0 * hi, hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = radial_cumulative(d, mid) < s
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    t = 0.5 * (lo + hi)
    target = 1e-13 * np.maximum(1.0, np.abs(s))
    for _ in range(8):
        res = radial_cumulative(d, t) - s
        if np.all(np.abs(res) <= target):
            break
        deriv = radial_weight(d, t)
        step = np.where(deriv > 0.0, res / np.where(deriv > 0.0, deriv, 1.0), 0.0)
        t = np.clip(t - step, lo, hi)
    return t


def radial_cumulative_inv(d: DomainSpec, s):
    """Inverse of the radial profile; closed form where available, root-found otherwise.

    Raises DilationRangeError when s falls outside the profile's range.
    """
    s_arr = np.asarray(s, dtype=float)
    lo, hi = _cumulative_range(d)
    if np.any(s_arr <= lo) or np.any(s_arr >= hi):
        raise DilationRangeError(
            f"value outside the profile range ({lo}, {hi}) of {d.tag.value}"
        )
    tag = d.tag
    if tag is Domain.PUNCTURED_PLANE:
        out = s_arr + 0.0
    elif tag is Domain.RADIAL_DISK:
        out = s_arr - d.C
    elif tag is Domain.POINCARE_DISK:
        out = 1.0 - 1.0 / (s_arr - d.C)
    elif tag is Domain.BERGMAN_DISK:
        out = 1.0 - (d.C - s_arr) ** (1.0 / (d.alpha + 1.0))
    elif tag is Domain.LOBACHEVSKY:
        out = _lobachevsky_inverse(d, s_arr)
    else:
        raise ValueError(f"{tag.value} has no radial profile")
    return out if np.ndim(s) else float(out)


def density(d: DomainSpec, c1, c2=None):
    """Measure density with respect to the chart coordinates."""
    c1 = np.asarray(c1, dtype=float)
    tag = d.tag
    if tag is Domain.CYLINDER:
        return np.exp(2.0 * c1)
    if tag is Domain.GL2_PLANE:
        return np.ones_like(c1)
    if tag is Domain.PUNCTURED_PLANE:
        return c1 + 0.0
    return radial_weight(d, c1**2) * c1 / math.pi


# ---------------------------------------------------------------------------
# the group action


def _act_radial_checked(d: DomainSpec, a: float, r):
    """Radial part of the action; returns (r_new, valid_mask), never raises."""
    r = np.asarray(r, dtype=float)
    s = math.exp(2.0 * a) * radial_cumulative(d, r**2)
    lo, hi = _cumulative_range(d)
    valid = (s > lo) & (s < hi)
    if not valid.any():
        return np.full_like(r, np.nan), valid
    s_safe = np.where(valid, s, 0.5 * (lo + min(hi, lo + 1.0)) if math.isinf(hi) else 0.5 * (lo + hi))
    t = radial_cumulative_inv(d, s_safe)
    out = np.where(valid, np.sqrt(t), np.nan)
    return out, valid


def act_coords(d: DomainSpec, g: GroupElement, c1, c2):
    """Vectorized action on chart coordinates; raises on chart exit."""
    _check_variant(d, g)
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    if d.tag is Domain.GL2_PLANE:
        m = g.m
        return m[0, 0] * c1 + m[0, 1] * c2, m[1, 0] * c1 + m[1, 1] * c2
    if d.tag is Domain.CYLINDER:
        return c1 + g.a, wrap_angle(c2 + g.phi)
    if d.tag is Domain.PUNCTURED_PLANE:
        return math.exp(g.a) * c1, wrap_angle(c2 + g.phi)
    r_new, valid = _act_radial_checked(d, g.a, c1)
    if not valid.all():
        raise DilationRangeError(
            f"dilation exp(2a)={math.exp(2*g.a):g} leaves the profile range on {d.tag.value}"
        )
    return r_new, wrap_angle(c2 + g.phi)


def act(d: DomainSpec, g: GroupElement, x: Point) -> Point:
    """Apply the group element to a point."""
    c1, c2 = act_coords(d, g, x.c1, x.c2)
    return Point(float(c1), float(c2))


def point_character(d: DomainSpec, c1, c2=None):
    """Character transported to points (Case A only): exp(2z) or profile(r^2)."""
    if d.tag is Domain.GL2_PLANE:
        raise CaseBError(
            "the stabilizer on GL2Plane does not preserve the measure; "
            "the character does not descend to points"
        )
    c1 = np.asarray(c1, dtype=float)
    if d.tag is Domain.CYLINDER:
        return np.exp(2.0 * c1)
    return radial_cumulative(d, c1**2)


# ---------------------------------------------------------------------------
# regions and measures


@dataclass(frozen=True)
class RadialAnnulusSector:
    """{ (r, theta) : r_lo <= r <= r_hi, theta in [theta_lo, theta_lo + width) }."""

    r_lo: float
    r_hi: float
    theta_lo: float = 0.0
    theta_width: float = TWO_PI

    def __post_init__(self):
        if self.r_lo < 0 or self.r_hi < self.r_lo:
            raise RegionError("need 0 <= r_lo <= r_hi")
        if not (0.0 <= self.theta_width <= TWO_PI):
            raise RegionError("theta_width must lie in [0, 2*pi]")

    @property
    def is_empty(self) -> bool:
        return self.r_lo == self.r_hi or self.theta_width == 0.0


@dataclass(frozen=True)
class RectRegion:
    """Axis-aligned box in chart coordinates.

    On the cylinder the second axis is the angle; its width must not
    exceed 2*pi.
    """

    a_lo: float
    a_hi: float
    b_lo: float
    b_hi: float

    def __post_init__(self):
        if self.a_hi < self.a_lo or self.b_hi < self.b_lo:
            raise RegionError("box bounds must be ordered")

    @property
    def is_empty(self) -> bool:
        return self.a_lo == self.a_hi or self.b_lo == self.b_hi


Region = Union[RadialAnnulusSector, RectRegion]


class MeasureResult(NamedTuple):
    value: float
    error: float


def _gl_panels(lo: float, hi: float, n_panels: int, order: int = 8):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def _validate_region(d: DomainSpec, region: Region):
    if isinstance(region, RadialAnnulusSector):
        if not d.is_radial and d.tag is not Domain.GL2_PLANE:
            raise RegionError(f"annulus sectors are not regions of {d.tag.value}")
        if not math.isfinite(region.r_hi):
            raise RegionError("unbounded regions are rejected, not truncated")
        if math.isfinite(d.chart_radius) and region.r_hi >= d.chart_radius:
            raise RegionError("region must stay strictly inside the chart")
        return
    if isinstance(region, RectRegion):
        if d.tag is Domain.CYLINDER:
            if not (math.isfinite(region.a_lo) and math.isfinite(region.a_hi)):
                raise RegionError("unbounded regions are rejected, not truncated")
            if region.b_hi - region.b_lo > TWO_PI + 1e-12:
                raise RegionError("angular width exceeds 2*pi")
            return
        if d.tag is Domain.GL2_PLANE:
            for v in (region.a_lo, region.a_hi, region.b_lo, region.b_hi):
                if not math.isfinite(v):
                    raise RegionError("unbounded regions are rejected, not truncated")
            return
        raise RegionError(f"boxes are not regions of {d.tag.value}")
    raise RegionError(f"unsupported region type {type(region).__name__}")


def _radial_line_density(d: DomainSpec, r):
    # density integrated over nothing: the (theta-independent) chart density
    return density(d, r)


def measure_of(
    d: DomainSpec,
    region: Region,
    method: str = "quadrature",
    budget: int | None = None,
    rng: np.random.Generator | None = None,
) -> MeasureResult:
    """Measure of a region, with an error estimate.

    Quadrature: composite Gauss-Legendre along the first coordinate
    (densities of all built-in domains do not depend on the angle), error
    estimated against the half-panel rule.  Monte Carlo: uniform sampling
    of the coordinate box, standard-error estimate.
    """
    _validate_region(d, region)
    if region.is_empty:
        return MeasureResult(0.0, 0.0)
    if isinstance(region, RadialAnnulusSector):
        lo, hi, width = region.r_lo, region.r_hi, region.theta_width
        if d.tag is Domain.GL2_PLANE:
            # Cartesian chart described in polar terms: Jacobian r enters
            integrand = lambda r: r * density(d, r)
        else:
            integrand = lambda r: density(d, r)
    else:
        lo, hi = region.a_lo, region.a_hi
        width = region.b_hi - region.b_lo
        integrand = lambda c1: density(d, c1)

    if method == "quadrature":
        n_panels = max(2, (budget or 128) // 8)
        x, w = _gl_panels(lo, hi, n_panels)
        full = width * float(np.sum(w * integrand(x)))
        xh, wh = _gl_panels(lo, hi, max(1, n_panels // 2))
        half = width * float(np.sum(wh * integrand(xh)))
        return MeasureResult(full, abs(full - half))
    if method == "montecarlo":
        if rng is None:
            rng = np.random.default_rng(0)
        n = budget or 100_000
        if n <= 1:
            raise ValueError("Monte Carlo budget must exceed 1")
        c1 = rng.uniform(lo, hi, size=n)
        vals = integrand(c1)
        box = (hi - lo) * width
        value = box * float(np.mean(vals))
        se = box * float(np.std(vals, ddof=1)) / math.sqrt(n)
        return MeasureResult(value, se)
    raise ValueError(f"unknown method {method!r}")


def _conformal_parts(m: np.ndarray):
    """If m = c * rotation with c > 0, det > 0, return (c, angle) else None."""
    c2 = m[0, 0] ** 2 + m[1, 0] ** 2
    if c2 == 0.0:
        return None
    gram = m.T @ m
    scale = math.sqrt(c2)
    if abs(gram[0, 1]) > 1e-12 * c2 or abs(gram[0, 0] - gram[1, 1]) > 1e-12 * c2:
        return None
    if np.linalg.det(m) <= 0.0:
        return None
    return scale, math.atan2(m[1, 0], m[0, 0])


def _act_boundary_radius(d: DomainSpec, a: float, r: float) -> float:
    """Radial action extended to the inner chart boundary r = 0."""
    lo, hi = _cumulative_range(d)
    if r == 0.0:
        s = math.exp(2.0 * a) * lo
        if s == lo:
            return 0.0
        if s < lo or s >= hi:
            raise DilationRangeError("region image leaves the chart")
        return math.sqrt(radial_cumulative_inv(d, s))
    out, ok = _act_radial_checked(d, a, np.asarray([r]))
    if not ok.all():
        raise DilationRangeError("region image leaves the chart")
    return float(out[0])


def region_image(d: DomainSpec, g: GroupElement, region: Region) -> Region:
    """Image of a region under the action, for region shapes closed under it."""
    _check_variant(d, g)
    _validate_region(d, region)
    if isinstance(region, RadialAnnulusSector):
        if isinstance(g, CylElement):
            if d.tag is Domain.PUNCTURED_PLANE:
                scale = math.exp(g.a)
                return RadialAnnulusSector(
                    scale * region.r_lo, scale * region.r_hi,
                    float(wrap_angle(region.theta_lo + g.phi)), region.theta_width,
                )
            return RadialAnnulusSector(
                _act_boundary_radius(d, g.a, region.r_lo),
                _act_boundary_radius(d, g.a, region.r_hi),
                float(wrap_angle(region.theta_lo + g.phi)), region.theta_width,
            )
        conf = _conformal_parts(g.m)
        if conf is None:
            raise RegionError(
                "annulus sector images are only computable for conformal matrices"
            )
        c, phi = conf
        return RadialAnnulusSector(
            c * region.r_lo, c * region.r_hi,
            float(wrap_angle(region.theta_lo + phi)), region.theta_width,
        )
    # boxes
    if d.tag is Domain.CYLINDER:
        return RectRegion(
            region.a_lo + g.a, region.a_hi + g.a,
            region.b_lo + g.phi, region.b_hi + g.phi,
        )
    m = g.m
    if abs(m[0, 1]) > 0.0 or abs(m[1, 0]) > 0.0:
        raise RegionError("box images are only computable for diagonal matrices")
    xs = sorted([m[0, 0] * region.a_lo, m[0, 0] * region.a_hi])
    ys = sorted([m[1, 1] * region.b_lo, m[1, 1] * region.b_hi])
    return RectRegion(xs[0], xs[1], ys[0], ys[1])


@dataclass(frozen=True)
class DilationReport:
    ratio: float
    expected: float
    error: float
    passed: bool
    method: str
    region_measure: float
    image_measure: float


def verify_dilation(
    d: DomainSpec,
    g: GroupElement,
    region: Region,
    method: str = "quadrature",
    tol: float | None = None,
    budget: int | None = None,
    rng: np.random.Generator | None = None,
) -> DilationReport:
    """Check mu(gA)/mu(A) against the character of g on one region."""
    image = region_image(d, g, region)
    base = measure_of(d, region, method=method, budget=budget, rng=rng)
    img = measure_of(d, image, method=method, budget=budget, rng=rng)
    if base.value == 0.0:
        raise RegionError("region has zero measure; ratio undefined")
    ratio = img.value / base.value
    expected = character(d, g)
    if method == "montecarlo":
        se = math.hypot(img.error / base.value, ratio * base.error / base.value)
        bound = 3.0 * se if tol is None else tol
    else:
        bound = 1e-8 if tol is None else tol
    err = abs(ratio - expected)
    return DilationReport(
        ratio=ratio,
        expected=expected,
        error=err,
        passed=bool(err <= bound),
        method=method,
        region_measure=base.value,
        image_measure=img.value,
    )
