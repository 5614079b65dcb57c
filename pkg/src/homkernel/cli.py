"""Batch driver: every verification and computation as a subcommand.

Each run writes a JSON summary (schema 1) and a CSV of samples or grid
values next to it.  A fixed seed makes reports byte-identical across runs
except for the ``timestamp`` field.  Exit codes: 0 all checks passed,
1 a check failed, 2 configuration error, 3 numerical non-convergence.
"""

from __future__ import annotations

import csv as csv_mod
import dataclasses
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import click
import numpy as np

from . import gl2 as gl2_mod
from . import hadamard_bergman as hb_mod
from . import hardy_littlewood as hl_mod
from . import kernels as kernels_mod
from . import operators as ops_mod
from . import presets
from . import geometry
from .geometry import CylElement, Domain, DomainSpec, Point, RadialAnnulusSector
from .sampling import SamplingError, rng_from_seed

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NONCONVERGENT = 3

_DOMAIN_ALIASES = {
    "cylinder": Domain.CYLINDER,
    "plane": Domain.PUNCTURED_PLANE,
    "puncturedplane": Domain.PUNCTURED_PLANE,
    "radialdisk": Domain.RADIAL_DISK,
    "disk": Domain.RADIAL_DISK,
    "poincare": Domain.POINCARE_DISK,
    "poincaredisk": Domain.POINCARE_DISK,
    "bergman": Domain.BERGMAN_DISK,
    "bergmandisk": Domain.BERGMAN_DISK,
    "lobachevsky": Domain.LOBACHEVSKY,
    "gl2plane": Domain.GL2_PLANE,
    "gl2": Domain.GL2_PLANE,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Fully determined description of one batch run."""

    subcommand: str
    domain_json: Optional[str] = None
    generator: Optional[str] = None
    kernel: Optional[str] = None
    seed: int = 0
    tolerance: Optional[float] = None
    p: float = 2.0
    n_samples: int = 1000
    n_r: int = 128
    n_theta: int = 64
    trials: int = 20
    group_a: float = 0.3
    group_phi: float = 0.0
    method: str = "quadrature"
    z_value: complex = 0.4 + 0.2j
    monomial_degree: int = 2
    lower_n: tuple = (1000.0,)
    out: str = "homkernel-report"
    extras: dict = field(default_factory=dict)


def _domain_from(config: RunConfig) -> DomainSpec:
    if config.domain_json is None:
        raise ConfigError("this subcommand requires a domain")
    try:
        return DomainSpec.from_json(config.domain_json)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad domain: {exc}") from exc


def _resolve_domain(name: str, R: float | None, C: float | None, alpha: float | None) -> str:
    key = name.replace("-", "").replace("_", "").lower()
    if key not in _DOMAIN_ALIASES:
        raise ConfigError(f"unknown domain {name!r}")
    tag = _DOMAIN_ALIASES[key]
    defaults = {
        Domain.CYLINDER: (math.inf, 0.0, 0.0),
        Domain.PUNCTURED_PLANE: (math.inf, 0.0, 0.0),
        Domain.RADIAL_DISK: (1.0, 0.0, 0.0),
        Domain.POINCARE_DISK: (1.0, -1.0, 0.0),
        Domain.BERGMAN_DISK: (1.0, 1.0, 0.5),
        Domain.LOBACHEVSKY: (math.inf, geometry.LOBACHEVSKY_MIN_C, 0.0),
        Domain.GL2_PLANE: (math.inf, 0.0, 0.0),
    }[tag]
    spec = DomainSpec(
        tag,
        R=defaults[0] if R is None else R,
        C=defaults[1] if C is None else C,
        alpha=defaults[2] if alpha is None else alpha,
    )
    return spec.to_json()


def _random_annulus(d: DomainSpec, rng) -> RadialAnnulusSector:
    R = d.chart_radius
    if math.isinf(R):
        hi_cap = 2.5 if d.tag is Domain.LOBACHEVSKY else 10.0
        lo = rng.uniform(0.2, 0.6 * hi_cap)
    else:
        hi_cap = 0.95 * R
        lo = rng.uniform(0.05 * R, 0.6 * hi_cap)
    hi = rng.uniform(lo * 1.05, hi_cap)
    th = rng.uniform(0.0, 2 * math.pi)
    width = rng.uniform(0.3, 2 * math.pi)
    return RadialAnnulusSector(lo, hi, th, width)


def _default_grid_function(d: DomainSpec, grid):
    if d.tag is Domain.CYLINDER:
        fn = lambda z, th: np.exp(-np.asarray(z, float) ** 2) * (1.0 + 0.3 * np.cos(th))
    else:
        fn = lambda r, th: np.exp(-np.log(np.asarray(r, float)) ** 2) * (1.0 + 0.3 * np.cos(th))
    return ops_mod.tabulate(grid, fn)


# ---------------------------------------------------------------------------
# runners; each returns (passed or None, result dict, csv header, csv rows)


def _run_verify_dilation(config: RunConfig):
    d = _domain_from(config)
    rng = rng_from_seed(config.seed)
    tol = config.tolerance if config.tolerance is not None else (
        1e-8 if config.method == "quadrature" else None
    )
    rows = []
    worst = 0.0
    n_pass = 0
    for trial in range(config.trials):
        for _ in range(200):
            region = _random_annulus(d, rng)
            a = rng.uniform(-1.0, 1.0)
            phi = rng.uniform(0.0, 2 * math.pi)
            if d.tag is Domain.GL2_PLANE:
                rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
                g = geometry.MatElement(math.exp(a) * rot)
            else:
                g = CylElement(a, phi)
            try:
                rep = geometry.verify_dilation(d, g, region, method=config.method, tol=tol, rng=rng)
            except geometry.DilationRangeError:
                continue
            break
        else:
            raise SamplingError("no admissible (g, region) pair found")
        worst = max(worst, rep.error)
        n_pass += int(rep.passed)
        rows.append([trial, a, phi, region.r_lo, region.r_hi, region.theta_lo,
                     region.theta_width, rep.ratio, rep.expected, rep.error, rep.passed])
    passed = n_pass == config.trials
    result = {
        "domain": json.loads(d.to_json()),
        "trials": config.trials,
        "passes": n_pass,
        "max_error": worst,
        "method": config.method,
        "tolerance": tol,
    }
    header = ["trial", "a", "phi", "r_lo", "r_hi", "theta_lo", "theta_width",
              "ratio", "expected", "error", "passed"]
    return passed, result, header, rows


def _make_kernel(d: DomainSpec, name: str):
    gen = presets.generating_preset(name)
    return kernels_mod.build_kernel(d, gen)


def _run_build_kernel(config: RunConfig):
    d = _domain_from(config)
    K = _make_kernel(d, config.generator or "one")
    if d.tag is Domain.GL2_PLANE:
        base = (1.0, 0.0)
        rng_pts = np.linspace(-2.0, 2.0, max(4, config.n_r // 8))
        rows = []
        for x1 in rng_pts:
            for x2 in rng_pts:
                if x1 == 0.0 and x2 == 0.0:
                    continue
                v = float(np.asarray(K.eval(x1, x2, base[0], base[1])))
                rows.append([x1, x2, v])
        header = ["x1", "x2", "K_to_base"]
        result = {"domain": json.loads(d.to_json()), "generator": config.generator,
                  "base": list(base), "n_values": len(rows)}
        return None, result, header, rows
    grid = ops_mod.build_grid(d, n_r=config.n_r, n_theta=config.n_theta)
    if d.tag is Domain.CYLINDER:
        base = Point(0.0, 0.0)
    else:
        R = d.chart_radius
        base = Point(0.5 if math.isfinite(R) else 1.0, 0.0)
    c1, th = grid.node_mesh()
    vals = np.asarray(K.eval(c1, th, np.full_like(c1, base.c1), np.full_like(th, base.c2)))
    rows = [
        [c1[i, j], th[i, j], complex(vals[i, j]).real]
        for i in range(grid.n_r)
        for j in range(grid.n_theta)
    ]
    header = ["c1", "theta", "K_to_base"]
    result = {"domain": json.loads(d.to_json()), "generator": config.generator,
              "base": [base.c1, base.c2], "n_values": len(rows)}
    return None, result, header, rows


def _run_check_homogeneity(config: RunConfig):
    d = _domain_from(config)
    K = _make_kernel(d, config.generator or "one")
    tol = config.tolerance if config.tolerance is not None else (
        1e-8 if d.tag is Domain.LOBACHEVSKY else 1e-10
    )
    rep = kernels_mod.check_strong_homogeneity(
        d, K, n_samples=config.n_samples, tol=tol, seed=config.seed
    )
    result = {
        "domain": json.loads(d.to_json()),
        "generator": config.generator,
        "max_residual": rep.max_residual,
        "tolerance": rep.tol,
        "n_samples": rep.n_samples,
        "acceptance_rate": rep.acceptance_rate,
        "worst": rep.worst,
    }
    header = ["key", "value"]
    rows = [["max_residual", rep.max_residual], ["acceptance_rate", rep.acceptance_rate]]
    return rep.passed, result, header, rows


def _run_check_operator(config: RunConfig):
    d = _domain_from(config)
    if d.tag is Domain.GL2_PLANE:
        raise ConfigError("operator commutation checks run on the reduced domains")
    K = _make_kernel(d, config.generator or "one")
    grid = ops_mod.build_grid(d, n_r=config.n_r, n_theta=config.n_theta)
    f = _default_grid_function(d, grid)
    g = CylElement(config.group_a, config.group_phi)
    tol = config.tolerance if config.tolerance is not None else 1e-6
    rep = ops_mod.check_operator_homogeneity(d, K, g, f, tol=tol)
    result = {
        "domain": json.loads(d.to_json()),
        "generator": config.generator,
        "group": {"a": config.group_a, "phi": config.group_phi},
        "residual": rep.residual,
        "estimate": rep.estimate,
        "tolerance": rep.tol,
        "n_eval": rep.n_eval,
    }
    rows = [["residual", rep.residual], ["estimate", rep.estimate]]
    return rep.passed, result, ["key", "value"], rows


def _run_check_reduction(config: RunConfig):
    d = _domain_from(config)
    K = _make_kernel(d, config.generator or "one")
    grid = ops_mod.build_grid(d, n_r=config.n_r, n_theta=config.n_theta)
    f = _default_grid_function(d, grid)
    g = CylElement(config.group_a, config.group_phi)
    tol = config.tolerance if config.tolerance is not None else 1e-6
    rep = ops_mod.check_convolution_reduction(d, K, config.p, g, f, tol=tol)
    result = {
        "domain": json.loads(d.to_json()),
        "generator": config.generator,
        "p": config.p,
        "group": {"a": config.group_a, "phi": config.group_phi},
        "residual": rep.residual,
        "estimate": rep.estimate,
        "tolerance": rep.tol,
    }
    rows = [["residual", rep.residual], ["estimate", rep.estimate]]
    return rep.passed, result, ["key", "value"], rows


def _run_hl_bound(config: RunConfig):
    name = config.kernel or "hlp:1/(x+y)"
    k = presets.hl_kernel_1d(name)
    kap = hl_mod.kappa_1d(k, config.p)
    if kap.diverged:
        result = {"kernel": name, "p": config.p, "kappa": None, "diverged": True}
        return True, result, ["key", "value"], [["diverged", True]]
    lower = hl_mod.norm_lower_bound(k, config.p, family_params=config.lower_n)
    tol = config.tolerance if config.tolerance is not None else 1e-4
    upper = hl_mod.norm_upper_check(k, config.p, n_random=config.n_samples, seed=config.seed, tol=tol)
    passed = bool(upper.passed and lower.best <= kap.value * (1.0 + 1e-6))
    result = {
        "kernel": name,
        "p": config.p,
        "kappa": kap.value,
        "estimate": kap.estimate,
        "dual_kappa": kap.dual_value,
        "lower_bound": lower.best,
        "lower_by_n": {str(k_): v for k_, v in lower.by_n.items()},
        "max_ratio": upper.max_ratio,
        "n_random": config.n_samples,
        "tolerance": tol,
    }
    header = ["index", "ratio"]
    rows = [[i, float(r)] for i, r in enumerate(upper.ratios)]
    return passed, result, header, rows


def _run_gl2_demo(config: RunConfig):
    rng = rng_from_seed(config.seed)
    c1, c2 = rng.uniform(0.4, 0.9), rng.uniform(-0.7, -0.2)
    sig = rng.uniform(0.5, 0.8)

    def f(y1, y2):
        return np.exp(-((np.asarray(y1) - c1) ** 2 + (np.asarray(y2) - c2) ** 2) / sig**2)

    cfg = gl2_mod.DEFAULT_PV
    radii = (0.6, 1.0, 1.7)
    angles = np.linspace(0.25, 2 * math.pi - 0.25, max(4, config.trials // len(radii)))
    rows = []
    worst_diff = 0.0
    worst_hom = 0.0
    for r in radii:
        for th in angles:
            x = (r * math.cos(th), r * math.sin(th))
            if abs(x[0]) < 0.2:
                continue
            direct = gl2_mod.apply_gl2_direct(f, x, cfg)
            composed = gl2_mod.apply_gl2_composed(f, x, cfg)
            scaled = gl2_mod.apply_gl2_direct(f, (2.0 * x[0], 2.0 * x[1]), cfg)
            scale_ref = max(abs(direct.value), 1e-12)
            hom_res = abs(scaled.value - direct.value / 2.0) / scale_ref
            diff = abs(direct.value - composed.value) / scale_ref
            worst_diff = max(worst_diff, diff)
            worst_hom = max(worst_hom, hom_res)
            rows.append([x[0], x[1], direct.value, composed.value,
                         abs(direct.value - composed.value), hom_res])
    tol = config.tolerance if config.tolerance is not None else 1e-3
    passed = worst_diff <= tol and worst_hom <= tol
    result = {
        "bump_center": [c1, c2],
        "bump_width": sig,
        "max_rel_difference": worst_diff,
        "max_homogeneity_residual": worst_hom,
        "tolerance": tol,
        "n_points": len(rows),
    }
    header = ["x1", "x2", "direct", "composed", "abs_diff", "homogeneity_residual"]
    return passed, result, header, rows


def _run_hb_check(config: RunConfig):
    n = config.monomial_degree
    z = config.z_value
    g = hb_mod.monomial(n)
    f = hb_mod.monomial(n)
    conv = hb_mod.convolve(g, f, z)
    expected = z**n / (n + 1)
    identity_err = abs(conv - expected)
    equiv = hb_mod.check_equivalence(g, f, z, n_r=config.n_r, n_theta=config.n_theta)
    tol = config.tolerance if config.tolerance is not None else 1e-8
    passed = bool(identity_err <= tol and equiv.passed)
    result = {
        "degree": n,
        "z": [z.real, z.imag],
        "convolution": [conv.real, conv.imag],
        "expected": [expected.real, expected.imag],
        "identity_error": identity_err,
        "equivalence_difference": equiv.difference,
        "equivalence_tolerance": equiv.tolerance,
        "tolerance": tol,
    }
    rows = [["identity_error", identity_err], ["equivalence_difference", equiv.difference]]
    return passed, result, ["key", "value"], rows


def _run_counterexample(config: RunConfig):
    rng = rng_from_seed(config.seed)
    rows = []
    all_found = True
    for i in range(config.n_samples):
        x = float(rng.uniform(-10.0, 10.0))
        y = float(rng.uniform(-10.0, 10.0))
        try:
            r = kernels_mod.translation_violation(x, y)
        except kernels_mod.NoViolation:
            all_found = False
            rows.append([i, x, y, "", "", ""])
            continue
        k_before = kernels_mod.floor_kernel(x, y)
        from fractions import Fraction

        k_after = kernels_mod.floor_kernel(Fraction(x) + r, Fraction(y) + r)
        ok = k_before == 1 and k_after == 0
        all_found &= ok
        rows.append([i, x, y, float(r), k_before, k_after])
    result = {"n_samples": config.n_samples, "all_violations_found": all_found}
    header = ["index", "x", "y", "shift", "kernel_before", "kernel_after"]
    return all_found, result, header, rows


_RUNNERS = {
    "verify-dilation": _run_verify_dilation,
    "build-kernel": _run_build_kernel,
    "check-homogeneity": _run_check_homogeneity,
    "check-operator": _run_check_operator,
    "check-reduction": _run_check_reduction,
    "hl-bound": _run_hl_bound,
    "gl2-demo": _run_gl2_demo,
    "hb-check": _run_hb_check,
    "counterexample": _run_counterexample,
}


def run(config: RunConfig) -> int:
    """Execute a run configuration; writes report files, returns the exit code."""
    runner = _RUNNERS.get(config.subcommand)
    if runner is None:
        raise ConfigError(f"unknown subcommand {config.subcommand!r}")
    try:
        passed, result, header, rows = runner(config)
    except (ConfigError, geometry.AdmissibilityError, presets.ExpressionError, KeyError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        return EXIT_CONFIG
    except (
        gl2_mod.PVConvergenceError,
        gl2_mod.TruncationError,
        hl_mod.DivergentIntegral,
        hl_mod.KappaMismatch,
        SamplingError,
        ops_mod.GridLocusError,
    ) as exc:
        click.echo(f"numerical non-convergence: {exc}", err=True)
        return EXIT_NONCONVERGENT
    payload = {
        "schema": SCHEMA_VERSION,
        "subcommand": config.subcommand,
        "seed": config.seed,
        "passed": passed,
        "result": result,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    out = Path(config.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    json_path = out.with_suffix(".json")
    json_path.write_text(json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n")
    csv_path = out.with_suffix(".csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv_mod.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    status = "PASS" if passed else ("DONE" if passed is None else "FAIL")
    click.echo(f"{config.subcommand}: {status}  (report: {json_path}, samples: {csv_path})")
    if passed is None or passed:
        return EXIT_OK
    return EXIT_CHECK_FAILED


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return v


# ---------------------------------------------------------------------------
# click wiring


def _common(fn):
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    fn = click.option("--out", type=str, default="homkernel-report", show_default=True)(fn)
    fn = click.option("--tol", "tolerance", type=float, default=None)(fn)
    return fn


def _domain_options(fn):
    fn = click.option("--domain", required=True)(fn)
    fn = click.option("--R", "r", type=float, default=None)(fn)
    fn = click.option("--C", "c", type=float, default=None)(fn)
    fn = click.option("--alpha", type=float, default=None)(fn)
    return fn


@click.group()
def main():
    """Homogeneous-kernel verification toolkit."""


@main.command("verify-dilation")
@_domain_options
@_common
@click.option("--trials", type=int, default=20, show_default=True)
@click.option("--method", type=click.Choice(["quadrature", "montecarlo"]), default="quadrature")
def cmd_verify_dilation(domain, r, c, alpha, seed, out, tolerance, trials, method):
    sys.exit(run(RunConfig(
        subcommand="verify-dilation",
        domain_json=_resolve_domain_or_exit(domain, r, c, alpha),
        seed=seed, out=out, tolerance=tolerance, trials=trials, method=method,
    )))


@main.command("build-kernel")
@_domain_options
@_common
@click.option("--gen", "generator", default="one", show_default=True)
@click.option("--n-r", type=int, default=32, show_default=True)
@click.option("--n-theta", type=int, default=16, show_default=True)
def cmd_build_kernel(domain, r, c, alpha, seed, out, tolerance, generator, n_r, n_theta):
    sys.exit(run(RunConfig(
        subcommand="build-kernel",
        domain_json=_resolve_domain_or_exit(domain, r, c, alpha),
        generator=generator, seed=seed, out=out, tolerance=tolerance,
        n_r=n_r, n_theta=n_theta,
    )))


@main.command("check-homogeneity")
@_domain_options
@_common
@click.option("--gen", "generator", default="one", show_default=True)
@click.option("--n-samples", type=int, default=1000, show_default=True)
def cmd_check_homogeneity(domain, r, c, alpha, seed, out, tolerance, generator, n_samples):
    sys.exit(run(RunConfig(
        subcommand="check-homogeneity",
        domain_json=_resolve_domain_or_exit(domain, r, c, alpha),
        generator=generator, seed=seed, out=out, tolerance=tolerance, n_samples=n_samples,
    )))


@main.command("check-operator")
@_domain_options
@_common
@click.option("--gen", "generator", default="one", show_default=True)
@click.option("--a", "group_a", type=float, default=0.3, show_default=True)
@click.option("--phi", "group_phi", type=float, default=0.0, show_default=True)
@click.option("--n-r", type=int, default=128, show_default=True)
@click.option("--n-theta", type=int, default=64, show_default=True)
def cmd_check_operator(domain, r, c, alpha, seed, out, tolerance, generator, group_a, group_phi, n_r, n_theta):
    sys.exit(run(RunConfig(
        subcommand="check-operator",
        domain_json=_resolve_domain_or_exit(domain, r, c, alpha),
        generator=generator, seed=seed, out=out, tolerance=tolerance,
        group_a=group_a, group_phi=group_phi, n_r=n_r, n_theta=n_theta,
    )))


@main.command("check-reduction")
@_domain_options
@_common
@click.option("--gen", "generator", default="one", show_default=True)
@click.option("--p", type=float, default=2.0, show_default=True)
@click.option("--a", "group_a", type=float, default=0.3, show_default=True)
@click.option("--phi", "group_phi", type=float, default=0.0, show_default=True)
@click.option("--n-r", type=int, default=128, show_default=True)
@click.option("--n-theta", type=int, default=64, show_default=True)
def cmd_check_reduction(domain, r, c, alpha, seed, out, tolerance, generator, p, group_a, group_phi, n_r, n_theta):
    sys.exit(run(RunConfig(
        subcommand="check-reduction",
        domain_json=_resolve_domain_or_exit(domain, r, c, alpha),
        generator=generator, seed=seed, out=out, tolerance=tolerance, p=p,
        group_a=group_a, group_phi=group_phi, n_r=n_r, n_theta=n_theta,
    )))


@main.command("hl-bound")
@_common
@click.option("--kernel", default="hlp:1/(x+y)", show_default=True)
@click.option("--p", type=float, default=2.0, show_default=True)
@click.option("--n-random", "n_samples", type=int, default=100, show_default=True)
@click.option("--lower-n", multiple=True, type=float, default=(1000.0,), show_default=True)
def cmd_hl_bound(seed, out, tolerance, kernel, p, n_samples, lower_n):
    sys.exit(run(RunConfig(
        subcommand="hl-bound", kernel=kernel, p=p, n_samples=n_samples,
        lower_n=tuple(lower_n), seed=seed, out=out, tolerance=tolerance,
    )))


@main.command("gl2-demo")
@_common
@click.option("--n-points", "trials", type=int, default=24, show_default=True)
def cmd_gl2_demo(seed, out, tolerance, trials):
    sys.exit(run(RunConfig(
        subcommand="gl2-demo", seed=seed, out=out, tolerance=tolerance, trials=trials,
    )))


@main.command("hb-check")
@_common
@click.option("--degree", "monomial_degree", type=int, default=2, show_default=True)
@click.option("--z-re", type=float, default=0.4, show_default=True)
@click.option("--z-im", type=float, default=0.2, show_default=True)
@click.option("--n-r", type=int, default=64, show_default=True)
@click.option("--n-theta", type=int, default=128, show_default=True)
def cmd_hb_check(seed, out, tolerance, monomial_degree, z_re, z_im, n_r, n_theta):
    sys.exit(run(RunConfig(
        subcommand="hb-check", monomial_degree=monomial_degree,
        z_value=complex(z_re, z_im), n_r=n_r, n_theta=n_theta,
        seed=seed, out=out, tolerance=tolerance,
    )))


@main.command("counterexample")
@_common
@click.option("--n-samples", type=int, default=1000, show_default=True)
def cmd_counterexample(seed, out, tolerance, n_samples):
    sys.exit(run(RunConfig(
        subcommand="counterexample", n_samples=n_samples, seed=seed, out=out,
        tolerance=tolerance,
    )))


def _resolve_domain_or_exit(domain, r, c, alpha):
    try:
        return _resolve_domain(domain, r, c, alpha)
    except (ConfigError, geometry.AdmissibilityError) as exc:
        raise click.UsageError(str(exc))


if __name__ == "__main__":
    main()
