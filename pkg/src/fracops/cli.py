"""Deterministic command-line harness for the verification studies.

Every study is a pure function of its RunConfig (including the seed), so
rerunning a command yields byte-identical CSV/JSON output. Exit codes:
0 when the study's invariants hold, 1 when a numerical invariant fails,
2 on configuration errors.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import convalg, fracint, stieltjes
from .discretization import Grid, SampledFunction, build_grid
from .gammafn import gamma
from .lcg import DEFAULT_SEED, Lcg64
from .reports import Report, ReportRow, emit, empirical_orders, format_float
from .stieltjes import INTEGRATOR_NAMES, Integrator, make_integrator

COMMANDS = (
    "integrate",
    "stieltjes",
    "verify-index-law",
    "verify-conjugation",
    "verify-titchmarsh",
    "continuity-scan",
    "roots",
    "norm-bound",
)

PROBE_NAMES = ("one", "id", "square", "cos", "exp", "ramp")

NORM_CHOICES = {"1": 1.0, "2": 2.0, "inf": math.inf}

TITCHMARSH_TRIALS = 100
NORM_BOUND_TRIALS = 50

# Base order step for continuity scans; halved once per refinement row.
SCAN_BASE_STEP = 0.01

# Study invariant thresholds (shared with the acceptance suite).
INDEX_LAW_MIN_ORDER = 1.5
CONJUGATION_MIN_ORDER = 1.0
ROOTS_TOL = 1e-10
GAP_HALVING_WINDOW = (1.5, 2.5)

# Residuals at or below this are machine agreement; order checks on them
# would only measure rounding noise.
AGREEMENT_FLOOR = 1e-12

_FLOAT_SLACK = 1e-12


class ConfigError(Exception):
    """Invalid run configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    a: float = 0.0
    b: float = 1.0
    n: int = 64
    alpha: float = 0.5
    beta: Optional[float] = None
    integrator: str = "exp"
    probe: Optional[str] = None
    probe2: Optional[str] = None
    norm: str = "inf"
    seed: int = DEFAULT_SEED
    output: str = "csv"
    refine: int = 2
    m: int = 2
    out_file: Optional[str] = None
    fig_dir: Optional[str] = None


def _parse_probe(selector: str) -> Callable[[float], float]:
    name, _, arg_text = selector.partition(":")
    if name == "one":
        return lambda t: 1.0
    if name == "id":
        return lambda t: t
    if name == "square":
        return lambda t: t * t
    if name == "cos":
        return math.cos
    if name == "exp":
        return math.exp
    if name == "ramp":
        if not arg_text:
            raise ConfigError(
                "probe 'ramp' needs an offset, e.g. ramp:0.25;"
                f" valid probes: {', '.join(PROBE_NAMES)}"
            )
        offset = float(arg_text)
        return lambda t: max(0.0, t - offset)
    raise ConfigError(
        f"unknown probe {name!r}; valid probes: {', '.join(PROBE_NAMES)}"
    )


def _rl_closed_form(
    probe_sel: str, a: float, alpha: float
) -> Optional[Callable[[float], float]]:
    """Exact order-alpha integral of the polynomial probes (none for the
    transcendental ones)."""
    name = probe_sel.partition(":")[0]
    g1 = gamma(alpha + 1.0)
    g2 = gamma(alpha + 2.0)
    g3 = gamma(alpha + 3.0)
    if name == "one":
        return lambda t: (t - a) ** alpha / g1
    if name == "id":
        return lambda t: a * (t - a) ** alpha / g1 + (t - a) ** (alpha + 1.0) / g2
    if name == "square":
        return lambda t: (
            a * a * (t - a) ** alpha / g1
            + 2.0 * a * (t - a) ** (alpha + 1.0) / g2
            + 2.0 * (t - a) ** (alpha + 2.0) / g3
        )
    return None


def _norm_order(cfg: RunConfig) -> float:
    try:
        return NORM_CHOICES[cfg.norm]
    except KeyError:
        raise ConfigError(
            f"unknown norm {cfg.norm!r}; valid norms: 1, 2, inf"
        ) from None


def _check_common(cfg: RunConfig) -> None:
    if cfg.command not in COMMANDS:
        raise ConfigError(
            f"unknown command {cfg.command!r}; valid commands: {', '.join(COMMANDS)}"
        )
    if not cfg.a < cfg.b:
        raise ConfigError(f"need a < b, got a={cfg.a}, b={cfg.b}")
    if cfg.n < 2:
        raise ConfigError(f"need n >= 2, got {cfg.n}")
    if cfg.refine < 0:
        raise ConfigError(f"refine must be non-negative, got {cfg.refine}")
    if not 0 <= cfg.seed < 2**64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    if cfg.output not in ("csv", "json"):
        raise ConfigError(f"unknown output {cfg.output!r}; valid: csv, json")
    _norm_order(cfg)


def _check_alpha(value: float, label: str = "alpha") -> float:
    try:
        return fracint.check_order(value)
    except ValueError as exc:
        raise ConfigError(f"bad {label}: {exc}") from None


def _sample(grid: Grid, probe_sel: str) -> SampledFunction:
    return SampledFunction.from_callable(grid, _parse_probe(probe_sel))


def _make_integrator(cfg: RunConfig, grid: Grid) -> Integrator:
    try:
        return make_integrator(cfg.integrator, grid)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _study_integrate(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    alpha = _check_alpha(cfg.alpha)
    probe_sel = cfg.probe or "cos"
    grid = build_grid(cfg.a, cfg.b, cfg.n)
    f = _sample(grid, probe_sel)
    result = fracint.rl_integrate(f, alpha)
    oracle = _rl_closed_form(probe_sel, cfg.a, alpha)
    rows = []
    for t, value in zip(grid.nodes, result.values):
        residual = None if oracle is None else abs(value - oracle(t))
        rows.append(
            ReportRow(
                n=cfg.n,
                h=grid.spacing,
                residual=residual,
                extra={"t": format_float(t), "value": format_float(value)},
            )
        )
    return rows, True


def _study_stieltjes(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    alpha = _check_alpha(cfg.alpha)
    probe_sel = cfg.probe or "cos"
    grid = build_grid(cfg.a, cfg.b, cfg.n)
    h = _make_integrator(cfg, grid)
    f = _sample(grid, probe_sel)
    result = stieltjes.stieltjes_integrate(f, alpha, h)

    oracle = None
    if probe_sel.partition(":")[0] == "one":
        ha = h.fn(cfg.a)
        g1 = gamma(alpha + 1.0)
        oracle = lambda t: (h.fn(t) - ha) ** alpha / g1  # noqa: E731
    elif cfg.integrator == "id":
        oracle = _rl_closed_form(probe_sel, cfg.a, alpha)

    rows = []
    for t, value in zip(grid.nodes, result.values):
        residual = None if oracle is None else abs(value - oracle(t))
        rows.append(
            ReportRow(
                n=cfg.n,
                h=grid.spacing,
                residual=residual,
                extra={"t": format_float(t), "value": format_float(value)},
            )
        )
    return rows, True


def _refined_sizes(cfg: RunConfig) -> list[int]:
    return [cfg.n * 2**j for j in range(cfg.refine + 1)]


def _study_index_law(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    alpha = _check_alpha(cfg.alpha)
    beta = _check_alpha(cfg.beta if cfg.beta is not None else cfg.alpha, "beta")
    _check_alpha(alpha + beta, "alpha+beta")
    probe_sel = cfg.probe or "cos"
    p = _norm_order(cfg)
    residuals = []
    sizes = _refined_sizes(cfg)
    for n in sizes:
        f = _sample(build_grid(cfg.a, cfg.b, n), probe_sel)
        residuals.append(fracint.index_law_residual(f, alpha, beta, p))
    orders = empirical_orders(residuals)
    rows = [
        ReportRow(
            n=n,
            h=(cfg.b - cfg.a) / n,
            residual=r,
            empirical_order=o,
            extra={
                "alpha": format_float(alpha),
                "beta": format_float(beta),
                "norm": cfg.norm,
            },
        )
        for n, r, o in zip(sizes, residuals, orders)
    ]
    if max(residuals) <= AGREEMENT_FLOOR:
        ok = True
    else:
        ok = all(o is not None and o >= INDEX_LAW_MIN_ORDER for o in orders[1:])
    return rows, ok


def _study_conjugation(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    alpha = _check_alpha(cfg.alpha)
    probe_sel = cfg.probe or "cos"
    p = _norm_order(cfg)
    sizes = _refined_sizes(cfg)
    residuals = []
    direct_errs = []
    for n in sizes:
        grid = build_grid(cfg.a, cfg.b, n)
        h = _make_integrator(cfg, grid)
        f = _sample(grid, probe_sel)
        residuals.append(stieltjes.conjugation_residual(f, alpha, h, p))
        if probe_sel.partition(":")[0] == "one":
            direct = stieltjes.stieltjes_integrate(f, alpha, h)
            ha = h.fn(cfg.a)
            exact = (np.array([h.fn(t) for t in grid.nodes]) - ha) ** alpha / gamma(
                alpha + 1.0
            )
            direct_errs.append(float(np.max(np.abs(direct.values - exact))))
        else:
            direct_errs.append(None)
    orders = empirical_orders(residuals)
    rows = []
    for n, r, o, derr in zip(sizes, residuals, orders, direct_errs):
        extra = {
            "alpha": format_float(alpha),
            "integrator": cfg.integrator,
            "norm": cfg.norm,
        }
        if derr is not None:
            extra["direct_err"] = format_float(derr)
        rows.append(
            ReportRow(n=n, h=(cfg.b - cfg.a) / n, residual=r, empirical_order=o, extra=extra)
        )
    if max(residuals) <= AGREEMENT_FLOOR:
        ok = True
    else:
        decreasing = all(r1 > r2 for r1, r2 in zip(residuals, residuals[1:]))
        ok = decreasing and all(
            o is not None and o >= CONJUGATION_MIN_ORDER for o in orders[1:]
        )
    return rows, ok


def _titchmarsh_trial(
    grid: Grid, off_f: float, off_g: float
) -> tuple[convalg.SupportProfile, float]:
    f = SampledFunction.from_callable(grid, lambda t: max(0.0, t - off_f))
    g = SampledFunction.from_callable(grid, lambda t: max(0.0, t - off_g))
    return convalg.titchmarsh_support(f, g)


def _study_titchmarsh(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    grid = build_grid(cfg.a, cfg.b, cfg.n)
    probe_sel = cfg.probe or "ramp:0.25"
    probe2_sel = cfg.probe2 or "ramp:0.3"
    f = _sample(grid, probe_sel)
    g = _sample(grid, probe2_sel)
    profile, conv_start = convalg.titchmarsh_support(f, g)
    floor = grid.a + profile.lam + profile.mu - grid.spacing

    def _row(profile, conv_start, extra):
        extra = dict(extra)
        extra["lambda"] = format_float(profile.lam)
        extra["mu"] = format_float(profile.mu)
        extra["conv_start"] = format_float(conv_start)
        return ReportRow(
            n=cfg.n,
            h=grid.spacing,
            residual=conv_start - (grid.a + profile.lam + profile.mu),
            extra=extra,
        )

    rows = [_row(profile, conv_start, {"probe": probe_sel, "probe2": probe2_sel})]
    ok = conv_start >= floor - _FLOAT_SLACK * (cfg.b - cfg.a)

    rng = Lcg64(cfg.seed)
    span = cfg.b - cfg.a
    for trial in range(TITCHMARSH_TRIALS):
        off_f = cfg.a + rng.uniform() * 0.4 * span
        off_g = cfg.a + rng.uniform() * 0.4 * span
        t_profile, t_start = _titchmarsh_trial(grid, off_f, off_g)
        t_floor = grid.a + t_profile.lam + t_profile.mu - grid.spacing
        ok = ok and t_start >= t_floor - _FLOAT_SLACK * span
        rows.append(
            _row(
                t_profile,
                t_start,
                {
                    "trial": str(trial),
                    "off_f": format_float(off_f),
                    "off_g": format_float(off_g),
                },
            )
        )
    return rows, ok


def _study_continuity(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    lo = _check_alpha(cfg.alpha)
    hi = cfg.beta if cfg.beta is not None else 1.5
    if not lo < hi:
        raise ConfigError(f"scan range needs alpha < beta, got [{lo}, {hi}]")
    grid = build_grid(cfg.a, cfg.b, cfg.n)
    probe = SampledFunction(grid, np.ones(grid.node_count))
    p = _norm_order(cfg)

    max_gaps = []
    steps = []
    for level in range(cfg.refine + 1):
        step = SCAN_BASE_STEP / 2**level
        count = int(round((hi - lo) / step))
        alphas = np.linspace(lo, hi, count + 1)
        try:
            gaps = fracint.continuity_scan(probe, alphas, p)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        max_gaps.append(max(g for _, g in gaps))
        steps.append(step)

    orders = empirical_orders(max_gaps)
    rows = [
        ReportRow(
            n=cfg.n,
            h=grid.spacing,
            residual=gap,
            empirical_order=o,
            extra={
                "step": format_float(step),
                "alpha_lo": format_float(lo),
                "alpha_hi": format_float(hi),
                "norm": cfg.norm,
            },
        )
        for step, gap, o in zip(steps, max_gaps, orders)
    ]
    ok = all(math.isfinite(g) for g in max_gaps)
    for g1, g2 in zip(max_gaps, max_gaps[1:]):
        factor = g1 / g2 if g2 > 0 else math.inf
        ok = ok and GAP_HALVING_WINDOW[0] <= factor <= GAP_HALVING_WINDOW[1]
    return rows, ok


def _study_roots(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    if cfg.m < 2:
        raise ConfigError(f"roots study needs m >= 2, got {cfg.m}")
    grid_h = (cfg.b - cfg.a) / cfg.n
    report = convalg.cm_root_experiment(cfg.n, grid_h, cfg.m)
    extra = {
        "m": str(report.m),
        "root_count": str(report.root_count),
        "match_error": format_float(report.match_error),
        "recompose_error_max": format_float(max(report.recompose_errors)),
    }
    for i, root in enumerate(report.roots):
        extra[f"root_lead_{i}"] = format_float(float(root.coeffs[0]))
        extra[f"square_lead_{i}"] = format_float(report.square_leading_coeffs[i])
        extra[f"is_square_{i}"] = str(report.is_square[i]).lower()
    rows = [ReportRow(n=cfg.n, h=grid_h, residual=report.match_error, extra=extra)]
    expected_count = 2 if cfg.m % 2 == 0 else 1
    ok = (
        report.root_count == expected_count
        and report.match_error <= ROOTS_TOL
        and max(report.recompose_errors) <= ROOTS_TOL
        and all(lead >= 0.0 for lead in report.square_leading_coeffs)
        and sum(report.is_square) == 1
    )
    return rows, ok


def _study_norm_bound(cfg: RunConfig) -> tuple[list[ReportRow], bool]:
    grid = build_grid(cfg.a, cfg.b, cfg.n)
    h = _make_integrator(cfg, grid)
    ha, hb = h.image
    image_grid = build_grid(ha, hb, cfg.n)
    rng = Lcg64(cfg.seed)
    rows = []
    ok = True
    for trial in range(NORM_BOUND_TRIALS):
        values = np.array(
            [2.0 * rng.uniform() - 1.0 for _ in range(image_grid.node_count)]
        )
        f = SampledFunction(image_grid, values)
        check = stieltjes.rh_norm_bound_check(f, h)
        ok = ok and check.holds
        rows.append(
            ReportRow(
                n=cfg.n,
                h=grid.spacing,
                residual=max(check.lhs - check.rhs, 0.0),
                extra={
                    "trial": str(trial),
                    "lhs": format_float(check.lhs),
                    "rhs": format_float(check.rhs),
                    "holds": str(check.holds).lower(),
                    "min_slope": format_float(h.min_slope),
                },
            )
        )
    return rows, ok


_STUDIES = {
    "integrate": _study_integrate,
    "stieltjes": _study_stieltjes,
    "verify-index-law": _study_index_law,
    "verify-conjugation": _study_conjugation,
    "verify-titchmarsh": _study_titchmarsh,
    "continuity-scan": _study_continuity,
    "roots": _study_roots,
    "norm-bound": _study_norm_bound,
}


def run(config: RunConfig) -> tuple[Report, int]:
    """Execute a study. Returns the report and exit code 0/1; raises
    ConfigError (exit code 2 at the CLI surface) on bad configuration."""
    _check_common(config)
    start = time.perf_counter()
    rows, ok = _STUDIES[config.command](config)
    wall_ms = 1000.0 * (time.perf_counter() - start)
    report = Report(command=config.command, rows=rows, wall_time_ms=wall_ms)
    return report, 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracops",
        description="Deterministic verification studies for fractional "
        "integral operators and the discrete convolution algebra.",
    )
    parser.add_argument("--command", required=True, help="|".join(COMMANDS))
    parser.add_argument("--a", type=float, default=0.0)
    parser.add_argument("--b", type=float, default=1.0)
    parser.add_argument("--n", type=int, default=64)
    parser.add_argument("--alpha", type=float, default=0.5)
    parser.add_argument("--beta", type=float, default=None)
    parser.add_argument("--integrator", default="exp", help='e.g. "exp", "affine:2,3"')
    parser.add_argument("--probe", default=None, help='e.g. "cos", "ramp:0.25"')
    parser.add_argument("--probe2", default=None, help="second probe (titchmarsh)")
    parser.add_argument("--norm", default="inf", help="1|2|inf")
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    parser.add_argument("--output", default="csv", help="csv|json")
    parser.add_argument("--refine", type=int, default=2)
    parser.add_argument("--m", type=int, default=2, help="root order (roots study)")
    parser.add_argument("--out-file", default=None)
    parser.add_argument("--fig-dir", default=None, help="render figures here")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        a=args.a,
        b=args.b,
        n=args.n,
        alpha=args.alpha,
        beta=args.beta,
        integrator=args.integrator,
        probe=args.probe,
        probe2=args.probe2,
        norm=args.norm,
        seed=args.seed,
        output=args.output,
        refine=args.refine,
        m=args.m,
        out_file=args.out_file,
        fig_dir=args.fig_dir,
    )
    try:
        report, code = run(config)
    except ConfigError as exc:
        print(f"fracops: configuration error: {exc}", file=sys.stderr)
        return 2

    payload = emit(report, config.output)
    try:
        if config.out_file:
            with open(config.out_file, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.buffer.flush()
    except OSError as exc:
        print(f"fracops: cannot write output: {exc}", file=sys.stderr)
        return 2

    if config.fig_dir:
        from .figures import render_report

        for path in render_report(report, config.fig_dir):
            print(f"fracops: wrote figure {path}", file=sys.stderr)

    print(
        f"fracops: {config.command} finished in {report.wall_time_ms:.1f} ms,"
        f" exit={code}",
        file=sys.stderr,
    )
    return code


if __name__ == "__main__":
    sys.exit(main())
