"""Acceptance gate: one test per shipped criterion, at pinned tolerances.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line
per criterion. Two criteria are known-red; the measured behavior and the
mechanism are documented in README.md (Known limitations) and asserted
at their true rates in the module test suites:

* criterion 2: the sup-norm index-law residual converges at first order
  (the first grid node dominates; the inner half-order result has a
  square-root cusp there), not at the pinned 1.5, and the n=256 residual
  is ~5.9e-4, above the pinned 1e-4.
* criterion 3: at fractional orders the conjugation residual converges at
  order ~alpha (piecewise-linear resampling of a u^alpha profile on the
  first image cell), below the pinned 1.0; and the direct constant-probe
  order-1 integral is exact by construction (~1e-15), so its error ratios
  are rounding noise and never land in the pinned [3.2, 4.8] window.
"""

import math
import time

import numpy as np

from fracops.cli import RunConfig, run
from fracops.convalg import (
    ToeplitzKernel,
    algebra_mul,
    cm_root_experiment,
    commutation_residual,
    conv_operator,
    gl_weights,
    titchmarsh_support,
)
from fracops.discretization import SampledFunction, build_grid, lp_norm
from fracops.fracint import continuity_scan, index_law_residual, rl_integrate
from fracops.lcg import Lcg64
from fracops.reports import emit
from fracops.stieltjes import (
    conjugation_residual,
    make_integrator,
    rh_norm_bound_check,
    stieltjes_integrate,
)

INF = math.inf


def _report(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num} ({name}): {'PASS' if ok else 'FAIL'} - {detail}")


def _orders(residuals):
    return [math.log2(a / b) for a, b in zip(residuals, residuals[1:])]


def test_criterion_1_closed_form_half_order_integral():
    start = time.perf_counter()
    g = build_grid(0.0, 1.0, 256)
    f = SampledFunction(g, np.ones(257))
    got = rl_integrate(f, 0.5)
    exact = g.nodes**0.5 / math.gamma(1.5)
    err = float(np.max(np.abs(got.values - exact)))
    elapsed = time.perf_counter() - start
    ok = err <= 1e-12 and elapsed < 1.0
    _report(1, "closed-form half-order integral", ok,
            f"max node error {err:.3e} (tol 1e-12), {elapsed:.2f}s")
    assert err <= 1e-12
    assert elapsed < 1.0


def test_criterion_2_index_law_convergence():
    start = time.perf_counter()
    residuals = []
    for n in (64, 128, 256):
        g = build_grid(0.0, 1.0, n)
        f = SampledFunction.from_callable(g, math.cos)
        residuals.append(index_law_residual(f, 0.5, 0.5, INF))
    orders = _orders(residuals)
    elapsed = time.perf_counter() - start
    decreasing = residuals[0] > residuals[1] > residuals[2]
    ok = decreasing and all(o >= 1.5 for o in orders) and residuals[-1] <= 1e-4
    _report(2, "index law", ok,
            f"residuals {[f'{r:.3e}' for r in residuals]}, "
            f"orders {[f'{o:.3f}' for o in orders]} (need >= 1.5), "
            f"final {residuals[-1]:.3e} (tol 1e-4), {elapsed:.2f}s")
    assert elapsed < 5.0
    assert decreasing
    assert all(o >= 1.5 for o in orders), (
        f"sup-norm orders {orders} are first-order: the residual is dominated"
        " by the first node, where the inner half-order result has a sqrt"
        " cusp that piecewise-linear reconstruction tracks only to O(h)"
    )
    assert residuals[-1] <= 1e-4, f"n=256 residual {residuals[-1]:.3e}"


def test_criterion_3_conjugation_identity():
    start = time.perf_counter()
    details = []
    order_ok = True
    decreasing_ok = True
    measured = {}
    for alpha in (0.5, 0.7, 1.0):
        residuals = []
        for n in (64, 128, 256):
            g = build_grid(0.0, 1.0, n)
            h = make_integrator("exp", g)
            f = SampledFunction.from_callable(g, math.cos)
            residuals.append(conjugation_residual(f, alpha, h, INF))
        orders = _orders(residuals)
        measured[alpha] = (residuals, orders)
        decreasing_ok &= residuals[0] > residuals[1] > residuals[2]
        order_ok &= all(o >= 1.0 for o in orders)
        details.append(f"alpha={alpha}: orders {[f'{o:.3f}' for o in orders]}")

    # order-1 constant probe against the closed form h(t) - h(a)
    direct_errs = []
    for n in (64, 128, 256):
        g = build_grid(0.0, 1.0, n)
        h = make_integrator("exp", g)
        one = SampledFunction(g, np.ones(n + 1))
        got = stieltjes_integrate(one, 1.0, h)
        direct_errs.append(float(np.max(np.abs(got.values - (np.exp(g.nodes) - 1.0)))))
    ratios = [a / b for a, b in zip(direct_errs, direct_errs[1:])]
    ratio_ok = all(3.2 <= r <= 4.8 for r in ratios)
    elapsed = time.perf_counter() - start

    ok = decreasing_ok and order_ok and ratio_ok
    _report(3, "conjugation identity", ok,
            "; ".join(details) + f"; order-1 errors {[f'{e:.2e}' for e in direct_errs]}"
            f" ratios {[f'{r:.2f}' for r in ratios]} (need [3.2,4.8]), {elapsed:.2f}s")
    assert elapsed < 10.0
    assert decreasing_ok
    assert order_ok, (
        f"fractional orders converge at ~alpha, not 1: {measured}"
        " (first image cell limits the piecewise-linear bridge)"
    )
    assert ratio_ok, (
        f"direct order-1 constant-probe integral is exact by construction;"
        f" errors {direct_errs} are rounding noise, ratios {ratios}"
    )


def test_criterion_4_root_uniqueness():
    start = time.perf_counter()
    counts = {}
    worst_match = 0.0
    worst_recompose = 0.0
    for m in (2, 3, 4):
        rep = cm_root_experiment(64, 1.0 / 64, m)
        counts[m] = rep.root_count
        worst_match = max(worst_match, rep.match_error)
        worst_recompose = max(worst_recompose, *rep.recompose_errors)
    elapsed = time.perf_counter() - start
    ok = (
        counts == {2: 2, 3: 1, 4: 2}
        and worst_match <= 1e-10
        and worst_recompose <= 1e-10
        and elapsed < 1.0
    )
    _report(4, "plus/minus root uniqueness", ok,
            f"counts {counts}, match {worst_match:.2e}, "
            f"recompose {worst_recompose:.2e} (tol 1e-10), {elapsed:.2f}s")
    assert counts == {2: 2, 3: 1, 4: 2}
    assert worst_match <= 1e-10
    assert worst_recompose <= 1e-10
    assert elapsed < 1.0


def test_criterion_5_support_behavior():
    start = time.perf_counter()
    g = build_grid(0.0, 1.0, 400)
    h = g.spacing
    f = SampledFunction.from_callable(g, lambda t: max(0.0, t - 0.25))
    k = SampledFunction.from_callable(g, lambda t: max(0.0, t - 0.3))
    profile, conv_start = titchmarsh_support(f, k, 1e-12)
    window_ok = 0.55 - h - 1e-12 <= conv_start <= 0.55 + h + 1e-12

    rng = Lcg64()
    addition_ok = True
    for _ in range(100):
        off_f = 0.4 * rng.uniform()
        off_g = 0.4 * rng.uniform()
        rf = SampledFunction.from_callable(g, lambda t: max(0.0, t - off_f))
        rg = SampledFunction.from_callable(g, lambda t: max(0.0, t - off_g))
        p, cs = titchmarsh_support(rf, rg)
        addition_ok &= cs >= g.a + p.lam + p.mu - h - 1e-12
    elapsed = time.perf_counter() - start
    ok = window_ok and addition_ok and elapsed < 5.0
    _report(5, "support behavior", ok,
            f"conv_start {conv_start:.6f} in [0.55-h, 0.55+h], "
            f"100 seeded pairs respect support addition, {elapsed:.2f}s")
    assert window_ok, f"conv_start {conv_start} outside window"
    assert addition_ok
    assert elapsed < 5.0


def test_criterion_6_continuity_scan():
    start = time.perf_counter()
    g = build_grid(0.0, 1.0, 64)
    probe = SampledFunction(g, np.ones(65))
    max_gaps = []
    for step in (0.01, 0.005):
        alphas = np.linspace(0.5, 1.5, int(round(1.0 / step)) + 1)
        gaps = continuity_scan(probe, alphas, INF)
        assert all(math.isfinite(v) for _, v in gaps)
        max_gaps.append(max(v for _, v in gaps))
    factor = max_gaps[0] / max_gaps[1]
    elapsed = time.perf_counter() - start
    ok = max_gaps[0] <= 0.2 and 1.5 <= factor <= 2.5 and elapsed < 30.0
    _report(6, "continuity in the order", ok,
            f"max gap {max_gaps[0]:.4f} (tol 0.2), halving factor {factor:.3f}"
            f" (window [1.5, 2.5]), {elapsed:.2f}s")
    assert max_gaps[0] <= 0.2
    assert 1.5 <= factor <= 2.5
    assert elapsed < 30.0


def test_criterion_7_substitution_norm_bound():
    start = time.perf_counter()
    g = build_grid(0.0, 1.0, 128)
    h = make_integrator("exp", g)
    img = build_grid(*h.image, 128)
    rng = Lcg64()
    holds = []
    for _ in range(50):
        values = np.array([2.0 * rng.uniform() - 1.0 for _ in range(129)])
        holds.append(rh_norm_bound_check(SampledFunction(img, values), h).holds)
    elapsed = time.perf_counter() - start
    ok = all(holds) and elapsed < 2.0
    _report(7, "substitution norm bound", ok,
            f"{sum(holds)}/50 seeded probes within (1/m)||f||_1 + 1e-8, "
            f"{elapsed:.2f}s")
    assert all(holds)
    assert elapsed < 2.0


def test_criterion_8_algebra_exactness():
    start = time.perf_counter()
    rng = np.random.default_rng(0x5EED)
    worst_comm = 0.0
    for _ in range(100):
        x = ToeplitzKernel(rng.normal(size=20), 1.0 / 20)
        y = ToeplitzKernel(rng.normal(size=20), 1.0 / 20)
        worst_comm = max(worst_comm, commutation_residual(conv_operator(x), y, INF))
    worst_law = 0.0
    for _ in range(20):
        a = float(rng.uniform(0.2, 3.0))
        b = float(rng.uniform(0.2, 3.0))
        prod = algebra_mul(gl_weights(a, 64, 1.0 / 64), gl_weights(b, 64, 1.0 / 64))
        direct = gl_weights(a + b, 64, 1.0 / 64)
        worst_law = max(worst_law, float(np.max(np.abs(prod.coeffs - direct.coeffs))))
    elapsed = time.perf_counter() - start
    ok = worst_comm <= 1e-12 and worst_law <= 1e-10 and elapsed < 5.0
    _report(8, "algebra exactness", ok,
            f"commutation {worst_comm:.2e} (tol 1e-12), "
            f"index-law coefficients {worst_law:.2e} (tol 1e-10), {elapsed:.2f}s")
    assert worst_comm <= 1e-12
    assert worst_law <= 1e-10
    assert elapsed < 5.0


def test_criterion_9_cli_determinism():
    configs = [
        RunConfig(command="integrate", probe="one", alpha=1.0, n=16),
        RunConfig(command="stieltjes", probe="one", alpha=0.5, n=16),
        RunConfig(command="verify-index-law", probe="cos", alpha=0.5, beta=0.5,
                  n=32, refine=1),
        RunConfig(command="verify-conjugation", probe="cos", alpha=1.0, n=32,
                  refine=1),
        RunConfig(command="verify-titchmarsh", n=100),
        RunConfig(command="continuity-scan", alpha=0.5, beta=1.0, n=24, refine=1),
        RunConfig(command="roots", n=64, m=2),
        RunConfig(command="norm-bound", n=48),
    ]
    all_same = True
    for cfg in configs:
        for fmt in ("csv", "json"):
            r1, c1 = run(cfg)
            r2, c2 = run(cfg)
            same = emit(r1, fmt) == emit(r2, fmt) and c1 == c2
            all_same &= same
            assert same, f"{cfg.command} ({fmt}) not byte-identical"
    _report(9, "CLI determinism", all_same,
            f"{len(configs)} studies x 2 formats byte-identical on rerun")
    assert all_same
