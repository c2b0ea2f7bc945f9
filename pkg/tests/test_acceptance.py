"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
All quantitative reproduction targets use published parameters and synthetic
oracles; tolerances are stated inline and never loosened at runtime.
"""

import json
import math

import numpy as np
import pytest

import hypergrowth as hg
from hypergrowth import _kernels
from hypergrowth.cli import main
from conftest import (
    ALL_ROWS,
    DATA_DIR,
    GROWTH_RATE_CHECKS,
    POPULATION_MODELS,
    REFERENCE_ROWS,
    SPEED_RATIO_CHECKS,
    acceptance_step,
    africa_composite,
    lookup_model,
    population_bridge,
    row_by_name,
    synth,
    takeoff_control,
)


def announce(number: int, label: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"[{status}] criterion {number}: {label}")
    for f in failures:
        print(f"       - {f}")
    assert not failures, f"criterion {number}: {label}: {failures}"


def test_criterion_01_singularity_reproduction():
    failures = []
    for row in REFERENCE_ROWS:
        got = hg.singularity_time(row.model)
        if abs(got - row.singularity) > 1.0:
            failures.append(f"{row.name}: {got:.2f} vs {row.singularity}")
    announce(1, "singularity matches the published column within +/- 1 year", failures)


def test_criterion_02_proximity_reproduction():
    failures = []
    rows = [r for r in REFERENCE_ROWS if r.proximity is not None]
    assert len(rows) == 8
    for row in rows:
        got = hg.proximity(row.model, row.departure)
        if abs(got - row.proximity) > 1.0:
            failures.append(f"{row.name}: {got:.2f} vs {row.proximity}")
    announce(2, "singularity minus departure year reproduces proximity (+/- 1 year)",
             failures)


def test_criterion_03_growth_rate_reproduction():
    failures = []
    for key, year, published in GROWTH_RATE_CHECKS:
        got = hg.growth_rate(POPULATION_MODELS[key].model, year)
        rel = abs(got - published) / published
        if rel > 0.005:
            failures.append(f"{key}@{year}: {got:.4e} vs {published:.4e} ({rel:.2%})")
    announce(3, "published growth rates reproduced within 0.5% relative", failures)


def test_criterion_04_speed_ratios():
    failures = []
    for fast_key, slow_key, published, tol in SPEED_RATIO_CHECKS:
        got = hg.speed_ratio(lookup_model(fast_key), lookup_model(slow_key))
        if abs(got - published) > tol:
            failures.append(f"{fast_key}/{slow_key}: {got:.3f} vs {published}")
    announce(4, "k-ratios 6.5 / 4.2 / 3.9 within +/- 0.05", failures)


def test_criterion_05_round_trip_fit_recovery():
    failures = []
    for row in ALL_ROWS:
        clean = hg.fit_hyperbolic(synth(row)).model
        if abs(clean.a - row.a) > 1e-9 * abs(row.a) or abs(clean.k - row.k) > 1e-9 * abs(row.k):
            failures.append(f"{row.name}: noiseless recovery off ({clean})")
        noisy = hg.fit_hyperbolic(synth(row, noise_rel=0.02, seed=42)).model
        rel_k = abs(noisy.k - row.k) / abs(row.k)
        if rel_k > 0.015:
            failures.append(f"{row.name}: noisy k off by {rel_k:.3%}")
    announce(5, "fit recovers (a, k) to 1e-9 noiseless and k to 1.5% at 2% noise",
             failures)


def test_criterion_06_model_discrimination():
    failures = []
    for row in ALL_ROWS:
        hyp_series = synth(row)
        cmp_h = hg.compare_models(hyp_series)
        if cmp_h.preferred != "hyperbolic" or not cmp_h.ratio > 10:
            failures.append(f"{row.name}: hyperbolic data verdict {cmp_h.preferred} "
                            f"ratio {cmp_h.ratio:.2f}")
        # Exponential twin with matched endpoints over the same window.
        s0 = hg.hyperbolic_value(row.model, row.t_lo)
        s1 = hg.hyperbolic_value(row.model, row.t_hi)
        k_exp = math.log(s1 / s0) / (row.t_hi - row.t_lo)
        exp_model = hg.ExponentialModel(s0 * math.exp(-k_exp * row.t_lo), k_exp)
        exp_series = hg.generate(
            hg.SyntheticSpec(exp_model, row.t_lo, row.t_hi, acceptance_step(row))
        )
        cmp_e = hg.compare_models(exp_series)
        inv_ratio = (
            math.inf
            if cmp_e.sse_direct_exponential == 0.0
            else cmp_e.sse_direct_hyperbolic / cmp_e.sse_direct_exponential
        )
        if cmp_e.preferred != "exponential" or not inv_ratio > 10:
            failures.append(f"{row.name}: exponential data verdict {cmp_e.preferred} "
                            f"ratio {inv_ratio:.2f}")
    announce(6, "compare_models discriminates both families with SSE ratio > 10",
             failures)


def test_criterion_07_segmentation():
    failures = []
    res = hg.segment(africa_composite(), max_segments=3)
    if len(res.segments) != 2:
        failures.append(f"africa composite: {len(res.segments)} segments")
    else:
        if abs(res.breakpoints[0] - 1820.0) > 25.0:
            failures.append(f"africa breakpoint {res.breakpoints[0]}")
        slow, fast = (seg.fit.model for seg in res.segments)
        for got, want, tag in (
            (slow.a, 1.244e-1, "slow a"), (slow.k, 5.030e-5, "slow k"),
            (fast.a, 4.192e-1, "fast a"), (fast.k, 2.126e-4, "fast k"),
        ):
            if abs(got - want) > 0.01 * want:
                failures.append(f"africa {tag}: {got:.4e} vs {want:.4e}")

    for name in ("western-europe", "asia", "former-ussr"):
        single = hg.segment(synth(row_by_name(name), step=10.0), max_segments=3)
        if len(single.segments) != 1:
            failures.append(f"{name}: spurious split into {len(single.segments)}")

    bridge = hg.segment(population_bridge(), max_segments=2)
    if len(bridge.segments) != 2:
        failures.append(f"bridge: {len(bridge.segments)} segments")
    else:
        lo, hi = bridge.transitions[0].window
        if not (lo < 1400.0 and hi > 1200.0):
            failures.append(f"bridge transition window [{lo}, {hi}]")
    announce(7, "segmentation recovers the 1820 break, single models, bridge window",
             failures)


def test_criterion_08_takeoff_negative_and_control():
    failures = []
    for row in ALL_ROWS:
        step = min(10.0, (row.t_hi - row.t_lo) / 120.0)
        verdict = hg.detect_takeoff(synth(row, step=step))
        if verdict.found:
            failures.append(f"{row.name}: false takeoff at {verdict.t}")
    control = hg.detect_takeoff(takeoff_control())
    if not control.found:
        failures.append("positive control not detected")
    elif abs(control.t - 1750.0) > 25.0:
        failures.append(f"positive control at {control.t}")
    announce(8, "no takeoff on any pure hyperbolic segment; control at 1750 +/- 25",
             failures)


def test_criterion_09_ratio_properties():
    failures = []
    gdp = row_by_name("world-gdp").model
    pop = POPULATION_MODELS["ad-late"].model
    ratio = hg.build_ratio(gdp, pop, t_lo=1000.0, t_hi=1950.0)

    verdict = hg.ratio_monotonicity(ratio)
    if verdict.discriminant <= 0 or verdict.monotone != "increasing":
        failures.append(f"verdict {verdict}")
    grid = np.linspace(1000.0, 1950.0, 5000)
    diffs = np.diff(hg.ratio_value(ratio, grid))
    if not np.all(diffs > 0):
        failures.append(f"{int(np.sum(diffs <= 0))} non-increasing consecutive pairs")

    rng = np.random.default_rng(2024)
    h = 1e-3
    for t in rng.uniform(1000.0 + 1.0, 1950.0 - 1.0, size=100):
        fd = (
            math.log(hg.ratio_value(ratio, t + h))
            - math.log(hg.ratio_value(ratio, t - h))
        ) / (2 * h)
        rate = hg.ratio_growth_rate(ratio, t)
        if abs(rate - fd) > 1e-8 * abs(fd):
            failures.append(f"log-derivative mismatch at t={t:.1f}")
            break
    announce(9, "world ratio increasing, 100-point log-derivative check at 1e-8",
             failures)


def test_criterion_10_milestone_consistency():
    failures = []
    m = POPULATION_MODELS["ad-late"].model
    t1 = hg.milestone_time(m, 1.0)
    if not (1800.0 <= t1 <= 1830.0):
        failures.append(f"1-billion crossing at {t1:.1f}")
    for level in (1.0, 2.0, 5.0):
        back = hg.hyperbolic_value(m, hg.milestone_time(m, level))
        if abs(back - level) > 1e-12 * level:
            failures.append(f"inverse mismatch at level {level}")
    announce(10, "1-billion crossing in [1800, 1830]; exact inverse to 1e-12", failures)


def test_criterion_11_equivariance_suite():
    failures = []
    rng = np.random.default_rng(12345)
    rel = 1e-9
    for i in range(100):
        k = 10.0 ** rng.uniform(-6.0, -2.0)
        t_sing = rng.uniform(500.0, 3000.0)
        m = hg.HyperbolicModel(k * t_sing, k)
        t_hi = t_sing - rng.uniform(5.0, 200.0)
        t_lo = t_hi - rng.uniform(100.0, 1500.0)
        years = np.linspace(t_lo, t_hi, 40)
        series = hg.TimeSeries(years, 1.0 / (m.a - m.k * years))

        c = 10.0 ** rng.uniform(-3.0, 3.0)
        tau = rng.uniform(-500.0, 500.0)

        # growthmodels equivariances
        scaled_m = hg.HyperbolicModel(m.a / c, m.k / c)
        shifted_m = hg.HyperbolicModel(m.a - m.k * tau, m.k)
        level = hg.hyperbolic_value(m, 0.5 * (t_lo + t_hi))
        checks = [
            (hg.singularity_time(scaled_m), hg.singularity_time(m)),
            (hg.singularity_time(shifted_m), hg.singularity_time(m) - tau),
            (hg.hyperbolic_value(scaled_m, t_hi), c * hg.hyperbolic_value(m, t_hi)),
            (hg.hyperbolic_value(shifted_m, t_hi - tau), hg.hyperbolic_value(m, t_hi)),
            (hg.speed_ratio(scaled_m, scaled_m), 1.0),
        ]
        if m.a > 0 and 1.0 / level < m.a:
            checks.append(
                (hg.milestone_time(scaled_m, c * level), hg.milestone_time(m, level))
            )

        # fitting equivariances
        fit0 = hg.fit_hyperbolic(series).model
        fit_c = hg.fit_hyperbolic(hg.TimeSeries(years, series.values * c)).model
        fit_t = hg.fit_hyperbolic(hg.TimeSeries(years + tau, series.values)).model
        checks += [
            (fit_c.a, fit0.a / c),
            (fit_c.k, fit0.k / c),
            (fit_t.k, fit0.k),
            (fit_t.a, fit0.a + fit0.k * tau),
            (hg.singularity_time(fit_t), hg.singularity_time(fit0) + tau),
        ]
        for got, want in checks:
            denom = max(abs(want), 1e-300)
            if abs(got - want) / denom > rel:
                failures.append(f"model {i}: {got!r} vs {want!r}")
                break
        if failures:
            break
    announce(11, "unit-scale and time-shift equivariances at 1e-9 over 100 models",
             failures)


def test_criterion_12_determinism(tmp_path):
    failures = []

    # Byte-identical CLI outputs across two runs (stdout + JSON + files).
    import contextlib
    import io

    def run(argv):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(argv)
        return code, buf.getvalue()

    world = str(DATA_DIR / "world_gdp.csv")
    africa = str(DATA_DIR / "africa_gdp_composite.csv")
    for tag, argv in {
        "fit": ["fit", "--input", world, "--unit", "gdp-billions"],
        "segment": ["segment", "--input", africa],
        "takeoff": ["takeoff", "--input", world],
        "milestones": ["milestones", "--a", "9.123", "--k", "4.478e-3"],
    }.items():
        j1, j2 = tmp_path / f"{tag}1.json", tmp_path / f"{tag}2.json"
        code1, out1 = run(argv + ["--json", str(j1)])
        code2, out2 = run(argv + ["--json", str(j2)])
        if code1 != 0 or code2 != 0:
            failures.append(f"{tag}: nonzero exit")
        if out1 != out2:
            failures.append(f"{tag}: stdout differs across runs")
        if j1.read_bytes() != j2.read_bytes():
            failures.append(f"{tag}: JSON differs across runs")

    g1, g2 = tmp_path / "g1.csv", tmp_path / "g2.csv"
    gen = ["generate", "--a", "0.02", "--k", "1e-5", "--from", "0", "--to", "1500",
           "--step", "5", "--noise", "0.02", "--seed", "7"]
    run(gen + ["--output", str(g1)])
    run(gen + ["--output", str(g2)])
    if g1.read_bytes() != g2.read_bytes():
        failures.append("generate: CSV differs across runs")

    # Segmentation result does not depend on which kernel backend ranked the
    # candidate partitions.
    if _kernels._numba_importable():
        series = africa_composite()
        results = {}
        for backend in ("numpy", "numba"):
            original = _kernels._DEFAULT_BACKEND
            _kernels._DEFAULT_BACKEND = backend
            try:
                results[backend] = hg.segment(series, max_segments=3)
            finally:
                _kernels._DEFAULT_BACKEND = original
        a, b = results["numpy"], results["numba"]
        if a.breakpoints != b.breakpoints or a.total_sse != b.total_sse:
            failures.append("segmentation differs across kernel backends")
        if [s.fit.model for s in a.segments] != [s.fit.model for s in b.segments]:
            failures.append("segment parameters differ across kernel backends")

    announce(12, "CLI outputs byte-identical; segmentation backend-independent",
             failures)
