"""Acceptance criteria, one test each.  Every test prints a single
``[criterion N] PASS|FAIL ...`` line; thresholds are fixed, not tuned.

Multi-seed criteria use seeds 0..9.
"""

import functools
import math

import mpmath
import numpy as np
import pytest

from swarmsearch import cli
from swarmsearch.benchmarks import SCHWEFEL_ARGMIN, SCHWEFEL_MIN_2D, evaluate, passino_landscape
from swarmsearch.bfoa import run_bfoa
from swarmsearch.domain import Goal
from swarmsearch.habitat import sample_function
from swarmsearch.metrics import adaptation_time, grid_optimum
from swarmsearch.presets import SWITCH_STEPS, load_preset
from swarmsearch.ssa import (
    AntState,
    ColonyState,
    PheromoneField,
    SsaParams,
    advance,
    deposit_amount,
    direction_delta,
    pheromone_weight,
    run_ssa,
    step_colony,
    transition_probabilities,
)
from tests.test_ssa import _walk_matrix, flat_habitat

SEEDS = range(10)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


@functools.lru_cache(maxsize=None)
def preset_runs(name):
    config = load_preset(name)
    habitat = sample_function(config.function, config.domain, config.width, config.height, config.goal)
    return [run_ssa(habitat, config.ssa.replace(rng_seed=s), config.schedule, radius=config.radius) for s in SEEDS]


def test_criterion_1_equations(report):
    mpmath.mp.dps = 50
    errors = []
    for sigma in (0.1, 1.0, 10.0, 1e9):
        s = mpmath.mpf(sigma)
        exact = float((1 + s / (1 + mpmath.mpf("0.2") * s)) ** mpmath.mpf("3.5"))
        errors.append(abs(pheromone_weight(sigma, 3.5, 0.2) - exact) / exact)
    ok = pheromone_weight(0.0, 3.5, 0.2) == 1.0 and max(errors) <= 1e-12
    ok &= deposit_amount(1.0, 1.0, 4.0, Goal.MAXIMIZE, 0.07, 1.93) == 0.07
    ok &= deposit_amount(4.0, 1.0, 4.0, Goal.MAXIMIZE, 0.07, 1.93) == 0.07 + 1.93
    ok &= deposit_amount(4.0, 4.0, 4.0, Goal.MINIMIZE, 0.07, 1.93) == 0.07
    report(1, ok, f"max relative W error {max(errors):.2e}")


def test_criterion_2_transition_distribution(report):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(10_000):
        w, h = (int(v) for v in rng.integers(3, 12, size=2))
        field = PheromoneField(rng.exponential(rng.uniform(0.01, 50), size=(w, h)))
        taken = rng.random((w, h)) < rng.uniform(0, 0.9)
        ant = AntState((int(rng.integers(w)), int(rng.integers(h))), int(rng.integers(8)))
        probs = transition_probabilities(ant, field, lambda c: bool(taken[c]), SsaParams())
        if probs:
            worst = max(worst, abs(sum(probs.values()) - 1.0))
    w = SsaParams().direction_weights
    oracle = w[0] / sum(w[direction_delta(0, d)] for d in range(8))
    probs = transition_probabilities(AntState((1, 1), 0), PheromoneField(np.full((3, 3), 2.0)),
                                     lambda c: False, SsaParams())
    straight = probs[(1, 2)]
    ok = worst <= 1e-12 and abs(straight - oracle) <= 1e-9 and abs(oracle - 0.368098) < 1e-6
    report(2, ok, f"max |sum-1| {worst:.1e}; straight-ahead {straight:.12f} vs oracle {oracle:.12f}")


def test_criterion_3_markov_equivalence(report):
    width = height = 5
    P = _walk_matrix(width, height)
    pi = np.zeros(P.shape[0])
    pi[0] = 1.0
    for _ in range(5000):
        pi = 0.5 * (pi + pi @ P)  # lazy power iteration, same fixed point
    hab = flat_habitat(width, height)
    params = SsaParams(n_ants=1, t_max=0, eta=0.0, p=0.0, k=0.0, rng_seed=1)
    state = ColonyState.place(hab, params)
    steps = 1_000_000
    visits = np.zeros(P.shape[0])
    for _ in range(steps):
        step_colony(state, hab, params)
        visits[(int(state.ax[0]) * height + int(state.ay[0])) * 8 + int(state.heading[0])] += 1
    tv = 0.5 * np.abs(visits / steps - pi).sum()
    report(3, tv <= 0.01 and state.field.total() == 0.0, f"total variation {tv:.4f} over {steps} steps")


def test_criterion_4_flat_mass_law(report):
    rows = [(3000, 0.015, 0.07), (2000, 1.0, 0.10), (3000, 1.0, 0.01)]
    hab = flat_habitat(100, 100, level=2.0)
    worst = 0.0
    for n, k, eta in rows:
        params = SsaParams(n_ants=n, t_max=0, k=k, eta=eta, p=1.93, rng_seed=9, evaporation="rate")
        state = advance(ColonyState.place(hab, params), hab, params, 100)
        expected = math.fsum(n * eta * (1 - k) ** (100 - s + 1) for s in range(1, 101))
        got = state.field.total()
        worst = max(worst, abs(got - expected) / expected if expected else abs(got))
    report(4, worst <= 1e-9, f"max relative error {worst:.2e} at t=100")


def test_criterion_5_static_maximum(report):
    runs = preset_runs("fig2")
    hits = 0
    details = []
    for run in runs:
        last = run.records[-1]
        near = last.dist_to_opt <= 5
        massive = last.mass_fraction_at(5) >= 0.5
        hits += near and massive
        details.append(f"{last.dist_to_opt:.1f}/{last.mass_fraction_at(5):.3f}")
    report(5, hits >= 9, f"{hits}/10 seeds localized with mass>=0.5 (dist/mass: {' '.join(details)})")


def test_criterion_6_goal_reversal(report):
    runs = preset_runs("fig4")
    times = [adaptation_time(r.records, SWITCH_STEPS["fig4"], 5, 0.5) for r in runs]
    hits = sum(t is not None and t <= 250 for t in times)
    peak = [max(rec.mass_fraction_at(5) for rec in r.records[250:]) for r in runs]
    report(6, hits >= 8, f"{hits}/10 seeds adapted within 250 steps (times {times}; "
                         f"best post-switch mass_fraction_5 {min(peak):.3f}..{max(peak):.3f})")


@pytest.mark.parametrize("name", ["fig3", "fig5"])
def test_criterion_7_habitat_switch(report, name):
    switch = SWITCH_STEPS[name]
    runs = preset_runs(name)
    pairs = [(r.records[switch - 1].mass_fraction_at(5), r.records[-1].mass_fraction_at(5)) for r in runs]
    assert all(r.records[switch - 1].t == switch for r in runs)
    hits = sum(end > start for start, end in pairs)
    report(7, hits >= 8, f"{name}: {hits}/10 seeds raised mass near the new optimum "
                         f"({' '.join(f'{a:.3f}->{b:.3f}' for a, b in pairs)})")


def test_criterion_8_comparison(report):
    sv1 = preset_runs("sv1")
    early = sum(r.records[99].t == 100 and r.records[99].dist_to_opt <= 2 for r in sv1)

    config = load_preset("sv1")
    landscape = passino_landscape("P1")
    monotone = sizes = True
    for s in SEEDS:
        run = run_bfoa(landscape, config.domain, config.bfoa.replace(rng_seed=s))
        costs = [rec.best_cost for rec in run.trace]
        monotone &= len(costs) == 400 and all(b <= a for a, b in zip(costs, costs[1:]))
        sizes &= all(n == 50 for n in run.population_sizes)

    sv3 = preset_runs("sv3")
    hab = sample_function("P1", config.domain, 30, 30, Goal.MAXIMIZE)
    max_cell, _ = grid_optimum(hab)
    late = sum(math.dist(r.records[-1].pher_argmax, max_cell) <= 2 for r in sv3)
    ok = early >= 7 and monotone and sizes and late >= 7
    report(8, ok, f"(a) {early}/10 SSA localized by t=100; (b) BFOA monotone={monotone} sizes={sizes}; "
                  f"(c) {late}/10 ended at the maximum")


@pytest.mark.parametrize("name", ["fig4", "sv1"])
def test_criterion_9_determinism(report, name, tmp_path):
    config = load_preset(name).replace(seeds=(3,))
    cli.run(config, tmp_path / "a")
    cli.run(config, tmp_path / "b")
    files = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
    same = all((tmp_path / "a" / f).read_bytes().replace(b"/a", b"") == (tmp_path / "b" / f).read_bytes().replace(b"/b", b"")
               for f in files)
    report(9, same and len(files) > 5, f"{name}: {len(files)} files byte-identical across two runs")


def test_criterion_10_benchmarks(report):
    exact = evaluate("F1", 0.0, 0.0) == 0.0 and evaluate("F4", 1.0, 1.0) == 0.0 and evaluate("F5", 0.0, 0.0) == 0.0
    x = mpmath.mpf(SCHWEFEL_ARGMIN)
    direct = float(-2 * x * mpmath.sin(mpmath.sqrt(abs(x))))
    f6 = evaluate("F6", SCHWEFEL_ARGMIN, SCHWEFEL_ARGMIN)
    schwefel = abs(f6 - direct) <= 1e-6 and abs(f6 - SCHWEFEL_MIN_2D) <= 1e-6
    rng = np.random.default_rng(10)
    pts = rng.uniform(-5, 5, size=(10_000, 2))
    antisym = all(evaluate("F0b", x, y) == -evaluate("F0a", x, y) for x, y in pts)
    report(10, exact and schwefel and antisym, f"zeros exact={exact}; F6 {f6:.10f}; F0b=-F0a on 10^4 points={antisym}")
