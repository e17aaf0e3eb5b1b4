import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swarmsearch.benchmarks import PASSINO_DOMAIN, passino_landscape
from swarmsearch.bfoa import (
    Bacterium,
    BfoaParams,
    chemotactic_step,
    disperse,
    reproduce,
    run_bfoa,
    swarming_cost,
)
from swarmsearch.domain import Domain2D

COEFFS = BfoaParams().swarm_coeffs
ARENA = Domain2D.square(0.0, 30.0)


class FixedAngle:
    """Stand-in generator whose tumbles always point the same way."""

    def __init__(self, angle):
        self.angle = angle

    def uniform(self, lo, hi):
        return self.angle


def test_swarming_terms_cancel():
    rng = np.random.default_rng(0)
    pop = rng.uniform(0, 30, size=(10, 2))
    assert swarming_cost(np.array([3.0, 4.0]), pop, (0.3, 2.0, 0.3, 2.0)) == pytest.approx(0.0, abs=1e-15)


def test_swarming_self_term():
    pos = np.array([12.5, 7.0])
    d_att, w_att, h_rep, w_rep = (0.4, 0.2, 0.1, 10.0)
    assert swarming_cost(pos, pos[None, :], (d_att, w_att, h_rep, w_rep)) == pytest.approx(-d_att + h_rep, rel=1e-15)


def test_swarming_three_bacteria_high_precision():
    mpmath.mp.dps = 50
    pop = np.array([[1.0, 2.0], [1.3, 2.2], [0.2, 1.5]])
    pos = np.array([1.1, 2.05])
    d_att, w_att, h_rep, w_rep = (0.1, 0.2, 0.1, 10.0)
    total = mpmath.mpf(0)
    for px, py in pop:
        sq = (mpmath.mpf(pos[0]) - mpmath.mpf(px)) ** 2 + (mpmath.mpf(pos[1]) - mpmath.mpf(py)) ** 2
        total += -d_att * mpmath.exp(-w_att * sq) + h_rep * mpmath.exp(-w_rep * sq)
    assert swarming_cost(pos, pop, COEFFS) == pytest.approx(float(total), rel=1e-12)


def test_constant_landscape_never_swims():
    rng = np.random.default_rng(1)
    params = BfoaParams(ns=10)
    b = Bacterium(np.array([15.0, 15.0]))
    for _ in range(200):
        res = chemotactic_step(b, np.empty((0, 2)), lambda x, y: 4.0, params, ARENA, rng, swarming=False)
        assert res.swims == 0 and res.evaluations == 2
        b = res.bacterium


def test_linear_ramp_downhill_swims_ns_times():
    params = BfoaParams(ns=4, step_size=0.5)
    b = Bacterium(np.array([15.0, 15.0]))
    res = chemotactic_step(b, np.empty((0, 2)), lambda x, y: x, params, ARENA, FixedAngle(np.pi), swarming=False)
    assert res.swims == 4
    assert res.evaluations == 2 + 4
    assert res.bacterium.position == pytest.approx([15.0 - 0.5 * 5, 15.0])
    # health sums the cost at the tumble point and every swim point
    assert res.bacterium.health == pytest.approx(sum(15.0 - 0.5 * i for i in range(1, 6)))
    uphill = chemotactic_step(b, np.empty((0, 2)), lambda x, y: x, params, ARENA, FixedAngle(0.0), swarming=False)
    assert uphill.swims == 0


def test_zero_step_accumulates_equal_terms():
    params = BfoaParams(step_size=0.0)
    pop = np.array([[3.0, 3.0], [5.0, 1.0]])
    b = Bacterium(np.array([4.0, 2.0]))
    landscape = lambda x, y: x * y  # noqa: E731
    term = landscape(4.0, 2.0) + swarming_cost(b.position, pop, COEFFS)
    rng = np.random.default_rng(2)
    for _ in range(params.nc):
        b = chemotactic_step(b, pop, landscape, params, ARENA, rng).bacterium
    assert b.position.tolist() == [4.0, 2.0]
    assert b.health == pytest.approx(params.nc * term, rel=1e-12)


def test_positions_clamped():
    params = BfoaParams(ns=50, step_size=3.0)
    b = Bacterium(np.array([1.0, 29.0]))
    res = chemotactic_step(b, np.empty((0, 2)), lambda x, y: -y, params, ARENA, FixedAngle(np.pi / 2), swarming=False)
    assert ARENA.contains(*res.bacterium.position)
    assert res.bacterium.position[1] == 30.0


def _population(healths):
    return [Bacterium(np.array([float(i), float(i) / 2]), h) for i, h in enumerate(healths)]


def test_reproduce_equal_health_preserves_multiset():
    pop = _population([1.0] * 6)
    out = reproduce(pop)
    assert sorted(tuple(b.position) for b in out) == sorted(tuple(b.position) for b in pop[:3] * 2)
    assert all(b.health == 0.0 for b in out)


def test_reproduce_distinct_healths():
    pop = _population([5.0, 1.0, 4.0, 0.5, 3.0, 2.0])
    out = [tuple(b.position) for b in reproduce(pop)]
    best = {tuple(pop[i].position) for i in (3, 1, 5)}
    worst = {tuple(pop[i].position) for i in (0, 2, 4)}
    assert not worst & set(out)
    assert all(out.count(p) == 2 for p in best)


@given(st.lists(st.floats(-100, 100), min_size=1, max_size=20).map(lambda h: h + h[:1] if len(h) % 2 else h))
def test_reproduce_matches_sort_and_copy(healths):
    pop = _population(healths)
    ranked = sorted(range(len(pop)), key=lambda i: (pop[i].health, i))[: len(pop) // 2]
    expected = [tuple(pop[i].position) for i in ranked] * 2
    assert [tuple(b.position) for b in reproduce(pop)] == expected


def test_reproduce_odd_population():
    with pytest.raises(ValueError):
        reproduce(_population([1.0, 2.0, 3.0]))
    with pytest.raises(ValueError):
        BfoaParams(s=7)


def test_disperse_probabilities():
    pop = _population([0.0] * 10)
    rng = np.random.default_rng(0)
    assert all(a is b for a, b in zip(disperse(pop, 0.0, ARENA, rng), pop))
    moved = disperse(pop, 1.0, ARENA, rng)
    assert len(moved) == 10 and all(ARENA.contains(*b.position) for b in moved)
    assert not any(a is b for a, b in zip(moved, pop))


def test_minimal_run_one_tumble_each():
    params = BfoaParams(s=6, nc=1, n_re=1, n_ed=1, ns=0, p_ed=0.0)
    run = run_bfoa(lambda x, y: (x - 3) ** 2 + y * y, ARENA, params)
    assert len(run.trace) == 1
    assert run.evaluations == 6 + 6 * 2
    assert run.population_sizes == [6, 6]


def test_passino_run_invariants():
    landscape = passino_landscape("P1")
    params = BfoaParams(s=50, nc=100, n_re=4, rng_seed=4)
    seen = []
    run = run_bfoa(landscape, PASSINO_DOMAIN, params, snapshot_steps=(0, 100, 400),
                   observers=[lambda t, pop, rec: seen.append(all(PASSINO_DOMAIN.contains(*b.position) for b in pop))])
    assert [r.global_step for r in run.trace] == list(range(1, 401))
    costs = [r.best_cost for r in run.trace]
    assert all(b <= a for a, b in zip(costs, costs[1:]))
    assert run.population_sizes == [50] * 5
    assert all(seen)
    assert sorted(run.snapshots) == [0, 100, 400]
    assert all(s.shape == (50, 2) for s in run.snapshots.values())
    best = run.trace[-1]
    assert landscape(best.best_x, best.best_y) == best.best_cost


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 2**31))
def test_seed_determinism(seed):
    params = BfoaParams(s=10, nc=15, n_re=2, n_ed=2, rng_seed=seed)
    landscape = passino_landscape("P2")
    a = run_bfoa(landscape, PASSINO_DOMAIN, params)
    b = run_bfoa(landscape, PASSINO_DOMAIN, params)
    assert a.trace == b.trace
    assert [t.global_step for t in a.trace] == list(range(1, 61))
