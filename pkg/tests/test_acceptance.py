"""Exit criteria. Each test records one PASS/FAIL line shown in the pytest summary."""
import time

import numpy as np
import pytest

from evofuzzy.centers import CenterLearnerState, find_winners, init_centers, update_centers
from evofuzzy.data import MackeyGlassParams, generate_mackey_glass, read_csv
from evofuzzy.harness import ExperimentConfig, forecast_recursive, run_experiment
from evofuzzy.inference import ModelConfig, forward
from evofuzzy.oracles import batch_least_squares, running_mean
from evofuzzy.weights import (
    LearnerConfig,
    WeightLearnerState,
    adaptive_update,
    init_learner,
    kaczmarz_update,
    rls_update,
)


def random_phi(rng, h):
    a = rng.uniform(0.01, 1.0, h)
    return a / a.sum()


@pytest.mark.parametrize("n,h", [(1, 2), (2, 5), (4, 7)])
def test_c01_partition_of_unity(criterion, n, h):
    rng = np.random.default_rng(1)
    grid = init_centers(ModelConfig(n=n, h=h))
    w = rng.normal(size=h)
    t0 = time.perf_counter()
    worst = max(abs(forward(x, grid, w)[1].normalized.sum() - 1.0) for x in rng.uniform(-1, 1, (1000, n)))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9 and elapsed < 1.0
    criterion(f"C1 partition of unity (n={n}, h={h})", ok, f"max |sum phi - 1| = {worst:.1e}, {elapsed:.2f}s")
    assert ok


def test_c02_kaczmarz_posterior_zeroing(criterion):
    rng = np.random.default_rng(2)
    s = WeightLearnerState(np.zeros(5))
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(10_000):
        phi, y = random_phi(rng, 5), rng.uniform(-1, 1)
        s = kaczmarz_update(s, phi, y)
        worst = max(worst, abs(s.w @ phi - y))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 1.0
    criterion("C2 Kaczmarz posterior-error zeroing", ok, f"max |w.phi - y| = {worst:.1e}, {elapsed:.2f}s")
    assert ok


def test_c03_rls_matches_batch_least_squares(criterion):
    t0 = time.perf_counter()
    diffs = []
    for seed in (0, 1, 2):
        rng = np.random.default_rng(seed)
        Phi = rng.normal(size=(50, 4))
        y = rng.normal(size=50)
        s = init_learner(4, LearnerConfig("rls", beta=1.0, p_init=1e4))
        for phi, t in zip(Phi, y):
            s = rls_update(s, phi, t, 1.0)
        diffs.append(float(np.max(np.abs(s.w - batch_least_squares(Phi, y)))))
    elapsed = time.perf_counter() - t0
    ok = max(diffs) < 1e-6 and elapsed < 1.0
    criterion("C3 RLS(beta=1, P0=1e4 I) == batch LS", ok,
              f"max componentwise diff per problem {['%.2e' % d for d in diffs]}, {elapsed:.2f}s")
    assert ok


def test_c04_adaptive_beta_zero_is_kaczmarz(criterion):
    rng = np.random.default_rng(4)
    a = init_learner(4, LearnerConfig("adaptive", beta=0.0))
    k = init_learner(4, LearnerConfig("kaczmarz"))
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        phi, y = random_phi(rng, 4), rng.uniform(-1, 1)
        a = adaptive_update(a, phi, y, 0.0)
        k = kaczmarz_update(k, phi, y)
        worst = max(worst, float(np.max(np.abs(a.w - k.w))))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-12 and elapsed < 1.0
    criterion("C4 adaptive(beta=0) == Kaczmarz", ok, f"max diff {worst:.1e}, {elapsed:.2f}s")
    assert ok


def test_c05_kmeans_running_means(criterion):
    # every center that has won equals the plain mean of the values it won
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(50):
        length = int(rng.integers(1, 101))
        grid = init_centers(ModelConfig(n=2, h=5))
        state = CenterLearnerState.fresh(5, 2)
        won = {}
        for x in rng.uniform(-1, 1, (length, 2)):
            for i, l in enumerate(find_winners(x, grid)):
                won.setdefault((int(l), i), []).append(float(x[i]))
            grid, state = update_centers(grid, state, x)
        for (l, i), values in won.items():
            worst = max(worst, abs(grid.centers[l, i] - running_mean(values)))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-12 and elapsed < 1.0
    criterion("C5 k-means step reproduces running means", ok, f"max diff {worst:.1e}, {elapsed:.2f}s")
    assert ok


def test_c06_hull_confinement(criterion):
    rng = np.random.default_rng(6)
    grid = init_centers(ModelConfig(n=3, h=5))
    state = CenterLearnerState.fresh(5, 3)
    t0 = time.perf_counter()
    worst = 0.0
    for x in rng.uniform(-1, 1, (10_000, 3)):
        grid, state = update_centers(grid, state, x)
        worst = max(worst, float(np.max(np.abs(grid.centers))))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1.0 and elapsed < 1.0
    criterion("C6 hull confinement", ok, f"max |c| = {worst:.6f}, {elapsed:.2f}s")
    assert ok


def test_c07_initial_grid(criterion):
    cfg = ModelConfig(n=3, h=5)
    grid = init_centers(cfg)
    ok = cfg.spacing == 0.5 and all(list(grid.centers[:, i]) == [-1.0, -0.5, 0.0, 0.5, 1.0] for i in range(3))
    criterion("C7 h=5 grid, spacing 0.5", ok, f"spacing {cfg.spacing}, axis 0 {grid.centers[:, 0].tolist()}")
    assert ok


def test_c08_mackey_glass(criterion):
    t0 = time.perf_counter()
    eq = generate_mackey_glass(MackeyGlassParams(x0=1.0), 100)
    drift = float(np.max(np.abs(eq - 1.0)))
    runs = [generate_mackey_glass(MackeyGlassParams(dt=dt), 51) for dt in (0.1, 0.05, 0.025)]
    ratio = float(np.max(np.abs(runs[0] - runs[1])) / np.max(np.abs(runs[1] - runs[2])))
    elapsed = time.perf_counter() - t0
    ok = drift < 1e-9 and 10 <= ratio <= 22 and elapsed < 5.0
    criterion("C8 Mackey-Glass equilibrium + RK4 self-convergence", ok,
              f"equilibrium drift {drift:.1e}, step-halving ratio {ratio:.2f}, {elapsed:.2f}s")
    assert ok


def test_c09_determinism_and_frozen_forecast(criterion):
    cfg = ExperimentConfig.from_dict({})
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    same = all(
        np.array_equal(x.predicted, y.predicted) and x.metrics() == y.metrics()
        for x, y in [(a.train, b.train), (a.test, b.test), (a.forecast, b.forecast)]
    )
    before = a.model.snapshot()
    forecast_recursive(a.model, np.linspace(-0.5, 0.5, 10), 14, cfg.lags)
    after = a.model.snapshot()
    frozen = all(
        (before[k] is None and after[k] is None) or np.array_equal(before[k], after[k]) for k in before
    )
    ok = same and frozen
    criterion("C9 determinism + no learning in forecast", ok, f"identical reruns {same}, state unchanged {frozen}")
    assert ok


@pytest.fixture(scope="module")
def mg_runs():
    cfg = {"h": 5, "lags": [1, 2, 3], "algorithm": "kaczmarz", "center_rule": "kmeans", "count": 1600, "split": 0.4}
    t0 = time.perf_counter()
    adaptive = run_experiment(ExperimentConfig.from_dict(cfg))
    elapsed = time.perf_counter() - t0
    frozen = run_experiment(ExperimentConfig.from_dict({**cfg, "freeze_centers": True}))
    return adaptive, frozen, elapsed


def test_c10_mackey_glass_error_levels(criterion, mg_runs):
    r, _, elapsed = mg_runs
    ok = r.train.mape <= 1.0 and r.test.mape <= 5.0 and elapsed < 10.0
    criterion("C10 MG train MAPE <= 1%, test MAPE <= 5%", ok,
              f"train {r.train.mape:.2f}%, test {r.test.mape:.2f}%, {elapsed:.2f}s")
    assert ok


def test_c11_frozen_centers_worse(criterion, mg_runs):
    adaptive, frozen, _ = mg_runs
    ok = frozen.test.mape > adaptive.test.mape
    criterion("C11 frozen-centers test MAPE > adaptive-centers test MAPE", ok,
              f"frozen {frozen.test.mape:.2f}% vs adaptive {adaptive.test.mape:.2f}%")
    assert ok


def test_c12_fourteen_step_forecast_csv(criterion, tmp_path):
    r = run_experiment(ExperimentConfig.from_dict({}), out_dir=tmp_path)
    rows = (tmp_path / "forecast.csv").read_text().splitlines()
    predicted = read_csv(tmp_path / "forecast.csv", "predicted")
    ok = rows[0] == "time,actual,predicted" and len(rows) - 1 == 14 and len(predicted) == 14 and len(r.forecast) == 14
    criterion("C12 14-step recursive forecast CSV", ok, f"{len(rows) - 1} data rows, forecast MAPE {r.forecast.mape:.2f}%")
    assert ok
