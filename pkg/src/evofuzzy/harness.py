"""Online training loop, recursive forecasting, metrics and the end-to-end experiment."""
from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .centers import CenterConfig, CenterLearnerState, init_centers, update_centers
from .data import (
    MackeyGlassParams,
    NormalizationMap,
    TimeSeriesFrame,
    _check_lags,
    embed,
    generate_mackey_glass,
    read_csv,
    write_csv,
)
from .errors import ConfigurationError, InsufficientDataError, MetricUndefinedError, ValidationError
from .inference import MembershipGrid, ModelConfig, forward
from .weights import LearnerConfig, WeightLearnerState, init_learner, update_weights

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelConfig
    learner: LearnerConfig = field(default_factory=LearnerConfig)
    centers: CenterConfig = field(default_factory=CenterConfig)
    split: float = 0.4
    horizon: int = 14
    lags: tuple[int, ...] = (1, 2, 3)
    seed: int = 0
    freeze_centers: bool = False
    mackey_glass: MackeyGlassParams = field(default_factory=MackeyGlassParams)
    count: int = 1600

    def __post_init__(self):
        object.__setattr__(self, "lags", _check_lags(self.lags))
        if not (0 < self.split < 1):
            raise ConfigurationError(f"split must be in (0, 1), got {self.split}")
        if int(self.horizon) != self.horizon or self.horizon < 1:
            raise ConfigurationError(f"horizon must be an integer >= 1, got {self.horizon}")
        if self.model.n != len(self.lags):
            raise ConfigurationError(f"model.n={self.model.n} but {len(self.lags)} lags given")

    # Flat JSON keys. Every key is optional; missing ones take these defaults.
    DEFAULTS = {
        "h": 5,
        "sigma": None,
        "algorithm": "kaczmarz",
        "beta": 1.0,
        "p_init": 1e4,
        "p0": 1.0,
        "center_rule": "kmeans",
        "center_beta": 1.0,
        "center_p0": 1.0,
        "split": 0.4,
        "horizon": 14,
        "lags": [1, 2, 3],
        "seed": 0,
        "freeze_centers": False,
        "count": 1600,
        "mg_beta": 0.2,
        "mg_gamma": 0.1,
        "mg_n": 10.0,
        "tau": 17.0,
        "dt": 0.1,
        "x0": 1.2,
    }

    @classmethod
    def from_dict(cls, d: dict | None = None) -> "ExperimentConfig":
        d = dict(d or {})
        unknown = set(d) - set(cls.DEFAULTS)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        c = {**cls.DEFAULTS, **d}
        lags = tuple(c["lags"])
        return cls(
            model=ModelConfig(n=len(lags), h=c["h"], sigma=c["sigma"]),
            learner=LearnerConfig(c["algorithm"], c["beta"], c["p_init"], c["p0"]),
            centers=CenterConfig(c["center_rule"], c["center_beta"], c["center_p0"]),
            split=c["split"],
            horizon=c["horizon"],
            lags=lags,
            seed=c["seed"],
            freeze_centers=c["freeze_centers"],
            mackey_glass=MackeyGlassParams(
                c["mg_beta"], c["mg_gamma"], c["mg_n"], c["tau"], c["dt"], c["x0"]
            ),
            count=c["count"],
        )

    def to_dict(self) -> dict:
        return {
            "h": self.model.h,
            "sigma": self.model.sigma,
            "algorithm": self.learner.algorithm,
            "beta": self.learner.beta,
            "p_init": self.learner.p_init,
            "p0": self.learner.p0,
            "center_rule": self.centers.step_rule,
            "center_beta": self.centers.beta,
            "center_p0": self.centers.p0,
            "split": self.split,
            "horizon": self.horizon,
            "lags": list(self.lags),
            "seed": self.seed,
            "freeze_centers": self.freeze_centers,
            "count": self.count,
            **asdict(self.mackey_glass),
        }

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


class NeuroFuzzyModel:
    """Membership grid, center-learner state and weight-learner state of one system."""

    def __init__(self, model: ModelConfig, learner: LearnerConfig | None = None,
                 centers: CenterConfig | None = None, freeze_centers: bool = False):
        self.model_config = model
        self.learner_config = learner or LearnerConfig()
        self.center_config = centers or CenterConfig()
        self.freeze_centers = freeze_centers
        self.grid: MembershipGrid = init_centers(model)
        self.center_state = CenterLearnerState.fresh(model.h, model.n, self.center_config)
        self.weights: WeightLearnerState = init_learner(model.h, self.learner_config)

    @classmethod
    def from_config(cls, config: ExperimentConfig) -> "NeuroFuzzyModel":
        return cls(config.model, config.learner, config.centers, config.freeze_centers)

    def predict(self, x) -> float:
        return forward(x, self.grid, self.weights.w)[0]

    def partial_fit(self, x, y: float) -> float:
        """One online step: centers first, then weights on the updated grid.

        Returns the prediction made with the updated centers but the previous
        weights, i.e. the a-priori residual basis.
        """
        if not np.isfinite(y):
            raise ValidationError(f"target must be finite, got {y}")
        if not self.freeze_centers:
            self.grid, self.center_state = update_centers(self.grid, self.center_state, x)
        prior, strengths = forward(x, self.grid, self.weights.w)
        self.weights = update_weights(self.weights, strengths.normalized, y, self.learner_config)
        return prior

    def snapshot(self) -> dict:
        return {
            "centers": self.grid.centers.copy(),
            "win_counts": self.center_state.win_counts.copy(),
            "accumulators": self.center_state.accumulators.copy(),
            "w": self.weights.w.copy(),
            "P": None if self.weights.P is None else self.weights.P.copy(),
            "p": self.weights.p,
        }


@dataclass
class ForecastReport:
    time: np.ndarray
    actual: np.ndarray  # source units
    predicted: np.ndarray  # source units
    mape: float | None  # percent; None when an actual is zero
    rmse: float
    nrmse: float | None  # rmse / (max(actual) - min(actual)); None for a flat actual

    def __len__(self) -> int:
        return len(self.actual)

    def metrics(self) -> dict:
        return {"n": len(self), "mape": self.mape, "rmse": self.rmse, "nrmse": self.nrmse}

    def to_csv(self, path) -> None:
        write_csv(path, {"time": self.time, "actual": self.actual, "predicted": self.predicted})


def mape(actual, predicted) -> float:
    actual = np.asarray(actual, dtype=float)
    predicted = np.asarray(predicted, dtype=float)
    if np.any(actual == 0):
        raise MetricUndefinedError("MAPE undefined: an actual value is zero")
    return float(100.0 * np.mean(np.abs(actual - predicted) / np.abs(actual)))


def evaluate(actual, predicted, norm: NormalizationMap | None = None, time=None) -> ForecastReport:
    """Metrics on source-unit values. ``norm`` denormalizes both inputs first when given."""
    actual = np.asarray(actual, dtype=float).reshape(-1)
    predicted = np.asarray(predicted, dtype=float).reshape(-1)
    if len(actual) != len(predicted):
        raise ValidationError(f"length mismatch: {len(actual)} actual vs {len(predicted)} predicted")
    if len(actual) < 1:
        raise InsufficientDataError("need at least one value to evaluate")
    if norm is not None:
        actual = norm.denormalize(actual)
        predicted = norm.denormalize(predicted)
    time = np.arange(len(actual)) if time is None else np.asarray(time)
    try:
        m = mape(actual, predicted)
    except MetricUndefinedError as exc:
        log.warning("%s; reporting rmse/nrmse only", exc)
        m = None
    rmse = float(np.sqrt(np.mean((actual - predicted) ** 2)))
    span = float(actual.max() - actual.min())
    nrmse = rmse / span if span > 0 else None
    return ForecastReport(time, actual, predicted, m, rmse, nrmse)


def train_online(frame: TimeSeriesFrame, config: ExperimentConfig,
                 model: NeuroFuzzyModel | None = None) -> tuple[NeuroFuzzyModel, ForecastReport]:
    """Single pass over ``frame`` in order. The report scores a-priori predictions."""
    if len(frame) == 0:
        raise InsufficientDataError("cannot train on an empty frame")
    model = model or NeuroFuzzyModel.from_config(config)
    prior = np.array([model.partial_fit(x, y) for x, y in zip(frame.inputs, frame.targets)])
    return model, evaluate(frame.targets, prior, frame.norm, frame.times)


def predict_frame(model: NeuroFuzzyModel, frame: TimeSeriesFrame) -> np.ndarray:
    return np.array([model.predict(x) for x in frame.inputs])


def forecast_recursive(model: NeuroFuzzyModel, seed_history, horizon: int,
                       lags: Sequence[int]) -> np.ndarray:
    """Iterate ``horizon`` one-step predictions, feeding each back as history.

    Values are in normalized units. The model is not updated.
    """
    lags = _check_lags(lags)
    history = [float(v) for v in np.asarray(seed_history, dtype=float).reshape(-1)]
    if len(history) < max(lags):
        raise InsufficientDataError(f"need at least {max(lags)} history values, got {len(history)}")
    if horizon < 1:
        raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
    out = []
    for _ in range(horizon):
        x = [history[-lag] for lag in lags]
        y = model.predict(x)
        out.append(y)
        history.append(y)
    return np.array(out)


@dataclass
class ExperimentResult:
    train: ForecastReport
    test: ForecastReport
    forecast: ForecastReport
    model: NeuroFuzzyModel
    counts: dict
    config: ExperimentConfig

    def summary(self) -> dict:
        return {
            "train": self.train.metrics(),
            "test_onestep": self.test.metrics(),
            "forecast": self.forecast.metrics(),
            "counts": self.counts,
            "config": self.config.to_dict(),
        }


def run_experiment(config: ExperimentConfig, series=None, out_dir=None) -> ExperimentResult:
    """Normalize, embed, split chronologically, train online, evaluate and forecast.

    ``series`` defaults to a Mackey-Glass run built from ``config``. The
    first ``round(split * len(series))`` points form the training span; the
    normalization map is fitted on that span only, so no test value reaches
    training. Test samples are scored one step ahead on actual lagged inputs;
    the recursive forecast starts at the training boundary.
    """
    if series is None:
        series = generate_mackey_glass(config.mackey_glass, config.count)
    series = np.asarray(series, dtype=float).reshape(-1)
    m = max(config.lags)
    boundary = int(round(config.split * len(series)))
    if boundary <= m or boundary >= len(series):
        raise InsufficientDataError(
            f"series of length {len(series)} with split {config.split} leaves no train or test samples"
        )
    norm = NormalizationMap.fit(series[:boundary])
    scaled = norm.normalize(series)
    frame = embed(scaled, config.lags, norm)
    train_frame = frame.subset(frame.times < boundary)
    test_frame = frame.subset(frame.times >= boundary)
    log.info("train samples %d, test samples %d", len(train_frame), len(test_frame))

    model, train_report = train_online(train_frame, config)
    test_report = evaluate(test_frame.targets, predict_frame(model, test_frame), norm, test_frame.times)

    horizon = min(config.horizon, len(series) - boundary)
    fc = forecast_recursive(model, scaled[:boundary], horizon, config.lags)
    fc_times = np.arange(boundary, boundary + horizon)
    forecast_report = evaluate(scaled[fc_times], fc, norm, fc_times)

    counts = {
        "series": len(series),
        "boundary": boundary,
        "train": len(train_frame),
        "test": len(test_frame),
        "forecast": horizon,
    }
    result = ExperimentResult(train_report, test_report, forecast_report, model, counts, config)
    if out_dir is not None:
        write_outputs(result, out_dir)
    return result


def write_outputs(result: ExperimentResult, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result.train.to_csv(out / "train.csv")
    result.test.to_csv(out / "test_onestep.csv")
    result.forecast.to_csv(out / "forecast.csv")
    with open(out / "summary.json", "w") as fh:
        json.dump(result.summary(), fh, indent=2)


def load_series(path) -> np.ndarray:
    return read_csv(path)
