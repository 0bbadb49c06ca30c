"""Recursive supervised learners for the output-layer weights.

Three interchangeable algorithms, each consuming one ``(phi, y)`` pair:

* ``rls``      exponentially weighted recursive least squares
* ``kaczmarz`` one-step Kaczmarz / Widrow-Hoff projection
* ``adaptive`` scalar-gain learner with tracking and smoothing properties

The adaptive learner's scalar gain ``p`` is loosely associated with the trace
of the RLS matrix ``P``. The two recursions do not keep ``p == trace(P)``
exactly, so that relation is not enforced anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegenerateRegressorError, NumericalBreakdownError

ALGORITHMS = ("rls", "kaczmarz", "adaptive")

_MIN_NORM2 = 1e-300


@dataclass(frozen=True)
class LearnerConfig:
    algorithm: str = "kaczmarz"
    beta: float = 1.0
    p_init: float = 1e4  # RLS: P(0) = p_init * I
    p0: float = 1.0  # adaptive: p(0)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {self.algorithm!r}, expected one of {ALGORITHMS}")
        if self.algorithm == "rls" and not (0 < self.beta <= 1):
            raise ConfigurationError(f"rls requires 0 < beta <= 1, got {self.beta}")
        if self.algorithm == "adaptive" and not (0 <= self.beta <= 1):
            raise ConfigurationError(f"adaptive requires 0 <= beta <= 1, got {self.beta}")
        if not self.p_init > 0:
            raise ConfigurationError(f"p_init must be > 0, got {self.p_init}")
        if not self.p0 > 0:
            raise ConfigurationError(f"p0 must be > 0, got {self.p0}")


@dataclass
class WeightLearnerState:
    w: np.ndarray
    P: np.ndarray | None = None
    p: float | None = None

    def copy(self) -> "WeightLearnerState":
        return WeightLearnerState(
            self.w.copy(),
            None if self.P is None else self.P.copy(),
            self.p,
        )


def init_learner(h: int, config: LearnerConfig) -> WeightLearnerState:
    w = np.zeros(h)
    if config.algorithm == "rls":
        return WeightLearnerState(w, P=config.p_init * np.eye(h))
    if config.algorithm == "adaptive":
        return WeightLearnerState(w, p=float(config.p0))
    return WeightLearnerState(w)


def rls_update(state: WeightLearnerState, phi, y: float, beta: float) -> WeightLearnerState:
    phi = np.asarray(phi, dtype=float)
    P = state.P
    Pphi = P @ phi
    denom = beta + phi @ Pphi
    if not denom > 0:
        raise NumericalBreakdownError(f"RLS denominator {denom} <= 0; P lost positive definiteness")
    err = y - state.w @ phi
    w = state.w + (err / denom) * Pphi
    P = (P - np.outer(Pphi, Pphi) / denom) / beta
    P = 0.5 * (P + P.T)
    return WeightLearnerState(w, P=P, p=state.p)


def kaczmarz_update(state: WeightLearnerState, phi, y: float) -> WeightLearnerState:
    phi = np.asarray(phi, dtype=float)
    norm2 = phi @ phi
    if norm2 < _MIN_NORM2:
        raise DegenerateRegressorError(f"|phi|^2 = {norm2} is too small")
    err = y - state.w @ phi
    return WeightLearnerState(state.w + (err / norm2) * phi, P=state.P, p=state.p)


def adaptive_update(state: WeightLearnerState, phi, y: float, beta: float) -> WeightLearnerState:
    # p(k) must be advanced before w(k) uses it; with beta = 0 this is exactly Kaczmarz.
    phi = np.asarray(phi, dtype=float)
    p = beta * state.p + phi @ phi
    if not p > 0:
        raise NumericalBreakdownError(f"adaptive gain accumulator p = {p} <= 0")
    err = y - state.w @ phi
    return WeightLearnerState(state.w + (err / p) * phi, P=state.P, p=float(p))


def update_weights(state: WeightLearnerState, phi, y: float, config: LearnerConfig) -> WeightLearnerState:
    if config.algorithm == "rls":
        return rls_update(state, phi, y, config.beta)
    if config.algorithm == "adaptive":
        return adaptive_update(state, phi, y, config.beta)
    return kaczmarz_update(state, phi, y)
