"""Winner-take-all self-learning of membership-function centers.

Each input axis runs its own competition: the center closest to ``x_i``
wins and moves toward it, every other center on that axis stays put. The
winners on different axes may belong to different rules.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, NumericalBreakdownError
from .inference import MembershipGrid, ModelConfig, _check_input

STEP_RULES = ("kmeans", "kohonen")


@dataclass(frozen=True)
class CenterConfig:
    step_rule: str = "kmeans"
    beta: float = 1.0  # forgetting factor of the kohonen accumulators
    p0: float = 1.0  # initial kohonen accumulator

    def __post_init__(self):
        if self.step_rule not in STEP_RULES:
            raise ConfigurationError(f"unknown step rule {self.step_rule!r}, expected one of {STEP_RULES}")
        if not (0 <= self.beta <= 1):
            raise ConfigurationError(f"center beta must be in [0, 1], got {self.beta}")
        if not self.p0 > 0:
            raise ConfigurationError(f"center p0 must be > 0, got {self.p0}")


@dataclass
class CenterLearnerState:
    win_counts: np.ndarray  # int, h x n
    accumulators: np.ndarray  # float, h x n; used by the kohonen rule only
    step_rule: str = "kmeans"
    beta: float = 1.0

    @classmethod
    def fresh(cls, h: int, n: int, config: CenterConfig | None = None) -> "CenterLearnerState":
        config = config or CenterConfig()
        return cls(
            np.zeros((h, n), dtype=np.int64),
            np.full((h, n), float(config.p0)),
            config.step_rule,
            config.beta,
        )

    def copy(self) -> "CenterLearnerState":
        return CenterLearnerState(
            self.win_counts.copy(), self.accumulators.copy(), self.step_rule, self.beta
        )


def init_centers(config: ModelConfig) -> MembershipGrid:
    """Evenly spaced centers on [-1, 1] along every axis, spacing ``2 / (h - 1)``."""
    if config.h < 2:
        raise ConfigurationError("h must be >= 2 to space centers")
    col = -1.0 + np.arange(config.h) * config.spacing
    col[-1] = 1.0
    return MembershipGrid(np.tile(col[:, None], (1, config.n)), config.width)


def find_winners(x, grid: MembershipGrid) -> np.ndarray:
    """Per-axis index of the nearest center; ties go to the lowest index."""
    x = _check_input(x, grid)
    # np.argmin returns the first minimum, which is the lowest-index tie-break
    return np.argmin(np.abs(x - grid.centers), axis=0)


def step_kmeans(state: CenterLearnerState, l: int, i: int) -> float:
    return 1.0 / state.win_counts[l, i]


def step_kohonen(state: CenterLearnerState, l: int, i: int, x_i: float, beta: float) -> float:
    """Advance the accumulator ``p <- beta * p + x_i^2`` and return ``min(1, 1/p)``.

    Mutates ``state.accumulators[l, i]``.
    """
    p = beta * state.accumulators[l, i] + x_i * x_i
    if not p > 0:
        raise NumericalBreakdownError(f"kohonen accumulator p[{l}, {i}] = {p} <= 0")
    state.accumulators[l, i] = p
    return min(1.0, 1.0 / p)


def update_centers(
    grid: MembershipGrid, state: CenterLearnerState, x
) -> tuple[MembershipGrid, CenterLearnerState]:
    x = _check_input(x, grid)
    winners = find_winners(x, grid)
    grid = grid.copy()
    state = state.copy()
    for i, l in enumerate(winners):
        # counter first, so the first win always steps by exactly 1
        state.win_counts[l, i] += 1
        if state.step_rule == "kohonen":
            eta = step_kohonen(state, l, i, x[i], state.beta)
        else:
            eta = step_kmeans(state, l, i)
        c = grid.centers[l, i]
        grid.centers[l, i] = c + eta * (x[i] - c)
    return grid, state
