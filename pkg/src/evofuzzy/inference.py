"""Forward pass of the five-layer neuro-fuzzy system.

Layer 1 fuzzifies each input component with Gaussian membership functions,
layer 2 multiplies memberships into rule activations, layers 3-5 form the
normalized weighted sum ``w @ phi``.

Rule ``l`` uses the ``l``-th membership function of every axis, so there are
exactly ``h`` rules (not ``h ** n``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ValidationError


@dataclass(frozen=True)
class ModelConfig:
    n: int
    h: int
    sigma: float | None = None  # None -> initial center spacing 2 / (h - 1)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ConfigurationError(f"n must be an integer >= 1, got {self.n}")
        if int(self.h) != self.h or self.h < 2:
            raise ConfigurationError(f"h must be an integer >= 2, got {self.h}")
        if self.sigma is not None and not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ConfigurationError(f"sigma must be > 0, got {self.sigma}")

    @property
    def spacing(self) -> float:
        return 2.0 / (self.h - 1)

    @property
    def width(self) -> float:
        return self.spacing if self.sigma is None else float(self.sigma)


@dataclass
class MembershipGrid:
    """Centers ``c[l, i]`` (h x n) and the width shared by every membership function."""

    centers: np.ndarray
    sigma: float

    def __post_init__(self):
        self.centers = np.array(self.centers, dtype=float, ndmin=2)
        if self.centers.ndim != 2:
            raise ValidationError("centers must be an h x n matrix")
        if not np.all(np.isfinite(self.centers)):
            raise ValidationError("centers must be finite")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValidationError(f"sigma must be > 0, got {self.sigma}")
        self.sigma = float(self.sigma)

    @property
    def h(self) -> int:
        return self.centers.shape[0]

    @property
    def n(self) -> int:
        return self.centers.shape[1]

    def copy(self) -> "MembershipGrid":
        return MembershipGrid(self.centers.copy(), self.sigma)


@dataclass(frozen=True)
class FiringStrengths:
    aggregates: np.ndarray
    normalized: np.ndarray


def _check_input(x, grid: MembershipGrid) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != grid.n:
        raise ValidationError(f"expected input of length {grid.n}, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise ValidationError(f"input must be finite, got {x}")
    return x


def fuzzify(x, grid: MembershipGrid) -> np.ndarray:
    """Membership levels ``mu[l, i] = exp(-(x_i - c_li)^2 / (2 sigma^2))``."""
    x = _check_input(x, grid)
    return np.exp(-((x - grid.centers) ** 2) / (2.0 * grid.sigma ** 2))


def aggregate(x, grid: MembershipGrid, stabilize: bool = False) -> np.ndarray:
    """Rule activations ``prod_i mu[l, i]``, computed from summed squared distances.

    With ``stabilize=True`` the smallest squared distance is subtracted before
    exponentiating, so the best-matching rule has activation 1. The common
    factor cancels in normalization and keeps the denominator away from zero.
    """
    x = _check_input(x, grid)
    sq = np.sum((x - grid.centers) ** 2, axis=1)
    if stabilize:
        sq = sq - sq.min()
    return np.exp(-sq / (2.0 * grid.sigma ** 2))


def forward(x, grid: MembershipGrid, w) -> tuple[float, FiringStrengths]:
    w = np.asarray(w, dtype=float).reshape(-1)
    if w.shape[0] != grid.h:
        raise ValidationError(f"expected {grid.h} weights, got {w.shape[0]}")
    if not np.all(np.isfinite(w)):
        raise ValidationError("weights must be finite")
    act = aggregate(x, grid, stabilize=True)
    phi = act / act.sum()
    return float(w @ phi), FiringStrengths(act, phi)
