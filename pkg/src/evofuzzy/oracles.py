"""Independent reference computations used to check the online learners.

Nothing here shares code with the main update paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OracleInapplicableError

PROVENANCES = ("batch-least-squares", "running-mean", "fine-step-integration", "hand-unrolled")


@dataclass(frozen=True)
class OracleResult:
    expected: object
    tolerance: float
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def matches(self, actual) -> bool:
        diff = np.abs(np.asarray(actual, dtype=float) - np.asarray(self.expected, dtype=float))
        return bool(np.all(diff <= self.tolerance))


def batch_least_squares(regressors, targets) -> np.ndarray:
    """Solve the normal equations ``A^T A w = A^T b``."""
    A = np.asarray(regressors, dtype=float)
    b = np.asarray(targets, dtype=float).reshape(-1)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise OracleInapplicableError(f"shape mismatch: {A.shape} vs {b.shape}")
    if A.shape[0] < A.shape[1] or np.linalg.matrix_rank(A) < A.shape[1]:
        raise OracleInapplicableError("regressor matrix is not full column rank")
    return np.linalg.solve(A.T @ A, A.T @ b)


def running_mean(values) -> float:
    values = list(values)
    if not values:
        raise OracleInapplicableError("mean of an empty list")
    return math.fsum(values) / len(values)


def euler_mackey_glass(mg_beta, mg_gamma, mg_n, tau, x0, count, substeps=10000):
    """Brute-force explicit Euler with ``substeps`` steps per unit time.

    Delayed values come from the nearest stored grid point. Returns samples
    at t = 0, 1, ..., count - 1.
    """
    h = 1.0 / substeps
    d = int(round(tau * substeps))
    total = (count - 1) * substeps
    xs = [0.0] * (total + 1)
    xs[0] = x0
    for j in range(total):
        xd = xs[j - d] if j - d >= 0 else x0
        xs[j + 1] = xs[j] + h * (mg_beta * xd / (1.0 + xd ** mg_n) - mg_gamma * xs[j])
    return np.array(xs[::substeps])
