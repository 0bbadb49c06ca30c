import numpy as np
import pytest

from evofuzzy.errors import OracleInapplicableError
from evofuzzy.oracles import OracleResult, batch_least_squares, running_mean


def test_identity_regressors():
    np.testing.assert_allclose(batch_least_squares(np.eye(3), [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])


def test_ones_column_gives_mean():
    y = [1.0, 4.0, 7.0, 2.0]
    assert batch_least_squares(np.ones((4, 1)), y)[0] == pytest.approx(3.5)


def test_residual_orthogonal(rng):
    A = rng.normal(size=(50, 4))
    b = rng.normal(size=50)
    r = b - A @ batch_least_squares(A, b)
    assert np.max(np.abs(A.T @ r)) < 1e-9


def test_rank_deficient():
    A = np.ones((5, 2))
    with pytest.raises(OracleInapplicableError):
        batch_least_squares(A, np.arange(5.0))


def test_running_mean():
    assert running_mean([0.2, 0.4, 0.6]) == pytest.approx(0.4, abs=1e-15)
    assert running_mean([3.25]) == 3.25
    with pytest.raises(OracleInapplicableError):
        running_mean([])


def test_running_mean_uniform(rng):
    v = rng.uniform(size=1000)
    assert abs(running_mean(v) - 0.5) < 3 * np.sqrt(1 / 12 / 1000)


def test_oracle_result():
    r = OracleResult([1.0, 2.0], 1e-9, "hand-unrolled")
    assert r.matches([1.0, 2.0 + 1e-10])
    assert not r.matches([1.0, 2.1])
    with pytest.raises(ValueError):
        OracleResult(0.0, 0.0, "guess")
