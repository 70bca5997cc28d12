import numpy as np
import pytest


def random_symmetric_row(n: int, rng: np.random.Generator, binary: bool = False) -> np.ndarray:
    """Random first row with the circulant symmetry c_j = c_{N-j}."""
    row = np.zeros(n)
    half = rng.integers(0, 2, n // 2 + 1).astype(float) if binary else rng.uniform(-1.0, 1.0, n // 2 + 1)
    row[: n // 2 + 1] = half
    row[n // 2 + 1:] = row[1:(n + 1) // 2][::-1]
    return row


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
