import numpy as np
import pytest

from etf_forge.hadamard import paley_skew_hadamard


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def paley12():
    return paley_skew_hadamard(11)


def random_hermitian(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (X + X.conj().T) / 2.0
