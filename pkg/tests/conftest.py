import numpy as np
import pytest

from qsuff.datasets import diagonal_algebra, make_corpus, pair_a, pair_b

CORPUS_SIZE = 200
CORPUS_SEED = 20100317


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def states_a():
    return pair_a()


@pytest.fixture
def states_b():
    return pair_b()


@pytest.fixture
def diag2():
    return diagonal_algebra(2)


@pytest.fixture(scope="session")
def corpus():
    return make_corpus(CORPUS_SIZE, seed=CORPUS_SEED)
