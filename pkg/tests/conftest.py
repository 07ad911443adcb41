import random

import pytest

from kgraphs import samples

CORPUS_SEED = 1729
CORPUS_SIZE = 25


@pytest.fixture(scope="session")
def t1():
    return samples.t1()


@pytest.fixture(scope="session")
def flip2():
    return samples.flip2()


@pytest.fixture(scope="session")
def tors():
    return samples.tors()


@pytest.fixture(scope="session")
def corpus():
    """Fixtures plus 25 seeded random valid 2-graphs (no sources or sinks)."""
    return samples.corpus(seed=CORPUS_SEED, size=CORPUS_SIZE)


@pytest.fixture(scope="session")
def extended_corpus():
    """Corpus plus disconnected members."""
    return samples.extended_corpus(seed=CORPUS_SEED, size=CORPUS_SIZE)


@pytest.fixture()
def rng():
    return random.Random(20040206)
