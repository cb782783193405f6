import time

import pytest

from hkring import GiveUpError, sample_datum


def corpus_params(seed: int) -> tuple[int, int]:
    """Deterministic (m, n) schedule for the random suite."""
    n = seed % 3 + 1
    m = min(max(n + (seed % (8 - n - 1)), n), 7)
    return m, n


def build_corpus(target: int = 55, max_seed: int = 200):
    data = []
    for seed in range(max_seed):
        m, n = corpus_params(seed)
        try:
            d, _ = sample_datum(m, n, seed, max_attempts=300)
        except GiveUpError:
            continue
        data.append((seed, d))
        if len(data) >= target:
            break
    return data


_BUILD_SECONDS = {}


@pytest.fixture(scope="session")
def corpus():
    t0 = time.monotonic()
    data = build_corpus()
    _BUILD_SECONDS["corpus"] = time.monotonic() - t0
    assert len(data) >= 50
    return data


@pytest.fixture(scope="session")
def corpus_build_seconds(corpus):
    return _BUILD_SECONDS["corpus"]
