import numpy as np
import pytest

from colorcount.prevocc import ColorString

SIGMAS = (1, 2, 4, 16, 64, 256)


def make_string(rng, n, sigma, dist):
    if dist == "zipf":
        w = 1.0 / np.arange(1, sigma + 1)
        syms = rng.choice(sigma, size=n, p=w / w.sum())
    else:
        syms = rng.integers(0, sigma, size=n)
    return ColorString(syms, sigma)


def make_corpus(count, max_n, queries, seed, sigmas=SIGMAS):
    """``count`` strings with ``queries`` ranges each and set-scan answers."""
    rng = np.random.default_rng(seed)
    corpus = []
    for idx in range(count):
        sigma = sigmas[idx % len(sigmas)]
        dist = "zipf" if (idx // len(sigmas)) % 2 else "uniform"
        n = int(rng.integers(1, max_n + 1))
        s = make_string(rng, n, sigma, dist)
        a = rng.integers(1, n + 1, size=queries)
        b = rng.integers(1, n + 1, size=queries)
        lo, hi = np.minimum(a, b).tolist(), np.maximum(a, b).tolist()
        syms = s.symbols.tolist()
        expected = [len(set(syms[i - 1:j])) for i, j in zip(lo, hi)]
        corpus.append((s, list(zip(lo, hi)), expected))
    return corpus


@pytest.fixture(scope="session")
def small_corpus():
    return make_corpus(120, 400, 40, seed=7)


@pytest.fixture
def abra():
    return ColorString.from_text("abracadabra")


# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
