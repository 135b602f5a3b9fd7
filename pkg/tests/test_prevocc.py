import numpy as np
import pytest

from colorcount.errors import RangeError, ValidationError
from colorcount.prevocc import (BaselineIndex, ColorString, baseline_count, build_prev_occ,
                                naive_distinct_count)
from colorcount.wavelet import build_wavelet
from oracles import distinct, prev_occ_rescan


def test_abracadabra(abra):
    assert abra.symbols.tolist() == [0, 1, 2, 0, 3, 0, 4, 0, 1, 2, 0]
    assert build_prev_occ(abra).tolist() == [0, 0, 0, 1, 0, 4, 0, 6, 2, 3, 8]


def test_trivial_strings():
    assert build_prev_occ(ColorString.of([0, 1, 2, 3, 4])).tolist() == [0] * 5
    assert build_prev_occ(ColorString.of([0, 0, 0, 0])).tolist() == [0, 1, 2, 3]
    assert build_prev_occ(ColorString.of([])).tolist() == []


def test_color_string_validation():
    with pytest.raises(ValidationError):
        ColorString(np.array([0, 3]), 3)


def test_naive_count(abra):
    assert naive_distinct_count(abra, 4, 8) == 3
    assert naive_distinct_count(ColorString.of([0] * 4), 1, 4) == 1
    for k in range(1, 12):
        assert naive_distinct_count(abra, k, k) == 1
    for bad in [(0, 3), (5, 4), (3, 12)]:
        with pytest.raises(RangeError):
            naive_distinct_count(abra, *bad)


def test_baseline_examples(abra):
    idx = BaselineIndex.build(abra)
    assert idx.count(4, 8) == 3
    assert idx.count(1, 11) == 5
    tree = build_wavelet(build_prev_occ(abra), 12)
    assert baseline_count(tree, 4, 8) == 3
    for k in range(1, 12):
        assert idx.count(k, k) == 1
    with pytest.raises(RangeError):
        idx.count(5, 4)


def test_prev_occ_matches_rescan():
    rng = np.random.default_rng(2)
    for _ in range(200):
        sigma = int(rng.choice([1, 2, 4, 16, 64]))
        s = rng.integers(0, sigma, size=int(rng.integers(0, 513)))
        prev = build_prev_occ(s).tolist()
        assert prev == prev_occ_rescan(s.tolist())
        for q, p in enumerate(prev, start=1):
            assert p < q
            if p:
                assert s[p - 1] == s[q - 1] and s[q - 1] not in s[p:q - 1]


def test_baseline_identity(small_corpus):
    for s, ranges, expected in small_corpus:
        idx = BaselineIndex.build(s)
        assert [idx.count(i, j) for i, j in ranges] == expected
        assert idx.count(1, s.n) == distinct(s.symbols.tolist(), 1, s.n)
