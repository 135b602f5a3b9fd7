"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run alone with ``pytest tests/test_acceptance.py -s``; a PASS/FAIL line per
criterion is printed as it finishes and again in the terminal summary.
"""
import math
import statistics
import time

import numpy as np
import pytest

from colorcount.cli import main
from colorcount.dynamic import BALANCED, HUFFMAN
from colorcount.multisize import (
    build_ladder, build_multisize, classify_all, default_delta, multisize_count,
)
from colorcount.prevocc import (
    BaselineIndex, ColorString, baseline_count, build_prev_occ, naive_distinct_count,
)
from colorcount.schemes import SCHEMES, build_index
from colorcount.serialize import dumps, loads
from colorcount.simple import BASELINE, BLOCKED, SMALL_ALPHABET, build_simple, simple_count
from conftest import ACCEPTANCE, make_corpus
from drivers import run_bitvector_script, run_edit_script, run_wavelet_script
from oracles import brute_classes, prev_occ_rescan

DELTAS = (None, 0.5, 1.0, 2.0)


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)
    print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    return make_corpus(1000, 2048, 100, seed=2024)


def mismatches(corpus, build, count):
    bad = 0
    for s, ranges, expected in corpus:
        index = build(s)
        bad += sum(count(index, i, j) != e for (i, j), e in zip(ranges, expected))
    return bad


def test_criterion_1_baseline(corpus):
    t0 = time.perf_counter()
    bad = mismatches(corpus, BaselineIndex.build, baseline_count)
    # the identity itself, checked against a second, independent oracle
    s, ranges, expected = corpus[0]
    bad += sum(naive_distinct_count(s, i, j) != e for (i, j), e in zip(ranges, expected))
    record(1, bad == 0, f"{bad} mismatches over {len(corpus)} strings x 100 ranges "
                        f"({time.perf_counter() - t0:.1f}s)")


def test_criterion_2_simple(corpus):
    t0 = time.perf_counter()
    configs = {
        "dispatch": lambda s: build_simple(s),
        BASELINE: lambda s: build_simple(s, mode=BASELINE),
        SMALL_ALPHABET: lambda s: build_simple(s, mode=SMALL_ALPHABET),
        BLOCKED: lambda s: build_simple(s, mode=BLOCKED),
    }
    for b in (2, 4, 16, 64):
        configs[f"b={b}"] = lambda s, b=b: build_simple(s, block_len_override=b)
    bad = {name: mismatches(corpus, build, simple_count) for name, build in configs.items()}
    total = sum(bad.values())
    record(2, total == 0, f"mismatches per configuration {bad} ({time.perf_counter() - t0:.1f}s)")


def test_criterion_3_multisize(corpus):
    t0 = time.perf_counter()
    bad = {str(d or "default"): mismatches(corpus, lambda s, d=d: build_multisize(s, d),
                                            multisize_count)
           for d in DELTAS}
    record(3, sum(bad.values()) == 0,
           f"mismatches per delta {bad} ({time.perf_counter() - t0:.1f}s)")


def test_criterion_4_classification(corpus):
    strings = [s for s, _, _ in corpus if s.n <= 512]
    wrong = out_of_range = entries = 0
    for s in strings:
        prev = build_prev_occ(s)
        for d in DELTAS:
            ladder = build_ladder(s.n, d if d is not None else default_delta(s.n))
            t, offsets = classify_all(prev, ladder)
            cls, start = brute_classes(prev_occ_rescan(s.symbols.tolist()), ladder.sizes, s.n)
            t, offsets = t.tolist(), offsets.tolist()
            for q in range(s.n):
                entries += 1
                if cls[q] == 0:
                    wrong += t[q] != 0
                    continue
                b = ladder.sizes[t[q]]
                wrong += t[q] != cls[q] or offsets[q] != prev[q] - start[q]
                out_of_range += not 0 <= offsets[q] < b
    record(4, wrong == 0 and out_of_range == 0,
           f"{wrong} misclassified, {out_of_range} offsets out of range "
           f"over {entries} entries of {len(strings)} strings")


def test_criterion_5_space(corpus):
    entry_bad = agg_bad = 0
    worst_ratio = 0.0
    for s, _, _ in corpus:
        prev = build_prev_occ(s).tolist()
        for d in DELTAS:
            index = build_multisize(s, d)
            delta = index.delta
            t = index.t_tree.to_list()
            for q, (p, k) in enumerate(zip(prev, t), start=1):
                if k == 0:
                    continue
                lhs = math.log2(index.ladder.sizes[k])
                entry_bad += lhs > (1 + delta) * (math.log2(q - p) + 1) + 2
            bound = (1 + delta) * s.n * index.h0 + 4 * s.n
            used = index.offset_payload_bits()
            agg_bad += used > bound
            worst_ratio = max(worst_ratio, used / bound)
    record(5, entry_bad == 0 and agg_bad == 0,
           f"{entry_bad} per-entry and {agg_bad} aggregate violations; "
           f"worst payload/bound {worst_ratio:.3f}")


def median_query_us(index, ranges):
    times = []
    clock = time.perf_counter
    for i, j in ranges:
        t0 = clock()
        index.count(i, j)
        times.append(clock() - t0)
    return statistics.median(times) * 1e6


@pytest.mark.slow
def test_criterion_6_query_scaling():
    rng = np.random.default_rng(6)
    cases = {}
    for n in (1 << 14, 1 << 18):
        s = ColorString(rng.integers(0, 64, size=n), 64)
        a = rng.integers(1, n + 1, size=10_000)
        b = rng.integers(1, n + 1, size=10_000)
        ranges = list(zip(np.minimum(a, b).tolist(), np.maximum(a, b).tolist()))
        for scheme in ("baseline", "simple", "multisize"):
            cases[scheme, n] = (build_index(scheme, s), ranges)
    # alternate sizes over a few rounds so warm-up and clock drift hit both alike
    medians = {key: math.inf for key in cases}
    for _ in range(3):
        for key, (index, ranges) in cases.items():
            medians[key] = min(medians[key], median_query_us(index, ranges))
    ratios = {sc: medians[sc, 1 << 18] / medians[sc, 1 << 14]
              for sc in ("baseline", "simple", "multisize")}
    detail = ", ".join(f"{sc} {medians[sc, 1 << 14]:.1f}->{medians[sc, 1 << 18]:.1f}us "
                       f"(x{r:.2f})" for sc, r in ratios.items())
    record(6, all(r < 2.5 for r in ratios.values()), detail)


def test_criterion_7_dynamic():
    t0 = time.perf_counter()
    bad_c = 0
    for seed in range(200):
        idx, ref = run_edit_script(seed)  # per-count checks assert inside
        bad_c += idx.decode_prev_occ() != build_prev_occ(np.asarray(ref)).tolist()
    record(7, bad_c == 0, f"200 scripts x 300 ops, {bad_c} final C mismatches "
                          f"({time.perf_counter() - t0:.1f}s)")


def test_criterion_8_substrate():
    bv = run_bitvector_script(10_000, seed=8)
    heights = [f"bitvector h={bv.height()} bound={bv.height_bound():.1f}"]
    for shape in (BALANCED, HUFFMAN):
        w = run_wavelet_script(10_000, 8, shape)
        h = max(b.height() for b in w.bitvectors())
        heights.append(f"{shape} wavelet max h={h}")
    record(8, True, "10000 ops each matched; " + ", ".join(heights))


def test_criterion_9_serialization(tmp_path):
    rng = np.random.default_rng(9)
    bad_trip = bad_exit = 0
    for idx in range(50):
        scheme = SCHEMES[idx % len(SCHEMES)]
        n = int(rng.integers(1, 600))
        sigma = int(rng.choice([1, 2, 4, 16, 64, 256]))
        s = ColorString(rng.integers(0, sigma, size=n), sigma)
        index = build_index(scheme, s)
        buf = dumps(index)
        back, _ = loads(buf)
        a = rng.integers(1, n + 1, size=50)
        b = rng.integers(1, n + 1, size=50)
        ranges = list(zip(np.minimum(a, b).tolist(), np.maximum(a, b).tolist()))
        bad_trip += (dumps(back) != buf or back.scheme != scheme
                     or [back.count(i, j) for i, j in ranges]
                     != [index.count(i, j) for i, j in ranges])
        # corrupt magic, version, scheme tag and n in turn
        for offset in (0, 4, 6, 7):
            data = bytearray(buf)
            data[offset] ^= 0x5A
            path = tmp_path / f"c{idx}_{offset}.ccs"
            path.write_bytes(bytes(data))
            bad_exit += main(["stats", str(path)]) != 4
    record(9, bad_trip == 0 and bad_exit == 0,
           f"{bad_trip} round-trip failures over 50 indexes, "
           f"{bad_exit} corrupted headers not rejected with exit 4")
