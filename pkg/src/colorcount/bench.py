"""Space/time benchmark over generated corpora.

CSV columns:

``corpus, n, sigma, scheme, h0, total_bits, payload_bits, bits_per_symbol,
answer_sum`` and, unless timing is disabled, ``build_ms`` (median build
time) and ``query_us`` (median over runs of the mean time per query).
``answer_sum`` is the sum of all query answers, a cheap cross-scheme check.
"""
from __future__ import annotations

import csv
import statistics
import sys
import time
from typing import Iterable

import numpy as np

from .corpus import CORPORA, generate, random_ranges
from .schemes import SCHEMES, build_index

BASE_COLUMNS = ["corpus", "n", "sigma", "scheme", "h0", "total_bits",
                "payload_bits", "bits_per_symbol", "answer_sum"]
TIMING_COLUMNS = ["build_ms", "query_us"]


def _payload(report) -> int:
    return sum(v for k, v in report.components.items()
               if "directory" not in k and "overhead" not in k)


def run_bench(sizes: Iterable[int], corpora: Iterable[str] = CORPORA,
              schemes: Iterable[str] = SCHEMES, sigma: int = 64, seed: int = 0,
              queries: int = 1000, repeat: int = 5, timing: bool = True,
              delta: float | None = None) -> list[dict]:
    rows = []
    corpora = list(corpora)
    for c_idx, kind in enumerate(corpora):
        for n in sizes:
            rng = np.random.default_rng([seed, c_idx, n])
            s = generate(kind, n, sigma, rng)
            ranges = random_ranges(n, queries, rng)
            for scheme in schemes:
                builds = []
                for _ in range(repeat if timing else 1):
                    t0 = time.perf_counter()
                    index = build_index(scheme, s, delta)
                    builds.append(time.perf_counter() - t0)
                answers = [index.count(i, j) for i, j in ranges]
                report = index.space_report()
                row = {
                    "corpus": kind, "n": n, "sigma": s.sigma, "scheme": scheme,
                    "h0": f"{report.metrics.get('h0', 0.0):.6f}",
                    "total_bits": report.total_bits,
                    "payload_bits": _payload(report),
                    "bits_per_symbol": f"{report.total_bits / n:.4f}",
                    "answer_sum": sum(answers),
                }
                if timing:
                    runs = []
                    for _ in range(repeat):
                        t0 = time.perf_counter()
                        for i, j in ranges:
                            index.count(i, j)
                        runs.append((time.perf_counter() - t0) / max(1, len(ranges)))
                    row["build_ms"] = f"{statistics.median(builds) * 1e3:.3f}"
                    row["query_us"] = f"{statistics.median(runs) * 1e6:.3f}"
                rows.append(row)
    return rows


def write_csv(rows: list[dict], out=None, timing: bool = True) -> None:
    columns = BASE_COLUMNS + (TIMING_COLUMNS if timing else [])
    writer = csv.DictWriter(out or sys.stdout, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
