"""Previous-occurrence array, brute-force oracle and the baseline index.

``C[q]`` is the largest ``p < q`` with ``s[p] == s[q]`` (0 if none). The
number of distinct symbols in ``s[i..j]`` equals the number of entries of
``C[i..j]`` that are smaller than ``i``: exactly the first occurrences.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import RangeError, ValidationError
from .space import SpaceReport, entropy_h0
from .wavelet import WaveletTree


@dataclass(frozen=True, eq=False)
class ColorString:
    symbols: np.ndarray
    sigma: int

    def __post_init__(self):
        arr = np.asarray(self.symbols, dtype=np.int64).ravel()
        object.__setattr__(self, "symbols", arr)
        if self.sigma < 0:
            raise ValidationError("sigma must be non-negative")
        if len(arr) and (arr.min() < 0 or arr.max() >= self.sigma):
            raise ValidationError(f"symbols must lie in [0, {self.sigma})")

    @classmethod
    def of(cls, symbols: Sequence[int] | np.ndarray, sigma: int | None = None) -> "ColorString":
        arr = np.asarray(symbols, dtype=np.int64).ravel()
        if sigma is None:
            sigma = int(arr.max()) + 1 if len(arr) else 0
        return cls(arr, sigma)

    @classmethod
    def from_text(cls, text: str) -> "ColorString":
        """Dense tokens in first-appearance order: "abracadabra" -> a=0, b=1, r=2, c=3, d=4."""
        ids: dict[str, int] = {}
        toks = [ids.setdefault(ch, len(ids)) for ch in text]
        return cls(np.asarray(toks, dtype=np.int64), len(ids))

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


def check_range(i: int, j: int, n: int) -> None:
    if not (1 <= i <= j <= n):
        raise RangeError(f"invalid range ({i}, {j}) for length {n}")


def build_prev_occ(s: ColorString | Sequence[int] | np.ndarray) -> np.ndarray:
    """The array ``C[1..n]`` as a 0-indexed int64 array (``C[q]`` at index ``q-1``)."""
    arr = s.symbols if isinstance(s, ColorString) else np.asarray(s, dtype=np.int64)
    n = len(arr)
    prev = np.zeros(n, dtype=np.int64)
    if n < 2:
        return prev
    order = np.argsort(arr, kind="stable")
    srt = arr[order]
    same = srt[1:] == srt[:-1]
    prev[order[1:][same]] = order[:-1][same] + 1
    return prev


def naive_distinct_count(s: ColorString | Sequence[int], i: int, j: int) -> int:
    syms = s.symbols if isinstance(s, ColorString) else s
    check_range(i, j, len(syms))
    return len(set(syms[i - 1:j].tolist() if isinstance(syms, np.ndarray) else syms[i - 1:j]))


class BaselineIndex:
    """One wavelet tree over ``C`` with universe ``n + 1``."""

    scheme = "baseline"

    def __init__(self, n: int, sigma: int, tree: WaveletTree, h0: float = 0.0):
        self.n = n
        self.sigma = sigma
        self.tree = tree
        self.h0 = h0

    @classmethod
    def build(cls, s: ColorString) -> "BaselineIndex":
        prev = build_prev_occ(s)
        return cls(s.n, s.sigma, WaveletTree.build(prev, s.n + 1), entropy_h0(s.symbols))

    def count(self, i: int, j: int) -> int:
        check_range(i, j, self.n)
        return self.tree._count_less(i - 1, j, i)

    def space_report(self) -> SpaceReport:
        return SpaceReport(
            self.scheme, self.n, self.sigma,
            components={"c_payload": self.tree.payload_bits,
                        "c_directory": self.tree.directory_bits},
            metrics={"h0": self.h0, "n_h0": self.n * self.h0},
        )


def baseline_count(index: BaselineIndex | WaveletTree, i: int, j: int) -> int:
    if isinstance(index, WaveletTree):
        check_range(i, j, index.length)
        return index.count_less_than(i, j, i)
    return index.count(i, j)
