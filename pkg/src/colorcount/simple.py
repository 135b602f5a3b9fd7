"""Fixed-size blocking with a two-way encoding of ``C``.

``s`` is cut into blocks of ``b`` positions. An entry whose previous
occurrence lies in its own block is stored as a ``ceil(log2 b)``-bit offset
in ``local_tree``; every other entry (including ``C[q] = 0``) keeps its
absolute value in ``global_tree``. A marker bitvector records which tree
owns each position.

Two degenerate regimes are dispatched away from blocking: a tiny alphabet is
answered by per-symbol rank over ``s``, and an alphabet so large that
``b >= n`` falls back to the single-tree baseline.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitvector import RankSelectBitvector
from .errors import ValidationError
from .prevocc import ColorString, build_prev_occ, check_range
from .space import SpaceReport, entropy_h0
from .wavelet import WaveletTree, levels_for

BASELINE = "baseline"
SMALL_ALPHABET = "small_alphabet"
BLOCKED = "blocked"
MODES = (BASELINE, SMALL_ALPHABET, BLOCKED)


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def natural_block_len(n: int, sigma: int) -> int:
    b = math.ceil(sigma * math.log2(n)) if n > 1 else 1
    return min(max(b, 2), n)


def choose_mode(n: int, sigma: int) -> str:
    lg = ceil_log2(n)
    if sigma < lg:
        return SMALL_ALPHABET
    if sigma * lg >= n:
        return BASELINE
    return BLOCKED


class SmallAlphabetIndex:
    """Wavelet tree over ``s`` itself; a query descends into every non-empty node,
    so it costs O(d log sigma) for d distinct symbols in the range."""

    def __init__(self, sigma: int, tree: WaveletTree):
        self.sigma = sigma
        self.tree = tree

    @classmethod
    def build(cls, s: ColorString) -> "SmallAlphabetIndex":
        return cls(s.sigma, WaveletTree.build(s.symbols, max(1, s.sigma)))

    def count(self, i: int, j: int) -> int:
        check_range(i, j, self.tree.length)
        return self.tree._count_distinct(i - 1, j)


@dataclass
class SimpleBlockIndex:
    n: int
    sigma: int
    mode: str
    block_len: int = 0
    marker: RankSelectBitvector | None = None
    local_tree: WaveletTree | None = None
    global_tree: WaveletTree | None = None
    small: SmallAlphabetIndex | None = None
    h0: float = 0.0

    scheme = "simple"

    def count(self, i: int, j: int) -> int:
        check_range(i, j, self.n)
        if self.mode == SMALL_ALPHABET:
            return self.small.count(i, j)
        if self.mode == BASELINE:
            return self.global_tree._count_less(i - 1, j, i)
        b = self.block_len
        start = (i - 1) // b * b + 1
        hi = min(j, start + b - 1)
        rank1 = self.marker._rank1
        m_lo = rank1(i - 1)
        local = self.local_tree._count_less(m_lo, rank1(hi), i - start)
        g_lo = i - 1 - m_lo
        g_hi = j - rank1(j)
        return local + self.global_tree._count_less(g_lo, g_hi, i)

    def space_report(self) -> SpaceReport:
        comps: dict[str, int] = {}
        if self.mode == SMALL_ALPHABET:
            comps["s_payload"] = self.small.tree.payload_bits
            comps["s_directory"] = self.small.tree.directory_bits
        elif self.mode == BASELINE:
            comps["c_payload"] = self.global_tree.payload_bits
            comps["c_directory"] = self.global_tree.directory_bits
        else:
            comps["marker"] = self.marker.payload_bits
            comps["marker_directory"] = self.marker.directory_bits
            comps["local_payload"] = self.local_tree.payload_bits
            comps["local_directory"] = self.local_tree.directory_bits
            comps["global_payload"] = self.global_tree.payload_bits
            comps["global_directory"] = self.global_tree.directory_bits
        n, sigma = self.n, self.sigma
        metrics = {"h0": self.h0, "n_h0": n * self.h0}
        if n > 1 and sigma > 0:
            loglog = math.log2(max(1.0, math.log2(n)))
            metrics["n_log_sigma_plus_n_loglog_n"] = n * math.log2(max(sigma, 2)) + n * loglog
        if self.mode == BLOCKED:
            metrics["block_len"] = float(self.block_len)
            metrics["payload_bound"] = float(self.payload_bound())
        return SpaceReport(self.scheme, n, sigma, comps, metrics)

    def payload_bound(self) -> int:
        """Upper bound on blocked-mode payload bits, from per-block chain heads."""
        b = self.block_len
        zero_count = self.global_tree._rank(0, self.global_tree.length)
        heads = self.sigma * (-(-self.n // b)) + zero_count
        return self.n * (ceil_log2(b) + 1) + heads * levels_for(self.n + 1)

    def payload_bits(self) -> int:
        comps = self.space_report().components
        return sum(v for k, v in comps.items() if "directory" not in k)


def build_simple(s: ColorString, block_len_override: int | None = None,
                 mode: str | None = None) -> SimpleBlockIndex:
    """Build the blocked index.

    ``block_len_override`` forces blocked mode with the given block length;
    ``mode`` forces one of ``baseline``, ``small_alphabet`` or ``blocked``
    regardless of the dispatch thresholds.
    """
    n = s.n
    if n < 1:
        raise ValidationError("cannot index an empty string")
    if block_len_override is not None and block_len_override < 1:
        raise ValidationError(f"block length must be >= 1, got {block_len_override}")
    if mode is not None and mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}")
    if mode is None:
        mode = BLOCKED if block_len_override is not None else choose_mode(n, s.sigma)
    h0 = entropy_h0(s.symbols)
    if mode == SMALL_ALPHABET:
        return SimpleBlockIndex(n, s.sigma, mode, small=SmallAlphabetIndex.build(s), h0=h0)
    prev = build_prev_occ(s)
    if mode == BASELINE:
        return SimpleBlockIndex(n, s.sigma, mode, global_tree=WaveletTree.build(prev, n + 1), h0=h0)

    b = block_len_override if block_len_override is not None else natural_block_len(n, s.sigma)
    b = min(b, n)
    q = np.arange(1, n + 1, dtype=np.int64)
    start = (q - 1) // b * b + 1
    local = (prev > 0) & (prev >= start)
    return SimpleBlockIndex(
        n, s.sigma, mode, block_len=b,
        marker=RankSelectBitvector.from_bools(local),
        local_tree=WaveletTree.build(prev[local] - start[local], b),
        global_tree=WaveletTree.build(prev[~local], n + 1),
        h0=h0,
    )


def simple_count(index: SimpleBlockIndex, i: int, j: int) -> int:
    return index.count(i, j)


def small_alphabet_count(index: SmallAlphabetIndex, i: int, j: int) -> int:
    return index.count(i, j)


def simple_space_report(index: SimpleBlockIndex) -> SpaceReport:
    return index.space_report()
