"""Static wavelet tree over integers in ``[0, U)``, stored level-wise.

Each of the ``ceil(log2 U)`` levels is one bitvector spanning the whole
sequence. Level ``l`` holds bit ``l`` (most significant first) of every
value, in the order produced by stably partitioning the previous level by
its bit (zeros first). Pointer-free, so payload is exactly
``length * ceil(log2 U)`` bits.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .bitvector import RankSelectBitvector
from .errors import NotFoundError, RangeError, ValidationError


def levels_for(universe: int) -> int:
    return (universe - 1).bit_length()


class WaveletTree:
    __slots__ = ("universe", "length", "levels", "_zeros", "_nlev")

    def __init__(self, universe: int, length: int, levels: list[RankSelectBitvector]):
        self.universe = universe
        self.length = length
        self.levels = levels
        self._nlev = len(levels)
        self._zeros = [bv.zeros for bv in levels]

    @classmethod
    def build(cls, seq: Sequence[int] | np.ndarray, universe: int) -> "WaveletTree":
        if universe < 1:
            raise ValidationError(f"universe must be >= 1, got {universe}")
        cur = np.asarray(seq, dtype=np.int64).ravel()
        if len(cur) and (cur.min() < 0 or cur.max() >= universe):
            bad = cur[(cur < 0) | (cur >= universe)][0]
            raise ValidationError(f"value {bad} outside [0, {universe})")
        nlev = levels_for(universe)
        levels = []
        for lev in range(nlev):
            bits = ((cur >> (nlev - 1 - lev)) & 1).astype(bool)
            levels.append(RankSelectBitvector.from_bools(bits))
            cur = np.concatenate((cur[~bits], cur[bits]))
        return cls(universe, len(cur), levels)

    def __len__(self) -> int:
        return self.length

    # -- unchecked, 0-based half-open -------------------------------------

    def _count_less(self, a: int, b: int, x: int) -> int:
        """Values < x among positions [a, b)."""
        if a >= b or x <= 0:
            return 0
        nlev = self._nlev
        if x >> nlev:
            return b - a
        res = 0
        zeros = self._zeros
        for lev, bv in enumerate(self.levels):
            r1a = bv._rank1(a)
            r1b = bv._rank1(b)
            if (x >> (nlev - 1 - lev)) & 1:
                res += (b - a) - (r1b - r1a)
                a = zeros[lev] + r1a
                b = zeros[lev] + r1b
            else:
                a -= r1a
                b -= r1b
            if a >= b:
                break
        return res

    def _count_distinct(self, a: int, b: int) -> int:
        """Distinct values among positions [a, b), visiting only non-empty nodes."""
        if a >= b:
            return 0
        ranges = [(a, b)]
        zeros = self._zeros
        for lev, bv in enumerate(self.levels):
            rank1 = bv._rank1
            z = zeros[lev]
            nxt = []
            for a, b in ranges:
                r1a, r1b = rank1(a), rank1(b)
                if b - a > r1b - r1a:
                    nxt.append((a - r1a, b - r1b))
                if r1b > r1a:
                    nxt.append((z + r1a, z + r1b))
            ranges = nxt
        return len(ranges)

    def _range_of(self, sym: int, a: int, b: int) -> tuple[int, int]:
        nlev = self._nlev
        zeros = self._zeros
        for lev, bv in enumerate(self.levels):
            if (sym >> (nlev - 1 - lev)) & 1:
                a = zeros[lev] + bv._rank1(a)
                b = zeros[lev] + bv._rank1(b)
            else:
                a -= bv._rank1(a)
                b -= bv._rank1(b)
        return a, b

    def _rank(self, sym: int, pos: int) -> int:
        a, b = self._range_of(sym, 0, pos)
        return b - a

    def _access(self, idx: int) -> int:
        val = 0
        zeros = self._zeros
        for lev, bv in enumerate(self.levels):
            bit = bv._access(idx)
            val = (val << 1) | bit
            idx = zeros[lev] + bv._rank1(idx) if bit else idx - bv._rank1(idx)
        return val

    # -- public API --------------------------------------------------------

    def access(self, idx: int) -> int:
        """Value at 1-based position ``idx``."""
        if not 1 <= idx <= self.length:
            raise RangeError(f"position {idx} outside 1..{self.length}")
        return self._access(idx - 1)

    def rank(self, sym: int, pos: int) -> int:
        """Occurrences of ``sym`` among the first ``pos`` entries."""
        if not 0 <= pos <= self.length:
            raise RangeError(f"prefix length {pos} outside 0..{self.length}")
        if not 0 <= sym < self.universe:
            return 0
        return self._rank(sym, pos)

    def select(self, sym: int, k: int) -> int:
        """1-based position of the k-th occurrence of ``sym``."""
        if not 0 <= sym < self.universe or k < 1:
            raise NotFoundError(f"no occurrence {k} of symbol {sym}")
        a, b = self._range_of(sym, 0, self.length)
        if k > b - a:
            raise NotFoundError(f"symbol {sym} occurs {b - a} times, asked for {k}")
        p = a + k - 1
        nlev = self._nlev
        for lev in range(nlev - 1, -1, -1):
            bv = self.levels[lev]
            if (sym >> (nlev - 1 - lev)) & 1:
                p = bv._select1(p - self._zeros[lev] + 1)
            else:
                p = bv._select0(p + 1)
        return p + 1

    def count_less_than(self, l: int, r: int, x: int) -> int:
        """Entries in 1-based inclusive ``[l..r]`` with value < ``x``.

        An empty range (``l > r``) counts zero.
        """
        if l > r:
            return 0
        if l < 1 or r > self.length:
            raise RangeError(f"range [{l}..{r}] outside 1..{self.length}")
        return self._count_less(l - 1, r, x)

    def to_list(self) -> list[int]:
        return [self._access(i) for i in range(self.length)]

    @property
    def payload_bits(self) -> int:
        return self.length * self._nlev

    @property
    def directory_bits(self) -> int:
        return sum(bv.directory_bits for bv in self.levels)

    def __repr__(self) -> str:
        return f"WaveletTree(universe={self.universe}, length={self.length}, levels={self._nlev})"


def build_wavelet(seq: Sequence[int] | np.ndarray, universe: int) -> WaveletTree:
    return WaveletTree.build(seq, universe)
