"""Dynamic wavelet tree over ``[0, U)`` with balanced or Huffman shape.

Nodes are addressed by ``(depth, prefix)`` of the code path and created on
first use, so sparse universes (large offset blocks) cost nothing for
unused subtrees. A balanced tree uses fixed-width binary codes and is order
preserving; a Huffman tree takes its code table from symbol weights given
at construction and keeps it frozen afterwards.
"""
from __future__ import annotations

import heapq
from itertools import count
from typing import Iterable, Sequence

from ..errors import NotFoundError, RangeError, ValidationError
from ..wavelet import levels_for
from .bitvector import DynamicBitvector, default_capacity

BALANCED = "balanced"
HUFFMAN = "huffman"


class _Codec:
    """Code table plus per-node symbol span, for either shape."""

    def __init__(self, universe: int, shape: str, weights: Sequence[int] | None):
        if universe < 1:
            raise ValidationError(f"universe must be >= 1, got {universe}")
        self.universe = universe
        self.shape = shape
        if shape == BALANCED:
            self.depth = levels_for(universe)
            return
        if shape != HUFFMAN:
            raise ValidationError(f"unknown shape {shape!r}")
        weights = list(weights) if weights is not None else [1] * universe
        if len(weights) != universe:
            raise ValidationError("need one weight per symbol")
        self.codes = self._huffman(weights)
        self.spans: dict[tuple[int, int], tuple[int, int]] = {}
        self.leaves: dict[tuple[int, int], int] = {}
        for sym, (val, ln) in enumerate(self.codes):
            self.leaves[(ln, val)] = sym
            for d in range(ln + 1):
                key = (d, val >> (ln - d))
                lo, hi = self.spans.get(key, (sym, sym))
                self.spans[key] = (min(lo, sym), max(hi, sym))

    @staticmethod
    def _huffman(weights: list[int]) -> list[tuple[int, int]]:
        if len(weights) == 1:
            return [(0, 0)]
        tie = count()
        heap = [(w, next(tie), (sym,)) for sym, w in enumerate(weights)]
        heapq.heapify(heap)
        codes = [[0, 0] for _ in weights]
        while len(heap) > 1:
            w0, _, left = heapq.heappop(heap)
            w1, _, right = heapq.heappop(heap)
            for sym in left:
                codes[sym][1] += 1
            for sym in right:
                codes[sym][0] |= 1 << codes[sym][1]
                codes[sym][1] += 1
            heapq.heappush(heap, (w0 + w1, next(tie), left + right))
        return [(v, ln) for v, ln in codes]

    def code(self, sym: int) -> tuple[int, int]:
        if self.shape == BALANCED:
            return sym, self.depth
        return self.codes[sym]

    def span(self, d: int, prefix: int) -> tuple[int, int]:
        if self.shape == BALANCED:
            shift = self.depth - d
            return prefix << shift, min(((prefix + 1) << shift) - 1, self.universe - 1)
        return self.spans[(d, prefix)]

    def leaf(self, d: int, prefix: int) -> int | None:
        if self.shape == BALANCED:
            return prefix if d == self.depth else None
        return self.leaves.get((d, prefix))


class DynamicWaveletTree:
    """Mutable integer sequence with access/rank/select/count_less_than.

    Positions are 1-based and ranks take a prefix length; underscore methods
    are the 0-based unchecked forms.
    """

    def __init__(self, universe: int, shape: str = BALANCED,
                 weights: Sequence[int] | None = None, capacity: int | None = None):
        self.codec = _Codec(universe, shape, weights)
        self.universe = universe
        self.shape = shape
        self.length = 0
        self.capacity = capacity
        self._nodes: dict[tuple[int, int], DynamicBitvector] = {}

    @classmethod
    def from_sequence(cls, seq: Iterable[int], universe: int, shape: str = BALANCED,
                      weights: Sequence[int] | None = None) -> "DynamicWaveletTree":
        seq = [int(v) for v in seq]
        tree = cls(universe, shape, weights, capacity=default_capacity(len(seq)))
        for v in seq:
            tree._check_sym(v)
        tree.length = len(seq)
        codes = [tree.codec.code(v) for v in seq]
        stack = [(0, 0, list(range(len(seq))))]
        while stack:
            d, prefix, items = stack.pop()
            if not items or tree.codec.leaf(d, prefix) is not None:
                continue
            bits = [(codes[i][0] >> (codes[i][1] - 1 - d)) & 1 for i in items]
            tree._nodes[(d, prefix)] = DynamicBitvector(bits, tree.capacity)
            zeros = [i for i, b in zip(items, bits) if not b]
            ones = [i for i, b in zip(items, bits) if b]
            stack.append((d + 1, prefix << 1, zeros))
            stack.append((d + 1, (prefix << 1) | 1, ones))
        return tree

    def __len__(self) -> int:
        return self.length

    def _check_sym(self, sym: int) -> None:
        if not 0 <= sym < self.universe:
            raise ValidationError(f"symbol {sym} outside [0, {self.universe})")

    def _node(self, d: int, prefix: int) -> DynamicBitvector:
        bv = self._nodes.get((d, prefix))
        if bv is None:
            bv = self._nodes[(d, prefix)] = DynamicBitvector(capacity=self.capacity)
        return bv

    # -- 0-based core ------------------------------------------------------

    def _insert(self, pos: int, sym: int) -> None:
        val, ln = self.codec.code(sym)
        prefix = 0
        for d in range(ln):
            bit = (val >> (ln - 1 - d)) & 1
            bv = self._node(d, prefix)
            bv._insert(pos, bit)
            pos = bv._rank(bit, pos)
            prefix = (prefix << 1) | bit
        self.length += 1

    def _delete(self, pos: int) -> int:
        d = prefix = 0
        leaf = self.codec.leaf
        while (sym := leaf(d, prefix)) is None:
            bv = self._nodes[(d, prefix)]
            bit = bv._access(pos)
            nxt = bv._rank(bit, pos)
            bv._delete(pos)
            pos = nxt
            d += 1
            prefix = (prefix << 1) | bit
        self.length -= 1
        return sym

    def _access(self, pos: int) -> int:
        d = prefix = 0
        leaf = self.codec.leaf
        while (sym := leaf(d, prefix)) is None:
            bv = self._nodes[(d, prefix)]
            bit = bv._access(pos)
            pos = bv._rank(bit, pos)
            d += 1
            prefix = (prefix << 1) | bit
        return sym

    def _rank(self, sym: int, pos: int) -> int:
        val, ln = self.codec.code(sym)
        prefix = 0
        nodes = self._nodes
        for d in range(ln):
            bv = nodes.get((d, prefix))
            if bv is None:
                return 0
            bit = (val >> (ln - 1 - d)) & 1
            pos = bv._rank(bit, pos)
            if not pos:
                return 0
            prefix = (prefix << 1) | bit
        return pos

    def _count_less(self, a: int, b: int, x: int) -> int:
        if a >= b or x <= 0:
            return 0
        if x >= self.universe:
            return b - a
        return self._cl(0, 0, a, b, x)

    def _cl(self, d: int, prefix: int, a: int, b: int, x: int) -> int:
        lo, hi = self.codec.span(d, prefix)
        if hi < x:
            return b - a
        if lo >= x:
            return 0
        bv = self._nodes[(d, prefix)]
        r1a, r1b = bv._rank1(a), bv._rank1(b)
        res = 0
        if (a - r1a) < (b - r1b):
            res += self._cl(d + 1, prefix << 1, a - r1a, b - r1b, x)
        if r1a < r1b:
            res += self._cl(d + 1, (prefix << 1) | 1, r1a, r1b, x)
        return res

    # -- public API ----------------------------------------------------------

    def insert(self, pos: int, sym: int) -> None:
        if not 1 <= pos <= self.length + 1:
            raise RangeError(f"insert position {pos} outside 1..{self.length + 1}")
        self._check_sym(sym)
        self._insert(pos - 1, sym)

    def append(self, sym: int) -> None:
        self.insert(self.length + 1, sym)

    def delete(self, pos: int) -> int:
        self._check_pos(pos)
        return self._delete(pos - 1)

    def replace(self, pos: int, sym: int) -> int:
        """Overwrite position ``pos`` with ``sym``; returns the old symbol."""
        self._check_pos(pos)
        self._check_sym(sym)
        old = self._delete(pos - 1)
        self._insert(pos - 1, sym)
        return old

    def access(self, pos: int) -> int:
        self._check_pos(pos)
        return self._access(pos - 1)

    def rank(self, sym: int, pos: int) -> int:
        if not 0 <= pos <= self.length:
            raise RangeError(f"prefix length {pos} outside 0..{self.length}")
        if not 0 <= sym < self.universe:
            return 0
        return self._rank(sym, pos)

    def select(self, sym: int, k: int) -> int:
        if not 0 <= sym < self.universe or not 1 <= k <= self._rank(sym, self.length):
            raise NotFoundError(f"no occurrence {k} of symbol {sym}")
        val, ln = self.codec.code(sym)
        p = k - 1
        for d in range(ln - 1, -1, -1):
            bit = (val >> (ln - 1 - d)) & 1
            p = self._nodes[(d, val >> (ln - d))]._select(bit, p + 1)
        return p + 1

    def count_less_than(self, l: int, r: int, x: int) -> int:
        if l > r:
            return 0
        if l < 1 or r > self.length:
            raise RangeError(f"range [{l}..{r}] outside 1..{self.length}")
        return self._count_less(l - 1, r, x)

    def _check_pos(self, pos: int) -> None:
        if not 1 <= pos <= self.length:
            raise RangeError(f"position {pos} outside 1..{self.length}")

    def to_list(self) -> list[int]:
        return [self._access(i) for i in range(self.length)]

    def bitvectors(self) -> list[DynamicBitvector]:
        return list(self._nodes.values())

    @property
    def payload_bits(self) -> int:
        return sum(len(bv) for bv in self._nodes.values())

    @property
    def overhead_bits(self) -> int:
        """Per-node bookkeeping: two child links, length, popcount, height."""
        return sum(bv.node_count() for bv in self._nodes.values()) * 5 * 64

    def __repr__(self) -> str:
        return (f"DynamicWaveletTree(universe={self.universe}, length={self.length}, "
                f"shape={self.shape}, nodes={len(self._nodes)})")
