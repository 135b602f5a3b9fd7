"""Partially dynamic multi-size index: replace, delete and append.

``C`` is never stored explicitly. It lives in the size-class string ``t``
(a Huffman-shaped dynamic wavelet tree) and one balanced dynamic wavelet
tree of offsets per class, exactly as in the static multi-size index.
A dynamic wavelet tree over ``s`` locates the previous and next
occurrences needed to rewire ``C`` after an edit.

Deletion writes a reserved NULL symbol (token ``sigma``) that takes part in
``C`` like any other symbol and is subtracted from query answers.

Concurrency: one writer at a time with exclusive access to the whole
index; reads may run concurrently only between mutations.
"""
from __future__ import annotations

from collections import Counter
from typing import Sequence

import numpy as np

from ..errors import RangeError, ValidationError
from ..multisize import (
    ZERO, BlockLadder, build_ladder, classify_all, classify_entry, default_delta,
    leftmost_start, owned_span, rightmost_start,
)
from ..prevocc import ColorString, build_prev_occ, check_range
from ..space import SpaceReport, entropy_h0
from .wavelet import BALANCED, HUFFMAN, DynamicWaveletTree


class DynamicColorIndex:
    scheme = "dynamic"

    def __init__(self, sigma: int, ladder: BlockLadder, s_tree: DynamicWaveletTree,
                 t_tree: DynamicWaveletTree, offset_trees: dict[int, DynamicWaveletTree],
                 t_weights: list[int] | None):
        self.sigma = sigma
        self.null = sigma
        self.delta = ladder.delta
        self.sizes = list(ladder.sizes)
        self.s_tree = s_tree
        self.t_tree = t_tree
        self.offset_trees = offset_trees
        self.t_weights = t_weights
        self.touched = 0

    # -- construction --------------------------------------------------------

    @classmethod
    def build(cls, s: ColorString | Sequence[int], delta: float | None = None,
              sigma: int | None = None, sizes: Sequence[int] | None = None,
              t_weights: Sequence[int] | None = None) -> "DynamicColorIndex":
        """Index ``s``. ``sizes``/``t_weights`` restore a snapshot's ladder and t shape.

        Symbols equal to ``sigma`` are NULL (deleted) positions.
        """
        if isinstance(s, ColorString):
            seq = s.symbols
            sigma = s.sigma if sigma is None else sigma
        else:
            seq = np.asarray(s, dtype=np.int64)
        if sigma is None:
            raise ValidationError("sigma is required for a raw symbol sequence")
        if len(seq) and (seq.min() < 0 or seq.max() > sigma):
            raise ValidationError(f"symbols must lie in [0, {sigma}]")
        n = len(seq)
        if sizes is not None:
            ladder = BlockLadder(float(delta if delta is not None else default_delta(max(n, 2))),
                                 tuple(int(b) for b in sizes))
        else:
            if delta is None:
                delta = default_delta(max(n, 2))
            ladder = build_ladder(max(n, 2), delta)
        prev = build_prev_occ(seq)
        t, offsets = classify_all(prev, ladder)
        m = len(ladder.sizes)
        if t_weights is None and n:
            freq = Counter(t.tolist())
            t_weights = [freq.get(k, 0) for k in range(m)]
        if t_weights is not None:
            t_weights = [int(w) for w in t_weights]
            t_tree = DynamicWaveletTree.from_sequence(t.tolist(), m, HUFFMAN, t_weights)
        else:
            t_tree = DynamicWaveletTree.from_sequence([], m, BALANCED)
        trees = {}
        for k in ladder.classes:
            mask = t == k
            if mask.any():
                trees[k] = DynamicWaveletTree.from_sequence(offsets[mask].tolist(), ladder.sizes[k])
        s_tree = DynamicWaveletTree.from_sequence(seq.tolist(), sigma + 1)
        return cls(sigma, ladder, s_tree, t_tree, trees, t_weights)

    @property
    def n(self) -> int:
        return self.s_tree.length

    @property
    def ladder(self) -> BlockLadder:
        return BlockLadder(self.delta, tuple(self.sizes))

    # -- C representation ------------------------------------------------------

    def _offset_tree(self, k: int) -> DynamicWaveletTree:
        tree = self.offset_trees.get(k)
        if tree is None:
            tree = self.offset_trees[k] = DynamicWaveletTree(self.sizes[k])
        return tree

    def entry(self, q: int) -> int:
        """Decoded ``C[q]``."""
        k = self.t_tree._access(q - 1)
        if k == ZERO:
            return 0
        r = self.t_tree._rank(k, q)
        return self.offset_trees[k]._access(r - 1) + leftmost_start(q, self.sizes[k])

    def _set_entry(self, q: int, p: int) -> None:
        t = self.t_tree
        old = t._delete(q - 1)
        if old != ZERO:
            self.offset_trees[old]._delete(t._rank(old, q - 1))
        if p:
            k, start = classify_entry(p, q, self.ladder)
            t._insert(q - 1, k)
            self._offset_tree(k)._insert(t._rank(k, q - 1), p - start)
        else:
            t._insert(q - 1, ZERO)
        self.touched += 1

    def _grow_top(self) -> None:
        """Double the top block size until it covers the whole string."""
        m = len(self.sizes) - 1
        old_b = self.sizes[m]
        new_b = old_b
        while new_b < self.n:
            new_b *= 2
        old = self.offset_trees.get(m)
        self.sizes[m] = new_b
        if old is None:
            return
        # top-class entries stay top-class; only their offsets move
        vals = []
        for r in range(1, old.length + 1):
            q = self.t_tree.select(m, r)
            p = old._access(r - 1) + leftmost_start(q, old_b)
            vals.append(p - leftmost_start(q, new_b))
        self.offset_trees[m] = DynamicWaveletTree.from_sequence(vals, new_b)

    def decode_prev_occ(self) -> list[int]:
        return [self.entry(q) for q in range(1, self.n + 1)]

    def symbols(self) -> list[int]:
        return self.s_tree.to_list()

    # -- edits -------------------------------------------------------------------

    def _last_before(self, sym: int, j: int) -> int:
        r = self.s_tree._rank(sym, j - 1)
        return self.s_tree.select(sym, r) if r else 0

    def _first_after(self, sym: int, j: int) -> int | None:
        r = self.s_tree._rank(sym, j)
        if r < self.s_tree._rank(sym, self.n):
            return self.s_tree.select(sym, r + 1)
        return None

    def replace_char(self, j: int, y: int) -> None:
        """Set ``s[j] = y`` (``y == sigma`` deletes) and rewire at most 3 entries of C."""
        if not 1 <= j <= self.n:
            raise RangeError(f"position {j} outside 1..{self.n}")
        if not 0 <= y <= self.null:
            raise ValidationError(f"symbol {y} outside [0, {self.sigma})")
        self.touched = 0
        x = self.s_tree._access(j - 1)
        if x == y:
            return
        i_x = self._last_before(x, j)
        i_y = self._last_before(y, j)
        k_x = self._first_after(x, j)
        k_y = self._first_after(y, j)
        self._set_entry(j, i_y)
        if k_x is not None:
            self._set_entry(k_x, i_x)
        if k_y is not None:
            self._set_entry(k_y, j)
        self.s_tree._delete(j - 1)
        self.s_tree._insert(j - 1, y)

    def delete_char(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise RangeError(f"position {j} outside 1..{self.n}")
        if self.s_tree._access(j - 1) == self.null:
            raise ValidationError(f"position {j} is already deleted")
        self.replace_char(j, self.null)

    def append_char(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise ValidationError(f"symbol {c} outside [0, {self.sigma})")
        self.touched = 0
        p = self._last_before(c, self.n + 1)
        self.s_tree._insert(self.n, c)
        q = self.n
        if q > self.sizes[-1]:
            self._grow_top()
        t = self.t_tree
        if p:
            k, start = classify_entry(p, q, self.ladder)
            t._insert(q - 1, k)
            tree = self._offset_tree(k)
            tree._insert(tree.length, p - start)
        else:
            t._insert(q - 1, ZERO)
        self.touched = 1

    # -- queries ---------------------------------------------------------------

    def count(self, i: int, j: int) -> int:
        check_range(i, j, self.n)
        t_rank = self.t_tree._rank
        total = t_rank(ZERO, j) - t_rank(ZERO, i - 1)
        for k, tree in self.offset_trees.items():
            if not tree.length:
                continue
            b = self.sizes[k]
            left = leftmost_start(i, b)
            right = rightmost_start(i, b)
            for start in ((left,) if left == right else (left, right)):
                lo, hi = owned_span(start, b)
                lo = max(lo, i)
                hi = min(hi, j)
                if lo > hi:
                    continue
                a = t_rank(k, lo - 1)
                z = t_rank(k, hi)
                if z > a:
                    total += tree._count_less(a, z, i - start)
        s_rank = self.s_tree._rank
        if s_rank(self.null, j) - s_rank(self.null, i - 1):
            total -= 1
        return total

    def all_trees(self) -> list[DynamicWaveletTree]:
        return [self.s_tree, self.t_tree, *self.offset_trees.values()]

    def space_report(self) -> SpaceReport:
        live = [v for v in self.symbols() if v != self.null]
        comps = {
            "s_payload": self.s_tree.payload_bits,
            "t_payload": self.t_tree.payload_bits,
            "offset_payload": sum(t.payload_bits for t in self.offset_trees.values()),
            "tree_overhead": sum(t.overhead_bits for t in self.all_trees()),
        }
        h0 = entropy_h0(live)
        n = self.n
        metrics = {
            "delta": self.delta,
            "ladder_len": float(len(self.sizes)),
            "h0": h0,
            "n_h0": n * h0,
            "h0_t": entropy_h0(self.t_tree.to_list()),
            "offset_bound": (1 + self.delta) * n * h0 + 4 * n,
        }
        return SpaceReport(self.scheme, n, self.sigma, comps, metrics)


def dynamic_count(index: DynamicColorIndex, i: int, j: int) -> int:
    return index.count(i, j)
