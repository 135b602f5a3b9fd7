"""Multi-size blocking: entropy-compressed colour counting.

Each nonzero ``C[q] = p`` is assigned the smallest ladder size ``b`` for
which some size-``b`` block holds both ``p`` and ``q``, and is stored as the
offset of ``p`` inside the leftmost size-``b`` block holding ``q``. Since
``b`` is roughly ``q - p`` raised to ``1 + delta``, offsets cost about
``(1 + delta) log(q - p)`` bits, which sums to ``(1 + delta) n H0(s)``.

Block geometry: size-``b`` blocks start at ``1 + m * b/2`` and are clipped at
``n``. A block *owns* the positions whose leftmost covering block it is:
its right half, or its whole span for the block starting at 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .prevocc import ColorString, build_prev_occ, check_range
from .space import SpaceReport, entropy_h0
from .wavelet import WaveletTree

ZERO = 0
_EXP_EPS = 1e-9


def default_delta(n: int) -> float:
    if n < 5:
        return 1.0
    return 1.0 / math.log2(math.log2(n))


@dataclass(frozen=True)
class BlockLadder:
    delta: float
    sizes: tuple[int, ...]

    @property
    def top(self) -> int:
        return self.sizes[-1]

    @property
    def classes(self) -> range:
        """Ladder indices usable as size classes (index 0, size 1, never is)."""
        return range(1, len(self.sizes))

    def __len__(self) -> int:
        return len(self.sizes)


def build_ladder(n: int, delta: float) -> BlockLadder:
    """Sizes ``1, 2^ceil(max((1+delta)^k, k)), ...`` up to the first one >= n."""
    if not delta > 0:
        raise ValidationError(f"delta must be positive, got {delta}")
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    sizes = [1]
    k = 0
    while sizes[-1] < n:
        k += 1
        # the epsilon keeps exact integer powers like 2.0**3 from rounding up
        exp = math.ceil(max((1.0 + delta) ** k, k) - _EXP_EPS)
        b = 1 << exp
        if b > sizes[-1]:
            sizes.append(b)
    return BlockLadder(float(delta), tuple(sizes))


# -- block geometry ---------------------------------------------------------

def leftmost_start(q: int, b: int) -> int:
    h = b // 2
    return 1 + max(0, -(-(q - b) // h)) * h


def rightmost_start(q: int, b: int) -> int:
    h = b // 2
    return 1 + (q - 1) // h * h


def owned_span(start: int, b: int) -> tuple[int, int]:
    """Positions whose leftmost covering size-``b`` block starts at ``start``."""
    lo = 1 if start == 1 else start + b // 2
    return lo, start + b - 1


def shares_block(p: int, q: int, b: int) -> bool:
    if b < 2:
        return p == q
    return rightmost_start(p, b) + b - 1 >= q


def classify_entry(p: int, q: int, ladder: BlockLadder) -> tuple[int, int]:
    """``(class index, leftmost_cover_start)`` for an entry ``C[q] = p``."""
    for k in ladder.classes:
        b = ladder.sizes[k]
        if shares_block(p, q, b):
            return k, leftmost_start(q, b)
    raise ValidationError(f"ladder top {ladder.top} cannot cover ({p}, {q})")


def classify_all(prev: np.ndarray, ladder: BlockLadder) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``classify_entry`` over a whole ``C`` array.

    Returns the class string ``t`` and the offsets (0 where ``t`` is ZERO).
    """
    n = len(prev)
    q = np.arange(1, n + 1, dtype=np.int64)
    t = np.zeros(n, dtype=np.int64)
    offsets = np.zeros(n, dtype=np.int64)
    todo = np.flatnonzero(prev > 0)
    for k in ladder.classes:
        if not len(todo):
            break
        b = ladder.sizes[k]
        h = b // 2
        pp, qq = prev[todo], q[todo]
        hit = (1 + (pp - 1) // h * h) + b - 1 >= qq
        sel = todo[hit]
        t[sel] = k
        lm = 1 + np.maximum(0, -((b - q[sel]) // h)) * h
        offsets[sel] = prev[sel] - lm
        todo = todo[~hit]
    if len(todo):
        raise ValidationError(f"ladder top {ladder.top} cannot cover all entries")
    return t, offsets


@dataclass
class MultiSizeIndex:
    n: int
    sigma: int
    ladder: BlockLadder
    t_tree: WaveletTree
    offset_trees: dict[int, WaveletTree] = field(default_factory=dict)
    h0: float = 0.0
    h0_t: float = 0.0

    scheme = "multisize"

    @property
    def delta(self) -> float:
        return self.ladder.delta

    def count(self, i: int, j: int, trace: dict | None = None) -> int:
        check_range(i, j, self.n)
        t_rank = self.t_tree._rank
        total = t_rank(ZERO, j) - t_rank(ZERO, i - 1)
        calls = 0
        sizes = self.ladder.sizes
        for k, tree in self.offset_trees.items():
            b = sizes[k]
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
                    calls += 1
                    total += tree._count_less(a, z, i - start)
        if trace is not None:
            trace["count_less_than_calls"] = calls
        return total

    def decode_prev_occ(self) -> list[int]:
        """Rebuild ``C`` from ``t`` and the offset trees."""
        seen = {k: 0 for k in self.offset_trees}
        out = []
        for q, k in enumerate(self.t_tree.to_list(), start=1):
            if k == ZERO:
                out.append(0)
                continue
            seen[k] += 1
            b = self.ladder.sizes[k]
            out.append(self.offset_trees[k].access(seen[k]) + leftmost_start(q, b))
        return out

    def offset_payload_bits(self) -> int:
        return sum(t.payload_bits for t in self.offset_trees.values())

    def space_report(self) -> SpaceReport:
        comps = {"t_payload": self.t_tree.payload_bits,
                 "t_directory": self.t_tree.directory_bits}
        for k, tree in sorted(self.offset_trees.items()):
            comps[f"offset_payload.b{self.ladder.sizes[k]}"] = tree.payload_bits
        comps["offset_directory"] = sum(t.directory_bits for t in self.offset_trees.values())
        n, d = self.n, self.delta
        metrics = {
            "delta": d,
            "ladder_len": float(len(self.ladder)),
            "h0": self.h0,
            "n_h0": n * self.h0,
            "h0_t": self.h0_t,
            "offset_payload": float(self.offset_payload_bits()),
            "offset_bound": (1 + d) * n * self.h0 + 4 * n,
        }
        return SpaceReport(self.scheme, n, self.sigma, comps, metrics)


def build_multisize(s: ColorString, delta: float | None = None) -> MultiSizeIndex:
    n = s.n
    if n < 1:
        raise ValidationError("cannot index an empty string")
    if delta is None:
        delta = default_delta(n)
    ladder = build_ladder(n, delta)
    prev = build_prev_occ(s)
    t, offsets = classify_all(prev, ladder)
    trees = {}
    for k in ladder.classes:
        mask = t == k
        if mask.any():
            trees[k] = WaveletTree.build(offsets[mask], ladder.sizes[k])
    return MultiSizeIndex(
        n, s.sigma, ladder, WaveletTree.build(t, len(ladder.sizes)), trees,
        h0=entropy_h0(s.symbols), h0_t=entropy_h0(t),
    )


def multisize_count(index: MultiSizeIndex, i: int, j: int) -> int:
    return index.count(i, j)


def multisize_space_report(index: MultiSizeIndex) -> SpaceReport:
    return index.space_report()
