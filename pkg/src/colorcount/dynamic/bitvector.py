"""Dynamic bitvector: a leaf-oriented AVL tree over plain bit chunks.

Leaves hold up to ``capacity`` bits packed in a Python int (bit ``i`` of the
chunk is bit ``i`` of the int). Internal nodes cache subtree length and
popcount so rank, select, access, insert and delete each walk one
root-to-leaf path. Leaves split when they overflow and sibling leaves merge
when a delete leaves them jointly at most half full.
"""
from __future__ import annotations

import math
from typing import Iterable

from ..bitvector import _select_in_word
from ..errors import NotFoundError, RangeError

_MASK64 = (1 << 64) - 1


def _select_bits(x: int, k: int) -> int:
    off = 0
    while True:
        w = x & _MASK64
        c = w.bit_count()
        if c >= k:
            return off + _select_in_word(w, k)
        k -= c
        x >>= 64
        off += 64


class _Leaf:
    __slots__ = ("bits", "size", "ones")
    height = 0

    def __init__(self, bits: int = 0, size: int = 0):
        self.bits = bits
        self.size = size
        self.ones = bits.bit_count()


class _Node:
    __slots__ = ("left", "right", "size", "ones", "height")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.fix()

    def fix(self) -> None:
        l, r = self.left, self.right
        self.size = l.size + r.size
        self.ones = l.ones + r.ones
        self.height = 1 + (l.height if l.height > r.height else r.height)


def _rot_right(n: _Node) -> _Node:
    l = n.left
    n.left = l.right
    n.fix()
    l.right = n
    l.fix()
    return l


def _rot_left(n: _Node) -> _Node:
    r = n.right
    n.right = r.left
    n.fix()
    r.left = n
    r.fix()
    return r


def _rebalance(n: _Node) -> _Node:
    n.fix()
    bf = n.left.height - n.right.height
    if bf > 1:
        if n.left.left.height < n.left.right.height:
            n.left = _rot_left(n.left)
        return _rot_right(n)
    if bf < -1:
        if n.right.right.height < n.right.left.height:
            n.right = _rot_right(n.right)
        return _rot_left(n)
    return n


def default_capacity(n_bits: int) -> int:
    """Leaf capacity Θ(log² n), at least two machine words."""
    return max(128, max(1, n_bits).bit_length() ** 2)


class DynamicBitvector:
    """Bit sequence supporting rank/select/access plus insert/delete.

    Public positions are 1-based and ranks take a prefix length, as in
    :class:`~colorcount.bitvector.RankSelectBitvector`.
    """

    __slots__ = ("_root", "capacity")

    def __init__(self, bits: Iterable[int] = (), capacity: int | None = None):
        bits = list(bits)
        self.capacity = capacity or default_capacity(len(bits))
        chunk = self.capacity // 2
        leaves = []
        for lo in range(0, len(bits), chunk):
            part = bits[lo:lo + chunk]
            val = 0
            for off, b in enumerate(part):
                if b:
                    val |= 1 << off
            leaves.append(_Leaf(val, len(part)))
        self._root = self._balanced(leaves, 0, len(leaves)) if leaves else _Leaf()

    @classmethod
    def _balanced(cls, leaves, lo, hi):
        if hi - lo == 1:
            return leaves[lo]
        mid = (lo + hi) // 2
        return _Node(cls._balanced(leaves, lo, mid), cls._balanced(leaves, mid, hi))

    def __len__(self) -> int:
        return self._root.size

    @property
    def ones(self) -> int:
        return self._root.ones

    def height(self) -> int:
        return self._root.height

    # -- 0-based core ----------------------------------------------------------

    def _rank1(self, pos: int) -> int:
        node = self._root
        r = 0
        while type(node) is _Node:
            left = node.left
            if pos < left.size:
                node = left
            else:
                r += left.ones
                pos -= left.size
                node = node.right
        return r + (node.bits & ((1 << pos) - 1)).bit_count()

    def _rank(self, bit: int, pos: int) -> int:
        r = self._rank1(pos)
        return r if bit else pos - r

    def _access(self, pos: int) -> int:
        node = self._root
        while type(node) is _Node:
            if pos < node.left.size:
                node = node.left
            else:
                pos -= node.left.size
                node = node.right
        return (node.bits >> pos) & 1

    def _select1(self, k: int) -> int:
        node = self._root
        off = 0
        while type(node) is _Node:
            left = node.left
            if k <= left.ones:
                node = left
            else:
                k -= left.ones
                off += left.size
                node = node.right
        return off + _select_bits(node.bits, k)

    def _select0(self, k: int) -> int:
        node = self._root
        off = 0
        while type(node) is _Node:
            left = node.left
            z = left.size - left.ones
            if k <= z:
                node = left
            else:
                k -= z
                off += left.size
                node = node.right
        inv = ~node.bits & ((1 << node.size) - 1)
        return off + _select_bits(inv, k)

    def _select(self, bit: int, k: int) -> int:
        return self._select1(k) if bit else self._select0(k)

    def _insert(self, pos: int, bit: int) -> None:
        self._root = self._ins(self._root, pos, bit)

    def _ins(self, node, pos, bit):
        if type(node) is _Leaf:
            x = node.bits
            node.bits = (x & ((1 << pos) - 1)) | (bit << pos) | ((x >> pos) << (pos + 1))
            node.size += 1
            node.ones += bit
            if node.size > self.capacity:
                half = node.size // 2
                left = _Leaf(node.bits & ((1 << half) - 1), half)
                right = _Leaf(node.bits >> half, node.size - half)
                return _Node(left, right)
            return node
        if pos <= node.left.size:
            node.left = self._ins(node.left, pos, bit)
        else:
            node.right = self._ins(node.right, pos - node.left.size, bit)
        return _rebalance(node)

    def _delete(self, pos: int) -> int:
        root, bit = self._del(self._root, pos)
        self._root = root if root is not None else _Leaf()
        return bit

    def _del(self, node, pos):
        if type(node) is _Leaf:
            x = node.bits
            bit = (x >> pos) & 1
            node.bits = (x & ((1 << pos) - 1)) | ((x >> (pos + 1)) << pos)
            node.size -= 1
            node.ones -= bit
            return (node if node.size else None), bit
        if pos < node.left.size:
            child, bit = self._del(node.left, pos)
            if child is None:
                return node.right, bit
            node.left = child
        else:
            child, bit = self._del(node.right, pos - node.left.size)
            if child is None:
                return node.left, bit
            node.right = child
        l, r = node.left, node.right
        if type(l) is _Leaf and type(r) is _Leaf and l.size + r.size <= self.capacity // 2:
            return _Leaf(l.bits | (r.bits << l.size), l.size + r.size), bit
        return _rebalance(node), bit

    # -- public API ----------------------------------------------------------

    def insert(self, pos: int, bit: int) -> None:
        """Insert ``bit`` so that it ends up at 1-based position ``pos``."""
        if not 1 <= pos <= len(self) + 1:
            raise RangeError(f"insert position {pos} outside 1..{len(self) + 1}")
        self._insert(pos - 1, 1 if bit else 0)

    def append(self, bit: int) -> None:
        self._insert(len(self), 1 if bit else 0)

    def delete(self, pos: int) -> int:
        """Remove and return the bit at 1-based position ``pos``."""
        self._check_pos(pos)
        return self._delete(pos - 1)

    def access(self, pos: int) -> int:
        self._check_pos(pos)
        return self._access(pos - 1)

    def rank1(self, pos: int) -> int:
        self._check_prefix(pos)
        return self._rank1(pos)

    def rank0(self, pos: int) -> int:
        self._check_prefix(pos)
        return pos - self._rank1(pos)

    def rank(self, bit: int, pos: int) -> int:
        return self.rank1(pos) if bit else self.rank0(pos)

    def select1(self, k: int) -> int:
        if not 1 <= k <= self.ones:
            raise NotFoundError(f"no set bit with rank {k} (have {self.ones})")
        return self._select1(k) + 1

    def select0(self, k: int) -> int:
        if not 1 <= k <= len(self) - self.ones:
            raise NotFoundError(f"no clear bit with rank {k}")
        return self._select0(k) + 1

    def select(self, bit: int, k: int) -> int:
        return self.select1(k) if bit else self.select0(k)

    def to_list(self) -> list[int]:
        out: list[int] = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            if type(node) is _Node:
                stack.append(node.right)
                stack.append(node.left)
            else:
                out.extend((node.bits >> i) & 1 for i in range(node.size))
        return out

    def _check_pos(self, pos: int) -> None:
        if not 1 <= pos <= len(self):
            raise RangeError(f"position {pos} outside 1..{len(self)}")

    def _check_prefix(self, pos: int) -> None:
        if not 0 <= pos <= len(self):
            raise RangeError(f"prefix length {pos} outside 0..{len(self)}")

    def node_count(self) -> int:
        count = 0
        stack = [self._root]
        while stack:
            node = stack.pop()
            count += 1
            if type(node) is _Node:
                stack.extend((node.left, node.right))
        return count

    def height_bound(self, c: float = 2.0) -> float:
        """The balance guarantee checked by the test-suite: c·log2(n) + c."""
        return c * math.log2(max(1, len(self))) + c

    def __repr__(self) -> str:
        return f"DynamicBitvector(n={len(self)}, ones={self.ones}, height={self.height()})"
