"""Static bit sequences with rank and select support.

Bits live in little-endian 64-bit words (bit ``p`` of the sequence is bit
``p % 64`` of word ``p // 64``). Rank uses a two-level directory: 64-bit
absolute counts per superblock and 16-bit relative counts per block. Block
length grows with ``log n`` so the directory is a vanishing fraction of the
payload.

External positions are 1-based; ``rank*`` take a prefix length in ``0..n``.
Underscore-prefixed methods are unchecked, 0-based fast paths used by the
wavelet trees.
"""
from __future__ import annotations

from array import array
from bisect import bisect_left
from typing import Iterable, Sequence

import numpy as np

from .errors import NotFoundError, RangeError

WORD = 64
_MASK64 = (1 << 64) - 1
BLOCKS_PER_SUPER = 8


def _words_per_block(n_bits: int) -> int:
    return max(1, (max(1, n_bits.bit_length()) + 3) // 4)


def _select_in_word(word: int, r: int) -> int:
    """0-based offset of the r-th (1-based) set bit of ``word``."""
    off = 0
    while True:
        c = (word & 0xFF).bit_count()
        if c >= r:
            break
        r -= c
        word >>= 8
        off += 8
    for _ in range(r - 1):
        word &= word - 1
    return off + (word & -word).bit_length() - 1


class RankSelectBitvector:
    """Immutable bit sequence with rank/select directories."""

    __slots__ = ("_n", "_words", "_wpb", "_block", "_super_bits",
                 "_sup", "_blk", "_ones")

    def __init__(self, n_bits: int, words: np.ndarray):
        self._n = int(n_bits)
        nwords = (self._n + WORD - 1) // WORD
        words = np.ascontiguousarray(words, dtype="<u8")[:nwords]
        if len(words) < nwords:
            words = np.concatenate([words, np.zeros(nwords - len(words), "<u8")])
        tail = self._n % WORD
        if tail and nwords:
            words = words.copy()
            words[-1] &= np.uint64((1 << tail) - 1)
        self._wpb = _words_per_block(self._n)
        self._block = WORD * self._wpb
        self._super_bits = self._block * BLOCKS_PER_SUPER

        # one guard word so rank(n) can always read words[n // 64]
        self._words = array("Q", words.tobytes())
        self._words.append(0)

        pc = np.bitwise_count(words).astype(np.int64)
        cum = np.zeros(nwords + 1, dtype=np.int64)
        np.cumsum(pc, out=cum[1:])
        nblocks = self._n // self._block + 1
        nsup = self._n // self._super_bits + 1
        bstart = np.minimum(np.arange(nblocks, dtype=np.int64) * self._wpb, nwords)
        sstart = np.minimum(
            np.arange(nsup, dtype=np.int64) * self._wpb * BLOCKS_PER_SUPER, nwords)
        sup = cum[sstart]
        blk = cum[bstart] - sup[np.arange(nblocks) // BLOCKS_PER_SUPER]
        self._sup = array("Q", sup.astype("<u8").tobytes())
        self._blk = array("H", blk.astype("<u2").tobytes())
        self._ones = int(cum[-1])

    # -- construction -------------------------------------------------

    @classmethod
    def from_bools(cls, bits: np.ndarray | Sequence[int] | Iterable[int]) -> "RankSelectBitvector":
        if isinstance(bits, np.ndarray):
            arr = bits.astype(bool, copy=False).ravel()
        else:
            arr = np.fromiter((bool(b) for b in bits), dtype=bool)
        n = len(arr)
        if n == 0:
            return cls(0, np.zeros(0, "<u8"))
        packed = np.packbits(arr, bitorder="little")
        pad = (-len(packed)) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, np.uint8)])
        return cls(n, packed.view("<u8"))

    @classmethod
    def from_words(cls, n_bits: int, raw: bytes) -> "RankSelectBitvector":
        return cls(n_bits, np.frombuffer(raw, dtype="<u8"))

    def word_bytes(self) -> bytes:
        nwords = (self._n + WORD - 1) // WORD
        return self._words[:nwords].tobytes()

    # -- sizes ----------------------------------------------------------

    def __len__(self) -> int:
        return self._n

    @property
    def ones(self) -> int:
        return self._ones

    @property
    def zeros(self) -> int:
        return self._n - self._ones

    @property
    def payload_bits(self) -> int:
        return self._n

    @property
    def directory_bits(self) -> int:
        return len(self._sup) * 64 + len(self._blk) * 16

    # -- unchecked 0-based core -----------------------------------------

    def _rank1(self, pos: int) -> int:
        words = self._words
        b = pos // self._block
        r = self._sup[pos // self._super_bits] + self._blk[b]
        w = pos >> 6
        for k in range(b * self._wpb, w):
            r += words[k].bit_count()
        rem = pos & 63
        if rem:
            r += (words[w] & ((1 << rem) - 1)).bit_count()
        return r

    def _access(self, pos: int) -> int:
        return (self._words[pos >> 6] >> (pos & 63)) & 1

    def _select1(self, k: int) -> int:
        """0-based position of the k-th set bit; assumes 1 <= k <= ones."""
        sup, blk = self._sup, self._blk
        sb = bisect_left(sup, k) - 1
        k -= sup[sb]
        b = sb * BLOCKS_PER_SUPER
        last = min(b + BLOCKS_PER_SUPER, len(blk))
        while b + 1 < last and blk[b + 1] < k:
            b += 1
        k -= blk[b]
        w = b * self._wpb
        words = self._words
        while True:
            c = words[w].bit_count()
            if c >= k:
                return w * WORD + _select_in_word(words[w], k)
            k -= c
            w += 1

    def _select0(self, k: int) -> int:
        """0-based position of the k-th clear bit; assumes 1 <= k <= zeros."""
        sup, blk = self._sup, self._blk
        sbits, bbits = self._super_bits, self._block
        sb = bisect_left(range(len(sup)), k, key=lambda s: s * sbits - sup[s]) - 1
        k -= sb * sbits - sup[sb]
        b = sb * BLOCKS_PER_SUPER
        last = min(b + BLOCKS_PER_SUPER, len(blk))
        while b + 1 < last and (b + 1 - sb * BLOCKS_PER_SUPER) * bbits - blk[b + 1] < k:
            b += 1
        k -= (b - sb * BLOCKS_PER_SUPER) * bbits - blk[b]
        w = b * self._wpb
        words = self._words
        while True:
            inv = ~words[w] & _MASK64
            c = inv.bit_count()
            if c >= k:
                return w * WORD + _select_in_word(inv, k)
            k -= c
            w += 1

    # -- public, checked API ----------------------------------------------

    def _check_prefix(self, pos: int) -> None:
        if not 0 <= pos <= self._n:
            raise RangeError(f"prefix length {pos} outside 0..{self._n}")

    def rank1(self, pos: int) -> int:
        """Number of set bits among the first ``pos`` bits."""
        self._check_prefix(pos)
        return self._rank1(pos)

    def rank0(self, pos: int) -> int:
        self._check_prefix(pos)
        return pos - self._rank1(pos)

    def rank(self, bit: int, pos: int) -> int:
        return self.rank1(pos) if bit else self.rank0(pos)

    def access(self, pos: int) -> int:
        """Bit at 1-based position ``pos``."""
        if not 1 <= pos <= self._n:
            raise RangeError(f"position {pos} outside 1..{self._n}")
        return self._access(pos - 1)

    def __getitem__(self, idx: int) -> int:
        if idx < 0:
            idx += self._n
        if not 0 <= idx < self._n:
            raise IndexError(idx)
        return self._access(idx)

    def select1(self, k: int) -> int:
        """1-based position of the k-th set bit."""
        if not 1 <= k <= self._ones:
            raise NotFoundError(f"no set bit with rank {k} (have {self._ones})")
        return self._select1(k) + 1

    def select0(self, k: int) -> int:
        """1-based position of the k-th clear bit."""
        if not 1 <= k <= self.zeros:
            raise NotFoundError(f"no clear bit with rank {k} (have {self.zeros})")
        return self._select0(k) + 1

    def select(self, bit: int, k: int) -> int:
        return self.select1(k) if bit else self.select0(k)

    def to_list(self) -> list[int]:
        return [self._access(p) for p in range(self._n)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankSelectBitvector):
            return NotImplemented
        return self._n == other._n and self.word_bytes() == other.word_bytes()

    def __repr__(self) -> str:
        preview = "".join(map(str, self.to_list()[:32]))
        more = "..." if self._n > 32 else ""
        return f"RankSelectBitvector(n={self._n}, bits={preview}{more})"


def build_bitvector(bits: Iterable[int] | np.ndarray) -> RankSelectBitvector:
    return RankSelectBitvector.from_bools(bits)
