"""Binary index file format.

All integers are little-endian. Layout::

    magic     4 bytes  b"CCS1"
    version   u16      FORMAT_VERSION
    scheme    u8       0 baseline, 1 simple, 2 multisize, 3 dynamic snapshot
    n         u64
    sigma     u64
    alphabet  u8 kind (0 ids, 1 bytes, 2 tokens), u64 count, entries
    h0        f64
    payload   scheme-specific, built from the records below
    checksum  u64      CRC-32 (zlib) of every preceding byte, zero-extended

Records: a bitvector is ``u64 nbits`` + ``ceil(nbits/64)`` u64 words; a
wavelet tree is ``u64 universe, u64 length`` + one bitvector per level.
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from .bitvector import RankSelectBitvector
from .dynamic import DynamicColorIndex
from .errors import CorruptIndexError
from .multisize import BlockLadder, MultiSizeIndex
from .prevocc import BaselineIndex
from .simple import BASELINE, BLOCKED, SMALL_ALPHABET, SimpleBlockIndex, SmallAlphabetIndex
from .wavelet import WaveletTree, levels_for

MAGIC = b"CCS1"
FORMAT_VERSION = 1
SCHEME_TAGS = {"baseline": 0, "simple": 1, "multisize": 2, "dynamic": 3}
_SIMPLE_MODES = [BASELINE, SMALL_ALPHABET, BLOCKED]
ALPHABET_KINDS = ["ids", "bytes", "tokens"]
_HEADER = struct.Struct("<4sHBQQ")


@dataclass
class Alphabet:
    """Dictionary from dense token ids back to the original symbols."""

    kind: str = "ids"
    symbols: list = field(default_factory=list)


class _Writer:
    def __init__(self):
        self.parts: list[bytes] = []

    def u8(self, v: int):
        self.parts.append(struct.pack("<B", v))

    def u32(self, v: int):
        self.parts.append(struct.pack("<I", v))

    def u64(self, v: int):
        self.parts.append(struct.pack("<Q", v))

    def f64(self, v: float):
        self.parts.append(struct.pack("<d", v))

    def raw(self, b: bytes):
        self.parts.append(b)

    def bitvector(self, bv: RankSelectBitvector):
        self.u64(len(bv))
        self.raw(bv.word_bytes())

    def wavelet(self, w: WaveletTree):
        self.u64(w.universe)
        self.u64(w.length)
        for bv in w.levels:
            self.bitvector(bv)

    def getvalue(self) -> bytes:
        return b"".join(self.parts)


class _Reader:
    def __init__(self, buf: bytes, pos: int = 0):
        self.buf = buf
        self.pos = pos

    def take(self, size: int) -> bytes:
        if size < 0 or self.pos + size > len(self.buf):
            raise CorruptIndexError("truncated index file")
        out = self.buf[self.pos:self.pos + size]
        self.pos += size
        return out

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]

    def f64(self) -> float:
        return struct.unpack("<d", self.take(8))[0]

    def bitvector(self) -> RankSelectBitvector:
        n = self.u64()
        return RankSelectBitvector.from_words(n, self.take(8 * ((n + 63) // 64)))

    def wavelet(self) -> WaveletTree:
        universe = self.u64()
        length = self.u64()
        if universe < 1:
            raise CorruptIndexError("wavelet tree with empty universe")
        levels = [self.bitvector() for _ in range(levels_for(universe))]
        if any(len(bv) != length for bv in levels):
            raise CorruptIndexError("wavelet level length mismatch")
        return WaveletTree(universe, length, levels)


def _write_alphabet(w: _Writer, alpha: Alphabet):
    w.u8(ALPHABET_KINDS.index(alpha.kind))
    w.u64(len(alpha.symbols))
    for sym in alpha.symbols:
        if alpha.kind == "bytes":
            w.u8(sym)
        elif alpha.kind == "tokens":
            data = sym.encode("utf-8")
            w.u32(len(data))
            w.raw(data)
        else:
            w.u64(sym)


def _read_alphabet(r: _Reader) -> Alphabet:
    kind_tag = r.u8()
    if kind_tag >= len(ALPHABET_KINDS):
        raise CorruptIndexError(f"unknown alphabet kind {kind_tag}")
    kind = ALPHABET_KINDS[kind_tag]
    count = r.u64()
    if count > len(r.buf):
        raise CorruptIndexError("alphabet larger than file")
    if kind == "bytes":
        syms = list(r.take(count))
    elif kind == "tokens":
        syms = [r.take(r.u32()).decode("utf-8") for _ in range(count)]
    else:
        syms = [r.u64() for _ in range(count)]
    return Alphabet(kind, syms)


def _write_payload(w: _Writer, index) -> None:
    if isinstance(index, BaselineIndex):
        w.wavelet(index.tree)
    elif isinstance(index, SimpleBlockIndex):
        w.u8(_SIMPLE_MODES.index(index.mode))
        w.u64(index.block_len)
        if index.mode == SMALL_ALPHABET:
            w.wavelet(index.small.tree)
        elif index.mode == BASELINE:
            w.wavelet(index.global_tree)
        else:
            w.bitvector(index.marker)
            w.wavelet(index.local_tree)
            w.wavelet(index.global_tree)
    elif isinstance(index, MultiSizeIndex):
        w.f64(index.delta)
        w.u64(len(index.ladder.sizes))
        for b in index.ladder.sizes:
            w.u64(b)
        w.f64(index.h0_t)
        w.wavelet(index.t_tree)
        w.u64(len(index.offset_trees))
        for k, tree in sorted(index.offset_trees.items()):
            w.u64(k)
            w.wavelet(tree)
    elif isinstance(index, DynamicColorIndex):
        w.f64(index.delta)
        w.u64(len(index.sizes))
        for b in index.sizes:
            w.u64(b)
        weights = index.t_weights or []
        w.u64(len(weights))
        for x in weights:
            w.u64(x)
        w.wavelet(WaveletTree.build(index.symbols(), index.sigma + 1))
    else:
        raise TypeError(f"cannot serialize {type(index).__name__}")


def _read_payload(r: _Reader, scheme: str, n: int, sigma: int, h0: float):
    if scheme == "baseline":
        tree = r.wavelet()
        _expect(tree.length == n, "baseline tree length")
        return BaselineIndex(n, sigma, tree, h0)
    if scheme == "simple":
        tag = r.u8()
        if tag >= len(_SIMPLE_MODES):
            raise CorruptIndexError(f"unknown simple mode {tag}")
        mode = _SIMPLE_MODES[tag]
        b = r.u64()
        if mode == SMALL_ALPHABET:
            tree = r.wavelet()
            _expect(tree.length == n, "small-alphabet tree length")
            return SimpleBlockIndex(n, sigma, mode, small=SmallAlphabetIndex(sigma, tree), h0=h0)
        if mode == BASELINE:
            tree = r.wavelet()
            _expect(tree.length == n, "baseline tree length")
            return SimpleBlockIndex(n, sigma, mode, global_tree=tree, h0=h0)
        marker = r.bitvector()
        local, glob = r.wavelet(), r.wavelet()
        _expect(len(marker) == n and local.length == marker.ones
                and glob.length == marker.zeros and b >= 1, "simple index shape")
        return SimpleBlockIndex(n, sigma, mode, b, marker, local, glob, h0=h0)
    if scheme == "multisize":
        delta = r.f64()
        sizes = tuple(r.u64() for _ in range(_bounded(r, r.u64())))
        h0_t = r.f64()
        t_tree = r.wavelet()
        trees = {}
        for _ in range(_bounded(r, r.u64())):
            k = r.u64()
            _expect(0 < k < len(sizes), "offset class index")
            trees[k] = r.wavelet()
        _expect(t_tree.length == n and delta > 0, "multisize index shape")
        return MultiSizeIndex(n, sigma, BlockLadder(delta, sizes), t_tree, trees, h0, h0_t)
    if scheme == "dynamic":
        delta = r.f64()
        sizes = [r.u64() for _ in range(_bounded(r, r.u64()))]
        weights = [r.u64() for _ in range(_bounded(r, r.u64()))] or None
        s_tree = r.wavelet()
        _expect(s_tree.length == n and s_tree.universe == sigma + 1 and delta > 0,
                "dynamic snapshot shape")
        return DynamicColorIndex.build(np.asarray(s_tree.to_list(), dtype=np.int64), delta,
                                       sigma=sigma, sizes=sizes, t_weights=weights)
    raise CorruptIndexError(f"unknown scheme {scheme!r}")


def _bounded(r: _Reader, count: int) -> int:
    if count > len(r.buf):
        raise CorruptIndexError("element count larger than file")
    return count


def _expect(cond: bool, what: str) -> None:
    if not cond:
        raise CorruptIndexError(f"inconsistent {what}")


def dumps(index, alphabet: Alphabet | None = None) -> bytes:
    alphabet = alphabet or Alphabet()
    w = _Writer()
    w.raw(_HEADER.pack(MAGIC, FORMAT_VERSION, SCHEME_TAGS[index.scheme], index.n, index.sigma))
    _write_alphabet(w, alphabet)
    w.f64(getattr(index, "h0", 0.0))
    _write_payload(w, index)
    body = w.getvalue()
    return body + struct.pack("<Q", zlib.crc32(body))


def loads(buf: bytes):
    """Parse an index file; returns ``(index, alphabet)``."""
    if len(buf) < _HEADER.size + 8:
        raise CorruptIndexError("file too short")
    magic, version, tag, n, sigma = _HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise CorruptIndexError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise CorruptIndexError(f"unsupported format version {version}")
    (stored,) = struct.unpack_from("<Q", buf, len(buf) - 8)
    if stored != zlib.crc32(buf[:-8]):
        raise CorruptIndexError("checksum mismatch")
    schemes = {v: k for k, v in SCHEME_TAGS.items()}
    if tag not in schemes:
        raise CorruptIndexError(f"unknown scheme tag {tag}")
    r = _Reader(buf[:-8], _HEADER.size)
    alphabet = _read_alphabet(r)
    h0 = r.f64()
    index = _read_payload(r, schemes[tag], n, sigma, h0)
    if r.pos != len(r.buf):
        raise CorruptIndexError("trailing bytes after payload")
    return index, alphabet


def save(path, index, alphabet: Alphabet | None = None) -> None:
    with open(path, "wb") as fh:
        fh.write(dumps(index, alphabet))


def load(path):
    with open(path, "rb") as fh:
        return loads(fh.read())
