import struct
import zlib

import pytest

from colorcount.dynamic import DynamicColorIndex
from colorcount.errors import CorruptIndexError
from colorcount.schemes import SCHEMES, build_index
from colorcount.serialize import Alphabet, dumps, loads


def all_counts(index):
    n = index.n
    return [index.count(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


@pytest.mark.parametrize("scheme", SCHEMES)
def test_round_trip(abra, scheme):
    index = build_index(scheme, abra)
    alpha = Alphabet("bytes", list(b"abrcd"))
    back, alpha2 = loads(dumps(index, alpha))
    assert back.scheme == scheme
    assert (back.n, back.sigma) == (index.n, index.sigma)
    assert alpha2 == alpha
    assert all_counts(back) == all_counts(index)


@pytest.mark.parametrize("mode_len", [None, 2, 4])
def test_round_trip_simple_modes(small_corpus, mode_len):
    for s, ranges, expected in small_corpus[:20]:
        if mode_len and mode_len > s.n:
            continue
        index = build_index("simple", s, block_len=mode_len)
        back, _ = loads(dumps(index))
        assert [back.count(i, j) for i, j in ranges] == expected


def test_dynamic_snapshot_keeps_edits(abra):
    idx = DynamicColorIndex.build(abra, 1.0)
    idx.delete_char(5)
    idx.append_char(2)
    back, _ = loads(dumps(idx, Alphabet("tokens", ["x", "y", "zz", "é", "w"])))
    assert back.symbols() == idx.symbols()
    assert back.decode_prev_occ() == idx.decode_prev_occ()
    assert back.sizes == idx.sizes
    assert all_counts(back) == all_counts(idx)


def test_output_is_deterministic(abra):
    assert dumps(build_index("multisize", abra)) == dumps(build_index("multisize", abra))


def reseal(buf: bytes) -> bytes:
    body = buf[:-8]
    return body + struct.pack("<Q", zlib.crc32(body))


@pytest.mark.parametrize("mutate, message", [
    (lambda b: b"XXXX" + b[4:], "magic"),
    (lambda b: reseal(b[:4] + struct.pack("<H", 99) + b[6:-8] + b[-8:]), "version"),
    (lambda b: b[:30] + bytes([b[30] ^ 1]) + b[31:], "checksum"),
    (lambda b: b[:10], "short"),
    (lambda b: reseal(b[:-8] + b"\0" + b[-8:]), "trailing"),
    (lambda b: reseal(b[:-16] + b[-8:]), "truncated"),
])
def test_corruption_rejected(abra, mutate, message):
    buf = dumps(build_index("multisize", abra))
    with pytest.raises(CorruptIndexError, match=message):
        loads(mutate(buf))
