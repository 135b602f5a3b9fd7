"""Tokenizers for real input and seeded generators for synthetic corpora."""
from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .prevocc import ColorString
from .serialize import Alphabet

CORPORA = ("uniform", "zipf", "unary", "distinct")


def _densify(items) -> tuple[ColorString, list]:
    ids: dict = {}
    toks = [ids.setdefault(x, len(ids)) for x in items]
    return ColorString(np.asarray(toks, dtype=np.int64), len(ids)), list(ids)


def tokenize_bytes(data: bytes) -> tuple[ColorString, Alphabet]:
    """One token per byte, ids assigned in order of first appearance."""
    s, syms = _densify(data)
    return s, Alphabet("bytes", syms)


def tokenize_words(text: str) -> tuple[ColorString, Alphabet]:
    """Whitespace-separated tokens, ids assigned in order of first appearance."""
    s, syms = _densify(text.split())
    return s, Alphabet("tokens", syms)


def uniform(n: int, sigma: int, rng: np.random.Generator) -> ColorString:
    return ColorString(rng.integers(0, sigma, size=n), sigma)


def zipf(n: int, sigma: int, rng: np.random.Generator, exponent: float = 1.0) -> ColorString:
    """Symbol ``c`` drawn with probability proportional to ``(c + 1) ** -exponent``."""
    weights = 1.0 / np.arange(1, sigma + 1, dtype=float) ** exponent
    return ColorString(rng.choice(sigma, size=n, p=weights / weights.sum()), sigma)


def unary(n: int) -> ColorString:
    return ColorString(np.zeros(n, dtype=np.int64), 1)


def distinct(n: int) -> ColorString:
    return ColorString(np.arange(n, dtype=np.int64), max(n, 1))


def generate(kind: str, n: int, sigma: int, rng: np.random.Generator) -> ColorString:
    if kind == "uniform":
        return uniform(n, sigma, rng)
    if kind == "zipf":
        return zipf(n, sigma, rng)
    if kind == "unary":
        return unary(n)
    if kind == "distinct":
        return distinct(n)
    raise ValidationError(f"unknown corpus {kind!r}")


def random_ranges(n: int, count: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    a = rng.integers(1, n + 1, size=count)
    b = rng.integers(1, n + 1, size=count)
    return list(zip(np.minimum(a, b).tolist(), np.maximum(a, b).tolist()))
