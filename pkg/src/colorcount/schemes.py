"""Scheme names and a uniform build entry point."""
from __future__ import annotations

from .dynamic import DynamicColorIndex
from .errors import ValidationError
from .multisize import MultiSizeIndex, build_multisize
from .prevocc import BaselineIndex, ColorString
from .simple import SimpleBlockIndex, build_simple

BASELINE = "baseline"
SIMPLE = "simple"
MULTISIZE = "multisize"
DYNAMIC = "dynamic"
SCHEMES = (BASELINE, SIMPLE, MULTISIZE, DYNAMIC)

AnyIndex = BaselineIndex | SimpleBlockIndex | MultiSizeIndex | DynamicColorIndex


def build_index(scheme: str, s: ColorString, delta: float | None = None,
                block_len: int | None = None) -> AnyIndex:
    if delta is not None and not delta > 0:
        raise ValidationError(f"delta must be positive, got {delta}")
    if s.n < 1 and scheme != DYNAMIC:
        raise ValidationError("cannot index an empty string")
    if scheme == BASELINE:
        return BaselineIndex.build(s)
    if scheme == SIMPLE:
        return build_simple(s, block_len)
    if scheme == MULTISIZE:
        return build_multisize(s, delta)
    if scheme == DYNAMIC:
        return DynamicColorIndex.build(s, delta)
    raise ValidationError(f"unknown scheme {scheme!r}")


def symbols_from_prev_occ(prev) -> list[int]:
    """Label each previous-occurrence chain by its rank of first appearance.

    This inverts ``build_prev_occ`` for strings tokenized in first-appearance
    order, which is how the CLI tokenizes input.
    """
    labels: list[int] = []
    fresh = 0
    for p in prev:
        if p:
            labels.append(labels[p - 1])
        else:
            labels.append(fresh)
            fresh += 1
    return labels


def to_dynamic(index: AnyIndex) -> DynamicColorIndex:
    """Promote a multi-size index to the dynamic variant."""
    if isinstance(index, DynamicColorIndex):
        return index
    if isinstance(index, MultiSizeIndex):
        syms = symbols_from_prev_occ(index.decode_prev_occ())
        return DynamicColorIndex.build(ColorString.of(syms, index.sigma), index.delta)
    raise ValidationError(f"{index.scheme} index cannot be edited; build it with multisize or dynamic")
