"""Bit accounting shared by all schemes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np


def entropy_h0(symbols: Iterable[int] | np.ndarray) -> float:
    """Zeroth-order empirical entropy in bits per symbol."""
    arr = np.asarray(symbols if isinstance(symbols, np.ndarray) else list(symbols))
    n = len(arr)
    if n == 0:
        return 0.0
    _, counts = np.unique(arr, return_counts=True)
    return float(sum(c / n * math.log2(n / c) for c in counts.tolist()))


@dataclass
class SpaceReport:
    """Measured bit counts per component plus derived reference quantities.

    ``components`` sums to ``total_bits``; ``metrics`` holds entropy figures
    and bounds, which are not part of the total.
    """

    scheme: str
    n: int
    sigma: int
    components: dict[str, int] = field(default_factory=dict)
    metrics: dict[str, float] = field(default_factory=dict)

    @property
    def total_bits(self) -> int:
        return sum(self.components.values())

    @property
    def bits_per_symbol(self) -> float:
        return self.total_bits / self.n if self.n else 0.0

    def kv_lines(self) -> list[str]:
        lines = [f"scheme={self.scheme}", f"n={self.n}", f"sigma={self.sigma}"]
        lines += [f"bits.{k}={v}" for k, v in self.components.items()]
        lines.append(f"bits.total={self.total_bits}")
        lines += [f"{k}={v:.6g}" for k, v in self.metrics.items()]
        return lines

    def table(self) -> str:
        rows = [(k, str(v)) for k, v in self.components.items()]
        rows.append(("total", str(self.total_bits)))
        rows += [(k, f"{v:.4f}") for k, v in self.metrics.items()]
        width = max(len(k) for k, _ in rows)
        head = f"{self.scheme} index  n={self.n}  sigma={self.sigma}"
        return "\n".join([head] + [f"  {k:<{width}}  {v:>14}" for k, v in rows])
