"""Coloured range counting over compressed strings.

Count the distinct symbols of any substring ``s[i..j]`` with a baseline
wavelet tree over the previous-occurrence array, fixed-size blocking,
entropy-compressed multi-size blocking, or a partially dynamic variant.
"""
from .bitvector import RankSelectBitvector, build_bitvector
from .dynamic import DynamicBitvector, DynamicColorIndex, DynamicWaveletTree
from .errors import (ColorCountError, CorruptIndexError, NotFoundError, RangeError,
                     ValidationError)
from .multisize import (BlockLadder, MultiSizeIndex, build_ladder, build_multisize,
                        classify_entry, multisize_count)
from .prevocc import (BaselineIndex, ColorString, baseline_count, build_prev_occ,
                      naive_distinct_count)
from .simple import (SimpleBlockIndex, SmallAlphabetIndex, build_simple, simple_count,
                     small_alphabet_count)
from .space import SpaceReport, entropy_h0
from .wavelet import WaveletTree, build_wavelet

__version__ = "0.1.0"
