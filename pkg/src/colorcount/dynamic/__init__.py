from .bitvector import DynamicBitvector
from .index import DynamicColorIndex, dynamic_count
from .wavelet import BALANCED, HUFFMAN, DynamicWaveletTree

__all__ = ["DynamicBitvector", "DynamicWaveletTree", "DynamicColorIndex",
           "dynamic_count", "BALANCED", "HUFFMAN"]
