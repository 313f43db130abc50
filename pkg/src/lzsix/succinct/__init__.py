"""Immutable succinct primitives: bitmaps, integer codes, DACs, wavelet
trees, permutations with cycle shortcuts, and DFUDS labeled trees."""

from .bitvector import BitVector, SparseBitmap
from .codes import (
    BitReader,
    BitWriter,
    delta_append,
    delta_decode,
    delta_encode,
    delta_read,
    gamma_encode,
    unary_encode,
    vbyte_chunks,
    vbyte_encode,
)
from .dac import DacSequence
from .dfuds import BalancedParens, DfudsTree
from .permutation import CyclePermutation
from .wavelet import WaveletTree

__all__ = [
    "BitVector",
    "SparseBitmap",
    "BitReader",
    "BitWriter",
    "delta_append",
    "delta_decode",
    "delta_encode",
    "delta_read",
    "gamma_encode",
    "unary_encode",
    "vbyte_chunks",
    "vbyte_encode",
    "DacSequence",
    "BalancedParens",
    "DfudsTree",
    "CyclePermutation",
    "WaveletTree",
]
