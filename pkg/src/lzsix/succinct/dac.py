"""Directly addressable codes.

Values are cut into b-bit chunks, level i holding the i-th chunk of every
value that has one, plus a continuation bitmap per level.  Random access
costs one rank per chunk of the requested value.
"""

import numpy as np

from ..serial import SectionReader, SectionWriter, pack_bits, unpack_bits
from .bitvector import BitVector


class DacSequence:
    def __init__(self, values, block_width=4):
        if block_width < 1:
            raise ValueError("block width must be positive")
        arr = np.asarray(values, dtype=np.int64)
        if arr.size and arr.min() < 0:
            raise ValueError("DAC values must be non-negative")
        self.n = int(arr.size)
        self.b = int(block_width)
        self.levels = []
        self.continue_bits = []
        mask = np.uint64((1 << self.b) - 1)
        cur = arr.astype(np.uint64)
        while cur.size:
            chunk = (cur & mask).astype(np.int64)
            rest = cur >> np.uint64(self.b)
            more = rest != 0
            self.levels.append(chunk)
            self.continue_bits.append(BitVector(more.astype(np.uint8)))
            cur = rest[more]

    def __len__(self):
        return self.n

    def access(self, i):
        """Original value at index i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"DAC index {i} out of range [1,{self.n}]")
        value = 0
        shift = 0
        idx = i
        for chunk, more in zip(self.levels, self.continue_bits):
            value |= int(chunk[idx - 1]) << shift
            if not more.get(idx):
                return value
            shift += self.b
            idx = more.rank(idx)
        return value

    def to_list(self):
        return [self.access(i) for i in range(1, self.n + 1)]

    def size_bytes(self):
        return len(self.to_bytes())

    def to_bytes(self):
        w = SectionWriter()
        w.put_u64(self.n)
        w.put_u8(self.b)
        w.put_u32(len(self.levels))
        for chunk, more in zip(self.levels, self.continue_bits):
            w.put_ints(chunk, self.b)
            w.put_u64(len(more))
            w.put_bytes(pack_bits(more.to_bits()))
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data):
        r = SectionReader(data)
        obj = cls.__new__(cls)
        obj.n = r.get_u64()
        obj.b = r.get_u8()
        n_levels = r.get_u32()
        obj.levels = []
        obj.continue_bits = []
        for _ in range(n_levels):
            obj.levels.append(np.asarray(r.get_ints(), dtype=np.int64))
            nbits = r.get_u64()
            obj.continue_bits.append(BitVector(unpack_bits(r.get_bytes(), nbits)))
        return obj
