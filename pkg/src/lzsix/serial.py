"""Binary section format shared by every serializable structure.

Every structure serializes to a section: a 4-byte ASCII tag, a u64
little-endian payload length, and the payload.  Integer arrays inside
payloads are bit-packed at a fixed width so index files stay close to the
information-theoretic size; auxiliary rank/select machinery is rebuilt on
load instead of being stored.
"""

import struct

import numpy as np


def width_for(max_value):
    """Number of bits needed to store values in [0, max_value]."""
    return max(1, int(max_value).bit_length())


def pack_ints(values, width):
    """Pack non-negative integers into a little-endian bitstream."""
    arr = np.asarray(values, dtype=np.uint64)
    if arr.size == 0:
        return b""
    shifts = np.arange(width, dtype=np.uint64)
    bits = (arr[:, None] >> shifts[None, :]) & np.uint64(1)
    return np.packbits(bits.astype(np.uint8).ravel(), bitorder="little").tobytes()


def unpack_ints(data, width, count):
    """Inverse of pack_ints; returns an int64 array of length count."""
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    bits = bits[: count * width].reshape(count, width).astype(np.uint64)
    shifts = np.arange(width, dtype=np.uint64)
    return (bits << shifts[None, :]).sum(axis=1, dtype=np.uint64).astype(np.int64)


def pack_bits(bits):
    """Pack a 0/1 array into bytes, little-endian bit order."""
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.size == 0:
        return b""
    return np.packbits(arr, bitorder="little").tobytes()


def unpack_bits(data, n_bits):
    if n_bits == 0:
        return np.zeros(0, dtype=np.uint8)
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")[:n_bits]


class SectionWriter:
    def __init__(self):
        self.parts = []

    def put_u64(self, v):
        self.parts.append(struct.pack("<Q", v))

    def put_u32(self, v):
        self.parts.append(struct.pack("<I", v))

    def put_u8(self, v):
        self.parts.append(struct.pack("<B", v))

    def put_bytes(self, data):
        self.parts.append(struct.pack("<Q", len(data)))
        self.parts.append(data)

    def put_ints(self, values, width):
        arr = np.asarray(values, dtype=np.int64)
        self.put_u64(arr.size)
        self.put_u8(width)
        self.put_bytes(pack_ints(arr, width))

    def getvalue(self):
        return b"".join(self.parts)


class SectionReader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, k):
        chunk = self.data[self.pos : self.pos + k]
        if len(chunk) != k:
            raise ValueError("truncated section")
        self.pos += k
        return chunk

    def get_u64(self):
        return struct.unpack("<Q", self.take(8))[0]

    def get_u32(self):
        return struct.unpack("<I", self.take(4))[0]

    def get_u8(self):
        return struct.unpack("<B", self.take(1))[0]

    def get_bytes(self):
        return self.take(self.get_u64())

    def get_ints(self):
        count = self.get_u64()
        width = self.get_u8()
        return unpack_ints(self.get_bytes(), width, count)


def wrap_section(tag, payload):
    """Tag + length-prefixed payload, the on-disk unit for every structure."""
    if len(tag) != 4:
        raise ValueError("section tag must be 4 bytes")
    return tag + struct.pack("<Q", len(payload)) + payload


def read_section(data, offset=0):
    """Returns (tag, payload, next_offset)."""
    tag = data[offset : offset + 4]
    (length,) = struct.unpack("<Q", data[offset + 4 : offset + 12])
    start = offset + 12
    return tag, data[start : start + length], start + length
