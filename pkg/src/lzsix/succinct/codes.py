"""Variable-length integer codes and bit-stream helpers.

Codes are MSB-first within each codeword so printed codewords match the
usual tabulations (delta(8) = 11000000).  All coders take positive
integers.
"""


def unary_encode(v):
    """Unary code: v-1 ones followed by a zero."""
    if v < 1:
        raise ValueError("unary codes are defined for positive integers")
    return "1" * (v - 1) + "0"


def gamma_encode(v):
    """Elias gamma: unary length, then the binary value without its MSB."""
    if v < 1:
        raise ValueError("gamma codes are defined for positive integers")
    length = v.bit_length()
    return unary_encode(length) + bin(v)[3:]


def delta_encode(v):
    """Elias delta: gamma-coded length, then the value without its MSB."""
    if v < 1:
        raise ValueError("delta codes are defined for positive integers")
    length = v.bit_length()
    return gamma_encode(length) + bin(v)[3:]


def delta_decode(bits):
    """Inverse of delta_encode for a single codeword string."""
    if not bits:
        raise ValueError("empty codeword")
    nbytes = (len(bits) + 7) // 8
    data = (int(bits, 2) << (nbytes * 8 - len(bits))).to_bytes(nbytes, "big")
    reader = BitReader(data, len(bits))
    v = delta_read(reader)
    if reader.pos != reader.total:
        raise ValueError("trailing bits after delta codeword")
    return v


def vbyte_chunks(v, b):
    """Vbyte chunks of b+1 bits each, most significant chunk first.

    The high bit of a chunk is 0 in the most significant chunk and 1 in
    the rest.  vbyte_chunks(25, 3) == ['0011', '1001'].
    """
    if v < 1:
        raise ValueError("vbyte codes are defined for positive integers")
    blocks = []
    while True:
        blocks.append(v & ((1 << b) - 1))
        v >>= b
        if v == 0:
            break
    chunks = []
    for i, block in enumerate(reversed(blocks)):
        flag = "0" if i == 0 else "1"
        chunks.append(flag + format(block, f"0{b}b"))
    return chunks


def vbyte_encode(v, b):
    return "".join(vbyte_chunks(v, b))


class BitWriter:
    """MSB-first bit stream accumulator."""

    def __init__(self):
        self.acc = 0
        self.bit_length = 0

    def write(self, value, width):
        self.acc = (self.acc << width) | value
        self.bit_length += width

    def getvalue(self):
        nbytes = (self.bit_length + 7) // 8
        return (self.acc << (nbytes * 8 - self.bit_length)).to_bytes(nbytes, "big")


class BitReader:
    """MSB-first reader over a byte buffer; reads are O(1) in stream size."""

    def __init__(self, data, bit_length, offset=0):
        self.data = data
        self.total = bit_length
        self.pos = offset

    def reset(self, offset):
        self.pos = offset

    def read(self, width):
        if width == 0:
            return 0
        if self.pos + width > self.total:
            raise ValueError("bit stream exhausted")
        first = self.pos >> 3
        last = (self.pos + width - 1) >> 3
        window = int.from_bytes(self.data[first : last + 1], "big")
        shift = (last + 1) * 8 - (self.pos + width)
        self.pos += width
        return (window >> shift) & ((1 << width) - 1)

    def read_unary(self):
        v = 1
        while self.read(1):
            v += 1
        return v


def delta_append(writer, v):
    """Append delta_encode(v) to a BitWriter without building strings."""
    if v < 1:
        raise ValueError("delta codes are defined for positive integers")
    length = v.bit_length()
    llen = length.bit_length()
    writer.write((1 << llen) - 2, llen)  # unary(llen)
    writer.write(length - (1 << (llen - 1)), llen - 1)
    writer.write(v - (1 << (length - 1)), length - 1)


def delta_read(reader):
    llen = reader.read_unary()
    length = (1 << (llen - 1)) | reader.read(llen - 1)
    return (1 << (length - 1)) | reader.read(length - 1)
