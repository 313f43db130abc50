"""Plain and sparse bitmaps with rank/select.

Positions are 1-based throughout, matching the query conventions of the
rest of the library: rank_b(i) counts bits equal to b in positions 1..i
(rank(0) = 0) and select_b(j) is the position of the j-th b bit.
"""

import numpy as np

from ..serial import SectionReader, SectionWriter, pack_bits, unpack_bits
from .codes import BitReader, BitWriter, delta_append, delta_read

WORD = 64
SAMPLE_WORDS = 20  # one absolute rank sample per 20 words


def _popcount_words(words, a, b):
    if b <= a:
        return 0
    return int.from_bytes(words[a:b].tobytes(), "little").bit_count()


class BitVector:
    """Uncompressed bitmap: raw words plus absolute rank samples."""

    def __init__(self, bits):
        arr = np.asarray(bits, dtype=np.uint8)
        self.n = int(arr.size)
        packed = np.packbits(arr, bitorder="little")
        pad = (-packed.size) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        self.words = packed.view(np.uint64)
        if self.words.size:
            counts = np.bitwise_count(self.words).astype(np.int64)
            group_sums = np.add.reduceat(counts, np.arange(0, counts.size, SAMPLE_WORDS))
        else:
            counts = np.zeros(0, dtype=np.int64)
            group_sums = np.zeros(0, dtype=np.int64)
        # samples[g] = rank_1 before word group g
        self.samples = np.concatenate([[0], np.cumsum(group_sums)]).astype(np.int64)
        self.n_ones = int(counts.sum())

    def __len__(self):
        return self.n

    def get(self, i):
        """Bit at position i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"bit position {i} out of range [1,{self.n}]")
        p = i - 1
        return int((self.words[p >> 6] >> np.uint64(p & 63)) & np.uint64(1))

    def rank(self, i, bit=1):
        """Number of `bit` values in positions 1..i."""
        if i < 0 or i > self.n:
            raise IndexError(f"rank position {i} out of range [0,{self.n}]")
        if i == 0:
            return 0
        q, r = divmod(i, WORD)
        g = q // SAMPLE_WORDS
        ones = int(self.samples[g]) + _popcount_words(self.words, g * SAMPLE_WORDS, q)
        if r:
            ones += (int(self.words[q]) & ((1 << r) - 1)).bit_count()
        return ones if bit else i - ones

    def _before_group(self, g, bit):
        ones = int(self.samples[g])
        if bit:
            return ones
        return min(g * SAMPLE_WORDS * WORD, self.n) - ones

    def select(self, j, bit=1):
        """Position of the j-th `bit` value."""
        total = self.n_ones if bit else self.n - self.n_ones
        if not 1 <= j <= total:
            raise IndexError(f"select ordinal {j} out of range [1,{total}]")
        lo, hi = 0, len(self.samples) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._before_group(mid, bit) < j:
                lo = mid
            else:
                hi = mid - 1
        count = self._before_group(lo, bit)
        w = lo * SAMPLE_WORDS
        while True:
            word = int(self.words[w])
            width = min(WORD, self.n - w * WORD)
            inc = word.bit_count() if bit else width - word.bit_count()
            if count + inc >= j:
                break
            count += inc
            w += 1
        if not bit:
            word = ~int(self.words[w])
        else:
            word = int(self.words[w])
        pos = w * WORD
        need = j - count
        while True:
            if word & 1:
                need -= 1
                if need == 0:
                    return pos + 1
            word >>= 1
            pos += 1

    def to_bits(self):
        return unpack_bits(self.words.view(np.uint8).tobytes(), self.n)

    def size_bytes(self):
        return len(self.to_bytes())

    def to_bytes(self):
        w = SectionWriter()
        w.put_u64(self.n)
        w.put_bytes(pack_bits(self.to_bits()))
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data):
        r = SectionReader(data)
        n = r.get_u64()
        return cls(unpack_bits(r.get_bytes(), n))


class SparseBitmap:
    """Bitmap stored as delta-encoded gaps between consecutive ones.

    Meant for very sparse bitmaps (phrase boundaries, source starts).
    Every SAMPLE-th one keeps its absolute position and the bit offset of
    its gap code, so select_1 decodes at most SAMPLE gaps and rank adds a
    binary search over the samples.
    """

    SAMPLE = 16

    def __init__(self, positions, n_bits):
        pos = np.asarray(positions, dtype=np.int64)
        if pos.size and (pos[0] < 1 or np.any(np.diff(pos) <= 0) or pos[-1] > n_bits):
            raise ValueError("positions must be strictly increasing within [1, n_bits]")
        self.n = int(n_bits)
        self.n_ones = int(pos.size)
        writer = BitWriter()
        sample_pos = [0]
        sample_off = [0]
        prev = 0
        for idx in range(self.n_ones):
            p = int(pos[idx])
            if idx % self.SAMPLE == 0 and idx > 0:
                sample_pos.append(prev)
                sample_off.append(writer.bit_length)
            delta_append(writer, p - prev)
            prev = p
        self.stream = writer.getvalue()
        self.stream_bits = writer.bit_length
        # sample k: position already decoded (ones index k*SAMPLE) and offset
        # of the next gap code
        self.sample_pos = np.asarray(sample_pos, dtype=np.int64)
        self.sample_off = np.asarray(sample_off, dtype=np.int64)

    def __len__(self):
        return self.n

    def _reader_at(self, k):
        """Reader positioned at the gap code of the (k*SAMPLE+1)-th one."""
        return BitReader(self.stream, self.stream_bits, int(self.sample_off[k]))

    def select(self, j, bit=1):
        if not bit:
            return self._select0(j)
        if not 1 <= j <= self.n_ones:
            raise IndexError(f"select ordinal {j} out of range [1,{self.n_ones}]")
        k = (j - 1) // self.SAMPLE
        reader = self._reader_at(k)
        acc = int(self.sample_pos[k])
        for _ in range(j - k * self.SAMPLE):
            acc += delta_read(reader)
        return acc

    def rank(self, i, bit=1):
        if i < 0 or i > self.n:
            raise IndexError(f"rank position {i} out of range [0,{self.n}]")
        ones = self._rank1(i)
        return ones if bit else i - ones

    def _rank1(self, i):
        if self.n_ones == 0 or i == 0:
            return 0
        k = int(np.searchsorted(self.sample_pos, i, side="right")) - 1
        reader = self._reader_at(k)
        acc = int(self.sample_pos[k])
        count = k * self.SAMPLE
        while count < self.n_ones:
            nxt = acc + delta_read(reader)
            if nxt > i:
                break
            acc = nxt
            count += 1
        return count

    def get(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"bit position {i} out of range [1,{self.n}]")
        return self._rank1(i) - self._rank1(i - 1)

    def _select0(self, j):
        n_zeros = self.n - self.n_ones
        if not 1 <= j <= n_zeros:
            raise IndexError(f"select ordinal {j} out of range [1,{n_zeros}]")
        # find the sample block containing the j-th zero, then decode
        zeros_before = self.sample_pos - np.arange(len(self.sample_pos)) * self.SAMPLE
        k = max(int(np.searchsorted(zeros_before, j, side="left")) - 1, 0)
        reader = self._reader_at(k)
        acc = int(self.sample_pos[k])
        count = k * self.SAMPLE  # ones seen so far
        zeros = acc - count
        while count < self.n_ones:
            nxt = acc + delta_read(reader)
            gap_zeros = nxt - acc - 1
            if zeros + gap_zeros >= j:
                return acc + (j - zeros)
            zeros += gap_zeros
            acc = nxt
            count += 1
        return acc + (j - zeros)

    def positions(self):
        """Decode all one positions (used at load and for verification)."""
        out = np.zeros(self.n_ones, dtype=np.int64)
        reader = BitReader(self.stream, self.stream_bits, 0)
        acc = 0
        for idx in range(self.n_ones):
            acc += delta_read(reader)
            out[idx] = acc
        return out

    def size_bytes(self):
        return len(self.to_bytes())

    def to_bytes(self):
        w = SectionWriter()
        w.put_u64(self.n)
        w.put_u64(self.n_ones)
        w.put_u64(self.stream_bits)
        w.put_bytes(self.stream)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data):
        r = SectionReader(data)
        n = r.get_u64()
        n_ones = r.get_u64()
        stream_bits = r.get_u64()
        stream = r.get_bytes()
        reader = BitReader(stream, stream_bits)
        acc = 0
        pos = np.zeros(n_ones, dtype=np.int64)
        for k in range(n_ones):
            acc += delta_read(reader)
            pos[k] = acc
        return cls(pos, n)
