"""Block-decomposed range queries over static integer arrays.

RangeArgMax answers arg-max positions with smallest-position tie break;
RangeMin answers plain minima.  Both use 64-element blocks with a sparse
table over block summaries, so queries cost one or two short scans plus
an O(1) table lookup.
"""

import numpy as np

BLOCK = 64


class _Table:
    def __init__(self, arr, op):
        self.op = op
        self.levels = [np.asarray(arr, dtype=np.int64)]
        j = 1
        while (1 << j) <= self.levels[0].size:
            prev = self.levels[-1]
            half = 1 << (j - 1)
            self.levels.append(op(prev[: prev.size - half], prev[half:]))
            j += 1

    def query(self, a, b):
        """op over [a, b] inclusive; a <= b required."""
        j = (b - a + 1).bit_length() - 1
        lv = self.levels[j]
        return int(self.op(lv[a], lv[b - (1 << j) + 1]))


class RangeArgMax:
    """Position of the maximum over values[lo..hi], ties to the left."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.int64)
        n = self.values.size
        nb = (n + BLOCK - 1) // BLOCK
        pad = np.full(nb * BLOCK, np.iinfo(np.int64).min, dtype=np.int64)
        pad[:n] = self.values
        grid = pad.reshape(nb, BLOCK)
        in_block = grid.argmax(axis=1)
        self.block_pos = np.arange(nb) * BLOCK + in_block
        best = grid[np.arange(nb), in_block]
        # encode (value, position) so max key = max value with min position
        self._bits = max(1, int(nb * BLOCK).bit_length())
        self._mask = (1 << self._bits) - 1
        self._keys = (best << np.int64(self._bits)) | (np.int64(self._mask) - self.block_pos)
        self._table = _Table(self._keys, np.maximum) if nb else None

    def _scan(self, lo, hi):
        seg = self.values[lo : hi + 1]
        k = int(seg.argmax())
        return int(seg[k]), lo + k

    def argmax(self, lo, hi):
        """0-based inclusive range; returns the position."""
        if lo > hi:
            raise ValueError("empty range")
        b_lo, b_hi = lo // BLOCK, hi // BLOCK
        if b_lo == b_hi:
            return self._scan(lo, hi)[1]
        best_val, best_pos = self._scan(lo, (b_lo + 1) * BLOCK - 1)
        if b_hi - b_lo > 1:
            key = self._table.query(b_lo + 1, b_hi - 1)
            val, pos = key >> self._bits, self._mask - (key & self._mask)
            if val > best_val:
                best_val, best_pos = val, pos
        val, pos = self._scan(b_hi * BLOCK, hi)
        if val > best_val:
            best_val, best_pos = val, pos
        return best_pos


class SparseMinTable:
    """Plain sparse table over an array, with vectorized range-min.

    Uses n log n words; meant for transient build-time use where many
    range-min queries are issued as numpy batches.
    """

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.int64)
        self.levels = [self.values]
        j = 1
        while (1 << j) <= self.values.size:
            prev = self.levels[-1]
            half = 1 << (j - 1)
            self.levels.append(np.minimum(prev[: prev.size - half], prev[half:]))
            j += 1

    def min_vec(self, a, b):
        """Elementwise min over [a_i, b_i] inclusive; empty ranges (a > b)
        yield int64 max."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.full(a.shape, np.iinfo(np.int64).max, dtype=np.int64)
        ok = a <= b
        if not np.any(ok):
            return out
        span = b[ok] - a[ok] + 1
        j = (np.ceil(np.log2(span + 1)) - 1).astype(np.int64)
        j = np.minimum(np.maximum(j, 0), len(self.levels) - 1)
        left = np.empty(int(ok.sum()), dtype=np.int64)
        right = np.empty_like(left)
        for lev in np.unique(j):
            mask = j == lev
            lv = self.levels[int(lev)]
            aa = a[ok][mask]
            bb = b[ok][mask] - (1 << int(lev)) + 1
            left[mask] = lv[aa]
            right[mask] = lv[bb]
        out[ok] = np.minimum(left, right)
        return out


class RangeMin:
    """Minimum over values[lo..hi]."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.int64)
        n = self.values.size
        nb = (n + BLOCK - 1) // BLOCK
        pad = np.full(nb * BLOCK, np.iinfo(np.int64).max, dtype=np.int64)
        pad[:n] = self.values
        mins = pad.reshape(nb, BLOCK).min(axis=1)
        self._table = _Table(mins, np.minimum) if nb else None

    def min(self, lo, hi):
        """0-based inclusive range minimum."""
        if lo > hi:
            raise ValueError("empty range")
        b_lo, b_hi = lo // BLOCK, hi // BLOCK
        if b_lo == b_hi:
            return int(self.values[lo : hi + 1].min())
        out = int(self.values[lo : (b_lo + 1) * BLOCK].min())
        if b_hi - b_lo > 1:
            out = min(out, self._table.query(b_lo + 1, b_hi - 1))
        return min(out, int(self.values[b_hi * BLOCK : hi + 1].min()))
