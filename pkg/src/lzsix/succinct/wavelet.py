"""Balanced wavelet tree with range search and prevLess.

The alphabet interval [0, sigma) is split at its midpoint on every level,
lower half to the left (bit 0).  Positions are 1-based, symbols 0-based.
"""

import numpy as np

from ..serial import SectionReader, SectionWriter, pack_ints, unpack_ints, width_for
from .bitvector import BitVector


class WaveletTree:
    def __init__(self, values, sigma=None):
        vals = np.asarray(values, dtype=np.int64)
        if sigma is None:
            sigma = int(vals.max()) + 1 if vals.size else 1
        if vals.size and (vals.min() < 0 or vals.max() >= sigma):
            raise ValueError("values out of [0, sigma)")
        self.n = int(vals.size)
        self.sigma = int(sigma)
        self._values = vals
        self.nodes = {}
        stack = [(0, self.sigma - 1, vals)]
        while stack:
            lo, hi, sub = stack.pop()
            if lo >= hi or sub.size == 0:
                continue
            mid = (lo + hi) // 2
            bits = sub > mid
            self.nodes[(lo, hi)] = BitVector(bits.astype(np.uint8))
            stack.append((lo, mid, sub[~bits]))
            stack.append((mid + 1, hi, sub[bits]))

    def __len__(self):
        return self.n

    def access(self, i):
        """Symbol at position i."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range [1,{self.n}]")
        lo, hi = 0, self.sigma - 1
        while lo < hi:
            bv = self.nodes[(lo, hi)]
            mid = (lo + hi) // 2
            if bv.get(i):
                i = bv.rank(i, 1)
                lo = mid + 1
            else:
                i = bv.rank(i, 0)
                hi = mid
        return lo

    def rank(self, c, i):
        """Occurrences of symbol c in positions 1..i."""
        if not 0 <= c < self.sigma:
            raise IndexError(f"symbol {c} out of range [0,{self.sigma})")
        if i < 0 or i > self.n:
            raise IndexError(f"position {i} out of range [0,{self.n}]")
        lo, hi = 0, self.sigma - 1
        while lo < hi and i > 0:
            bv = self.nodes.get((lo, hi))
            if bv is None:
                return 0
            mid = (lo + hi) // 2
            if c > mid:
                i = bv.rank(i, 1)
                lo = mid + 1
            else:
                i = bv.rank(i, 0)
                hi = mid
        return i

    def select(self, c, j):
        """Position of the j-th occurrence of symbol c."""
        if not 0 <= c < self.sigma:
            raise IndexError(f"symbol {c} out of range [0,{self.sigma})")
        if j < 1 or j > self.rank(c, self.n):
            raise IndexError(f"symbol {c} has fewer than {j} occurrences")
        return self._select(0, self.sigma - 1, c, j)

    def _select(self, lo, hi, c, j):
        if lo >= hi:
            return j
        bv = self.nodes[(lo, hi)]
        mid = (lo + hi) // 2
        if c > mid:
            return bv.select(self._select(mid + 1, hi, c, j), 1)
        return bv.select(self._select(lo, mid, c, j), 0)

    def range_count(self, x1, x2, y1, y2):
        """Number of positions x in [x1,x2] with access(x) in [y1,y2]."""
        self._check_range(x1, x2)
        return self._range(0, self.sigma - 1, x1, x2, y1, y2, None)

    def range_report(self, x1, x2, y1, y2):
        """All (x, access(x)) pairs in the rectangle, one select walk each."""
        self._check_range(x1, x2)
        out = []
        self._range(0, self.sigma - 1, x1, x2, y1, y2, out, path=())
        out.sort()
        return out

    def _check_range(self, x1, x2):
        if x1 > x2:
            return
        if x1 < 1 or x2 > self.n:
            raise IndexError(f"range [{x1},{x2}] out of [1,{self.n}]")

    def _range(self, lo, hi, x1, x2, y1, y2, out, path=None):
        if x1 > x2 or y1 > y2 or hi < y1 or lo > y2:
            return 0
        if y1 <= lo and hi <= y2:
            if out is not None:
                for p in range(x1, x2 + 1):
                    out.append((self._map_up(path, p), self._access_in(lo, hi, p)))
            return x2 - x1 + 1
        bv = self.nodes.get((lo, hi))
        if bv is None:
            return 0
        mid = (lo + hi) // 2
        l0 = bv.rank(x1 - 1, 0)
        l1 = bv.rank(x2, 0)
        r0 = (x1 - 1) - l0
        r1 = x2 - l1
        total = self._range(
            lo, mid, l0 + 1, l1, y1, y2, out,
            None if out is None else path + ((bv, 0),),
        )
        total += self._range(
            mid + 1, hi, r0 + 1, r1, y1, y2, out,
            None if out is None else path + ((bv, 1),),
        )
        return total

    def _map_up(self, path, p):
        for bv, side in reversed(path):
            p = bv.select(p, side)
        return p

    def _access_in(self, lo, hi, i):
        while lo < hi:
            bv = self.nodes[(lo, hi)]
            mid = (lo + hi) // 2
            if bv.get(i):
                i = bv.rank(i, 1)
                lo = mid + 1
            else:
                i = bv.rank(i, 0)
                hi = mid
        return lo

    def prev_less(self, pos, v):
        """Rightmost position p < pos with access(p) <= v, or None."""
        if not 1 <= pos <= self.n + 1:
            raise IndexError(f"position {pos} out of range [1,{self.n + 1}]")
        if v < 0:
            return None
        res = self._prev_less(0, self.sigma - 1, pos, v)
        return res if res else None

    def _prev_less(self, lo, hi, pos, v):
        if pos <= 1:
            return 0
        if v >= hi:
            return pos - 1  # every value here qualifies
        if lo > v:
            return 0
        bv = self.nodes.get((lo, hi))
        if bv is None:
            return 0
        mid = (lo + hi) // 2
        if v <= mid:
            sub = self._prev_less(lo, mid, bv.rank(pos - 1, 0) + 1, v)
            return bv.select(sub, 0) if sub else 0
        zeros = bv.rank(pos - 1, 0)
        cand = bv.select(zeros, 0) if zeros else 0  # rightmost left-half entry
        sub = self._prev_less(mid + 1, hi, bv.rank(pos - 1, 1) + 1, v)
        if sub:
            cand = max(cand, bv.select(sub, 1))
        return cand

    def values(self):
        return self._values

    def size_bytes(self):
        return len(self.to_bytes())

    def to_bytes(self):
        w = SectionWriter()
        w.put_u64(self.n)
        w.put_u64(self.sigma)
        width = width_for(max(self.sigma - 1, 1))
        w.put_u8(width)
        w.put_bytes(pack_ints(self._values, width))
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data):
        r = SectionReader(data)
        n = r.get_u64()
        sigma = r.get_u64()
        width = r.get_u8()
        values = unpack_ints(r.get_bytes(), width, n)
        return cls(values, sigma)
