"""DFUDS representation of labeled ordinal trees.

The bit sequence is the concatenated unary degree codes (1^deg 0 per node
in preorder) with a leading 1 prepended so the sequence is balanced when
1 is read as an open parenthesis.  A node handle is the position of the
first bit of its degree code.  Leaves are exactly the positions whose 00
bit pair ends at the handle, which gives leaf rank/select through an
auxiliary bitmap.
"""

import numpy as np

from ..serial import SectionReader, SectionWriter, pack_bits, pack_ints, unpack_bits, unpack_ints, width_for
from .bitvector import WORD, BitVector


class _SparseAgg:
    """Sparse table for range min or max queries over a small array."""

    def __init__(self, arr, op):
        self.op = op
        arr = np.asarray(arr, dtype=np.int64)
        self.levels = [arr]
        size = arr.size
        j = 1
        while (1 << j) <= size:
            prev = self.levels[-1]
            half = 1 << (j - 1)
            self.levels.append(op(prev[: prev.size - half], prev[half:]))
            j += 1

    def query(self, a, b):
        """Aggregate over indices [a, b] inclusive."""
        span = b - a + 1
        j = span.bit_length() - 1
        lv = self.levels[j]
        return int(self.op(lv[a : a + 1], lv[b - (1 << j) + 1 : b - (1 << j) + 2])[0])


class BalancedParens:
    """findclose-style navigation over a 1=open/0=close bitvector."""

    def __init__(self, bv):
        self.bv = bv
        self.n = bv.n
        bits = bv.to_bits().astype(np.int64)
        deltas = 2 * bits - 1
        exc = np.cumsum(deltas)  # exc[p-1] = excess after position p
        starts = np.arange(0, self.n, WORD)
        self.wexc = exc[np.minimum(starts + WORD - 1, self.n - 1)]
        self.wmin = np.minimum.reduceat(exc, starts)
        self._min_table = _SparseAgg(self.wmin, np.minimum)

    def excess(self, i):
        if i == 0:
            return 0
        return 2 * self.bv.rank(i, 1) - i

    def _scan_word(self, w, e, t, p0):
        """Scan word w from position p0 with running excess e; first p with
        excess t, or 0."""
        words = self.bv.words
        word = int(words[w])
        hi = min((w + 1) * WORD, self.n)
        for p in range(p0, hi + 1):
            e += 1 if (word >> ((p - 1) & 63)) & 1 else -1
            if e == t:
                return p
        return 0

    def close_at_level(self, i):
        """First position j > i where the excess drops to excess(i) - 1.

        For an open parenthesis at i this is findclose(i); for i = v - 1
        with v a DFUDS node handle it is the last position of v's subtree.
        """
        e = self.excess(i)
        t = e - 1
        w0 = i // WORD
        hit = self._scan_word(w0, e, t, i + 1)
        if hit:
            return hit
        nwords = len(self.wmin)
        lo, hi = w0 + 1, nwords - 1
        if lo > hi or self._min_table.query(lo, hi) > t:
            raise ValueError(f"no matching close for position {i}")
        # first word whose min excess reaches t
        a, b = lo, hi
        while a < b:
            mid = (a + b) // 2
            if self._min_table.query(lo, mid) <= t:
                b = mid
            else:
                a = mid + 1
        e_before = int(self.wexc[a - 1])
        return self._scan_word(a, e_before, t, a * WORD + 1)


class DfudsTree:
    """Labeled tree over DFUDS bits; labels are per-edge in preorder."""

    def __init__(self, bits, labels, label_sigma=None):
        arr = np.asarray(bits, dtype=np.uint8)
        self.parens = BitVector(arr)
        self.bp = BalancedParens(self.parens)
        self.labels = np.asarray(labels, dtype=np.int64)
        self.label_sigma = int(label_sigma) if label_sigma is not None else (
            int(self.labels.max()) + 1 if self.labels.size else 1
        )
        self.n_bits = int(arr.size)
        self.n_nodes = self.n_bits // 2
        flags = np.zeros(self.n_bits, dtype=np.uint8)
        if self.n_bits >= 2:
            zero = arr == 0
            flags[1:] = zero[1:] & zero[:-1]
        self._leaf_flags = BitVector(flags)

    @classmethod
    def from_tree(cls, root, label_sigma=None):
        """Build from nested lists: a node is a sorted list of
        (label, child_node) pairs; leaves are empty lists."""
        bits = [1]
        labels = []
        stack = [root]
        while stack:
            node = stack.pop()
            bits.extend([1] * len(node))
            bits.append(0)
            for label, _ in node:
                labels.append(label)
            for _, child in reversed(node):
                stack.append(child)
        return cls(np.asarray(bits, dtype=np.uint8), labels, label_sigma)

    @property
    def root(self):
        return 2

    def is_leaf(self, x):
        return self.parens.get(x) == 0

    def degree(self, x):
        if self.parens.get(x) == 0:
            return 0
        zeros_before = self.parens.rank(x - 1, 0)
        return self.parens.select(zeros_before + 1, 0) - x

    def child(self, x, i):
        """i-th child of x, 1-based."""
        d = self.degree(x)
        if not 1 <= i <= d:
            raise IndexError(f"child index {i} out of range [1,{d}]")
        return self.bp.close_at_level(x + d - i) + 1

    def _edge_base(self, x):
        # edges are numbered by their open parenthesis, skipping the leading 1
        return self.parens.rank(x - 1, 1) - 1

    def labeled_child(self, x, c):
        """Child of x along the edge labeled c, with the edge number,
        or None.  Binary search over the children's sorted labels."""
        d = self.degree(x)
        if d == 0:
            return None
        base = self._edge_base(x)
        window = self.labels[base : base + d]
        k = int(np.searchsorted(window, c))
        if k >= d or window[k] != c:
            return None
        return self.child(x, k + 1), base + k

    def child_label(self, x, i):
        return int(self.labels[self._edge_base(x) + i - 1])

    def preorder(self, x):
        return self.parens.rank(x - 1, 0) + 1

    def node_at_preorder(self, k):
        if k == 1:
            return self.root
        return self.parens.select(k - 1, 0) + 1

    def subtree_end(self, x):
        if x == self.root:
            return self.n_bits
        return self.bp.close_at_level(x - 1)

    def leaf_rank(self, x):
        """Number of leaves strictly to the left of node x."""
        return self._leaf_flags.rank(x - 1, 1)

    def n_leaves(self):
        count = self._leaf_flags.n_ones
        if self.n_nodes == 1:
            count += 1  # lone root leaf has no 00 pair
        return count

    def leftmost_leaf(self, x):
        if self.is_leaf(x):
            return x
        return self._leaf_flags.select(self.leaf_rank(x) + 1, 1)

    def rightmost_leaf(self, x):
        if self.is_leaf(x):
            return x
        end = self.subtree_end(x)
        return self._leaf_flags.select(self._leaf_flags.rank(end, 1), 1)

    def leaf_index_range(self, x):
        """1-based leaf numbers covered by the subtree of x."""
        if self.n_nodes == 1:
            return (1, 1)
        if self.is_leaf(x):
            r = self._leaf_flags.rank(x, 1)
            return (r, r)
        return (self.leaf_rank(x) + 1, self._leaf_flags.rank(self.subtree_end(x), 1))

    def size_bytes(self):
        return len(self.to_bytes())

    def to_bytes(self):
        w = SectionWriter()
        w.put_u64(self.n_bits)
        w.put_bytes(pack_bits(self.parens.to_bits()))
        w.put_u64(self.labels.size)
        w.put_u64(self.label_sigma)
        width = width_for(max(self.label_sigma - 1, 1))
        w.put_u8(width)
        w.put_bytes(pack_ints(self.labels, width))
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data):
        r = SectionReader(data)
        n_bits = r.get_u64()
        bits = unpack_bits(r.get_bytes(), n_bits)
        n_labels = r.get_u64()
        sigma = r.get_u64()
        width = r.get_u8()
        labels = unpack_ints(r.get_bytes(), width, n_labels)
        return cls(bits, labels, sigma)
