"""Text ingestion, suffix arrays of the (reverse) text, backward search,
range-maximum queries, and text statistics.

Byte 0x00 is reserved as the sentinel and rejected on ingestion; input
bytes are mapped onto a compact alphabet 1..sigma-1 with the sentinel as
symbol 0, appended at the end.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .rangeq import RangeArgMax, RangeMin

SENTINEL = 0


class Text:
    """A byte string with sentinel management and alphabet mapping."""

    def __init__(self, data):
        data = bytes(data)
        if b"\x00" in data:
            raise ValueError("input contains the reserved sentinel byte 0x00")
        self.data = data
        self.n = len(data) + 1  # includes the sentinel
        occurring = sorted(set(data))
        self.sigma = len(occurring) + 1
        self._byte_to_sym = np.full(256, -1, dtype=np.int16)
        self._sym_to_byte = np.zeros(self.sigma, dtype=np.uint8)
        for i, b in enumerate(occurring, start=1):
            self._byte_to_sym[b] = i
            self._sym_to_byte[i] = b
        arr = np.frombuffer(data, dtype=np.uint8)
        self.symbols = np.zeros(self.n, dtype=np.uint8)
        self.symbols[:-1] = self._byte_to_sym[arr]

    def __len__(self):
        return self.n

    def map_pattern(self, pattern):
        """Map a byte pattern to symbols; None if any byte is unmapped."""
        arr = np.frombuffer(bytes(pattern), dtype=np.uint8)
        syms = self._byte_to_sym[arr]
        if np.any(syms < 0):
            return None
        return syms.astype(np.uint8)

    def unmap(self, symbols):
        """Map symbols back to bytes; the sentinel has no byte image."""
        syms = np.asarray(symbols, dtype=np.int64)
        if syms.size and (syms.min() < 1 or syms.max() >= self.sigma):
            raise ValueError("symbol outside the mapped alphabet")
        return self._sym_to_byte[syms].tobytes()

    def alphabet_tables(self):
        return self._byte_to_sym.copy(), self._sym_to_byte.copy()


def suffix_array(seq):
    """Suffix array by prefix doubling (numpy argsort per round)."""
    arr = np.asarray(seq, dtype=np.int64)
    n = int(arr.size)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = arr.copy()
    k = 1
    while True:
        key2 = np.full(n, -1, dtype=np.int64)
        key2[: n - k] = rank[k:]
        key = rank * np.int64(n + 1) + (key2 + 1)
        order = np.argsort(key, kind="stable")
        ks = key[order]
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = ks[1:] != ks[:-1]
        ranks_sorted = np.cumsum(changed)
        if ranks_sorted[-1] == n - 1:
            return order
        rank = np.empty(n, dtype=np.int64)
        rank[order] = ranks_sorted
        k *= 2
        if k >= 2 * n:  # all suffixes distinct by now for any input
            return order


class BwsRange(tuple):
    """Suffix-array interval [sp, ep]; empty when sp > ep."""

    __slots__ = ()

    def __new__(cls, sp, ep):
        return super().__new__(cls, (sp, ep))

    @property
    def sp(self):
        return self[0]

    @property
    def ep(self):
        return self[1]

    @property
    def empty(self):
        return self[0] > self[1]


class SuffixArrayBundle:
    """Suffix array, inverse, BWT and C[] counts of a symbol sequence,
    plus a range-maximum structure over the suffix array."""

    OCC_BLOCK = 128

    def __init__(self, seq, with_rmq=True):
        seq = np.asarray(seq, dtype=np.uint8)
        self.n = int(seq.size)
        if self.n == 0:
            raise ValueError("empty sequence")
        if seq[-1] != seq.min() or int(np.count_nonzero(seq == seq[-1])) != 1:
            raise ValueError("sequence must end with its unique smallest symbol")
        self.seq = seq
        self.sigma = int(seq.max()) + 1
        sa0 = suffix_array(seq)
        self.A = sa0 + 1  # 1-based suffix start positions
        self.A_inv = np.zeros(self.n + 1, dtype=np.int64)
        self.A_inv[self.A] = np.arange(1, self.n + 1, dtype=np.int64)
        self.bwt = np.where(sa0 > 0, seq[sa0 - 1], seq[self.n - 1]).astype(np.uint8)
        freq = np.bincount(seq, minlength=self.sigma).astype(np.int64)
        self.counts = np.zeros(self.sigma + 1, dtype=np.int64)
        self.counts[1:] = np.cumsum(freq)  # counts[c] = #symbols < c
        nb = (self.n + self.OCC_BLOCK - 1) // self.OCC_BLOCK
        idx = (np.arange(self.n) // self.OCC_BLOCK) * self.sigma + self.bwt
        per_block = np.bincount(idx, minlength=nb * self.sigma).reshape(nb, self.sigma)
        self.occ = np.zeros((nb + 1, self.sigma), dtype=np.int64)
        np.cumsum(per_block, axis=0, out=self.occ[1:])
        self.rmq = RangeArgMax(self.A) if with_rmq else None
        self._lcp = None
        self._lcp_rmq = None

    @classmethod
    def build(cls, text, reversed=False, with_rmq=True):
        """Bundle over the text symbols or over the reverse text
        (reverse of the non-sentinel part with the sentinel kept last)."""
        if reversed:
            seq = np.concatenate(
                [text.symbols[:-1][::-1], np.zeros(1, dtype=np.uint8)]
            )
        else:
            seq = text.symbols
        return cls(seq, with_rmq=with_rmq)

    def rank_bwt(self, c, i):
        """Occurrences of symbol c in bwt[1..i]."""
        if i < 0 or i > self.n:
            raise IndexError(f"rank position {i} out of range [0,{self.n}]")
        return _kernels.bwt_rank(self.bwt, self.occ, self.OCC_BLOCK, int(c), i)

    def bws_step(self, rng, c):
        """One backward-search step: narrow rng to suffixes starting with
        symbol c followed by the current match."""
        sp, ep = rng
        if sp > ep:
            return BwsRange(1, 0)
        if not 0 <= c < self.sigma:
            return BwsRange(1, 0)
        c = int(c)
        base = int(self.counts[c])
        nsp = base + self.rank_bwt(c, sp - 1) + 1
        nep = base + self.rank_bwt(c, ep)
        if nsp > nep:
            return BwsRange(1, 0)
        return BwsRange(nsp, nep)

    def bws(self, pattern_symbols):
        """Full backward search; returns the BwsRange of the pattern."""
        rng = BwsRange(1, self.n)
        for c in reversed(np.asarray(pattern_symbols).tolist()):
            rng = self.bws_step(rng, c)
            if rng.empty:
                break
        return rng

    def rmq_max(self, sp, ep):
        """Position of the maximum of A on [sp, ep], ties to the left."""
        if sp > ep:
            raise ValueError(f"empty range [{sp},{ep}]")
        if sp < 1 or ep > self.n:
            raise IndexError(f"range [{sp},{ep}] out of [1,{self.n}]")
        return self.rmq.argmax(sp - 1, ep - 1) + 1

    def lf(self, i):
        """LF mapping over the BWT."""
        c = int(self.bwt[i - 1])
        return int(self.counts[c]) + self.rank_bwt(c, i)

    def lcp(self):
        if self._lcp is None:
            self._lcp = _kernels.lcp_from_sa(self.seq, self.A - 1)
        return self._lcp

    def lcp_between_ranks(self, ra, rb):
        """LCP of the suffixes of 0-based ranks ra < rb."""
        if self._lcp_rmq is None:
            self._lcp_rmq = RangeMin(self.lcp())
        return self._lcp_rmq.min(ra + 1, rb)


def empirical_entropy(data, k):
    """k-th order empirical entropy in bits/symbol plus the number of
    distinct length-k contexts."""
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    n = int(arr.size)
    if k < 0:
        raise ValueError("order must be non-negative")
    if k >= n:
        raise ValueError(f"order {k} must be smaller than the text length {n}")
    if k == 0:
        counts = np.bincount(arr)
        counts = counts[counts > 0]
        p = counts / n
        return float(-(p * np.log2(p)).sum()), 1
    keys = np.zeros(n - k + 1, dtype=np.uint64)
    for j in range(k):
        keys = (keys << np.uint64(8)) | arr[j : n - k + 1 + j].astype(np.uint64)
    n_contexts = int(np.unique(keys).size)
    ctx = keys[:-1]
    if ctx.size == 0:
        return 0.0, n_contexts
    _, inv = np.unique(ctx, return_inverse=True)
    pair = inv.astype(np.uint64) * np.uint64(256) + arr[k:].astype(np.uint64)
    upair, pair_counts = np.unique(pair, return_counts=True)
    ctx_tot = np.bincount(inv)
    totals = ctx_tot[(upair >> np.uint64(8)).astype(np.int64)]
    h = float((pair_counts * np.log2(totals / pair_counts)).sum() / n)
    return h, n_contexts


def context_count(data, k):
    """Number of distinct substrings of length k (the complexity function)."""
    if k == 0:
        return 1
    return empirical_entropy(data, k)[1]


def ipm(data):
    """Inverse probability that two random characters match."""
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    n = int(arr.size)
    if n == 0:
        raise ValueError("empty text")
    counts = np.bincount(arr)
    p = counts[counts > 0] / n
    return float(1.0 / (p * p).sum())


def entropy_table(data, k_max=8):
    """Rows (k, H_k bits, H_k as % of 8 bits, contexts) for k = 0..k_max."""
    rows = []
    for k in range(k_max + 1):
        h, ctx = empirical_entropy(data, k)
        rows.append((k, h, 100.0 * h / 8.0, ctx))
    return rows


@dataclass
class TextStats:
    """Entropy values H_0..H_k, context counts, and the inverse
    probability of matching."""

    h_k: list
    contexts: list
    ipm: float


def text_stats(data, k_max=8):
    rows = entropy_table(data, k_max)
    return TextStats(
        h_k=[h for _, h, _, _ in rows],
        contexts=[c for _, _, _, c in rows],
        ipm=ipm(data),
    )
