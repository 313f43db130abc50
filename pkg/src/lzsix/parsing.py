"""LZ77, LZ78 and LZ-End parsers, the compact phrase encoding, random
substring extraction, and parsing statistics.

A phrase copies `copy_len` symbols from its source and appends one
trailing symbol.  The source field holds the source start position for
LZ77 and the source phrase id for LZ78/LZ-End (0 for the empty source).
The final phrase of a parse without a sentinel may be cut by the text
end, in which case its trail is None.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .serial import SectionReader, SectionWriter, pack_ints, unpack_ints, width_for
from .succinct import SparseBitmap
from .textcore import SuffixArrayBundle

LZ77 = "lz77"
LZ78 = "lz78"
LZEND = "lzend"

_KIND_CODE = {LZ77: 0, LZ78: 1, LZEND: 2}
_KIND_NAME = {v: k for k, v in _KIND_CODE.items()}


@dataclass(frozen=True)
class Phrase:
    source: int
    copy_len: int
    trail: Optional[int]


@dataclass
class ParsingStats:
    height: int
    mean_height: float
    max_phrase_len: int
    retraversed: Optional[int] = None


class Parsing:
    def __init__(self, kind, n, copy_lens, sources, trails, n_processed=None):
        self.kind = kind
        self.n = int(n)
        self.copy_lens = np.asarray(copy_lens, dtype=np.int64)
        self.sources = np.asarray(sources, dtype=np.int64)
        self.trails = np.asarray(trails, dtype=np.int64)  # -1 = cut by text end
        self.n_processed = n_processed
        lengths = self.copy_lens + (self.trails >= 0)
        self.ends = np.cumsum(lengths)
        if self.ends.size and int(self.ends[-1]) != self.n:
            raise ValueError("phrase lengths do not cover the text")

    @property
    def n_phrases(self):
        return int(self.copy_lens.size)

    def phrases(self):
        for p in range(self.n_phrases):
            t = int(self.trails[p])
            yield Phrase(int(self.sources[p]), int(self.copy_lens[p]), None if t < 0 else t)

    def max_phrase_len(self):
        return int((self.copy_lens + (self.trails >= 0)).max()) if self.n_phrases else 0

    def decode(self):
        """Reproduce the parsed symbol sequence."""
        return _decode(self.kind, self.copy_lens, self.sources, self.trails, self.ends, self.n)

    def phrase_strings(self, seq=None):
        """The phrases as byte strings of a decoded sequence (testing aid)."""
        seq = self.decode() if seq is None else np.asarray(seq, dtype=np.uint8)
        out = []
        start = 0
        for e in self.ends:
            out.append(seq[start : int(e)].tobytes())
            start = int(e)
        return out


def _decode(kind, copy_lens, sources, trails, ends, n):
    out = np.zeros(n, dtype=np.uint8)
    pos = 0
    for p in range(copy_lens.size):
        ln = int(copy_lens[p])
        if ln:
            if kind == LZ77:
                s0 = int(sources[p]) - 1
            else:
                s0 = int(ends[int(sources[p]) - 1]) - ln
            out[pos : pos + ln] = out[s0 : s0 + ln]
            pos += ln
        t = int(trails[p])
        if t >= 0:
            out[pos] = t
            pos += 1
    return out


def _compact_symbols(data):
    """Map raw bytes onto 1..sigma-1 (order preserving) with sentinel 0."""
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    uniq = np.unique(arr)
    syms = np.zeros(arr.size + 1, dtype=np.uint8)
    syms[:-1] = np.searchsorted(uniq, arr) + 1
    return syms


def _reverse_machinery(symbols):
    rseq = np.concatenate([symbols[:-1][::-1], np.zeros(1, dtype=np.uint8)])
    return SuffixArrayBundle(rseq)


def _run_parser(symbols, n_parse, mode_code, kind):
    bundle = _reverse_machinery(symbols)
    lens, srcs, trails, n_proc = _kernels.lz_parse(
        symbols,
        n_parse,
        bundle.A,
        bundle.A_inv,
        bundle.bwt,
        bundle.occ,
        bundle.OCC_BLOCK,
        bundle.counts,
        mode_code,
    )
    return Parsing(kind, n_parse, lens, srcs, trails, n_processed=n_proc)


def parse_lz77(text):
    """Greedy longest-match parsing with sources inside T[1, i-1]."""
    symbols, n_parse = _as_symbols(text)
    return _run_parser(symbols, n_parse, 0, LZ77)


def parse_lzend(text):
    """LZ-End parsing: sources must end at a previous phrase boundary.

    Returns (parsing, stats); stats.retraversed is the total number of
    text symbols processed by the construction.
    """
    symbols, n_parse = _as_symbols(text)
    parsing = _run_parser(symbols, n_parse, 1, LZEND)
    stats = compute_height(parsing)
    stats.retraversed = parsing.n_processed
    return parsing, stats


def parse_lz78(text):
    """Dictionary-of-phrases parsing."""
    symbols, n_parse = _as_symbols(text)
    trie = {}
    lens, srcs, trails = [], [], []
    plen = {0: 0}
    p = 1
    i = 1
    while i <= n_parse:
        q = 0
        j = i
        while j <= n_parse and (q, int(symbols[j - 1])) in trie:
            q = trie[(q, int(symbols[j - 1]))]
            j += 1
        if j <= n_parse:
            trail = int(symbols[j - 1])
            trie[(q, trail)] = p
            plen[p] = plen[q] + 1
            lens.append(plen[q])
            srcs.append(q)
            trails.append(trail)
            i = j + 1
        else:
            lens.append(plen[q])
            srcs.append(q)
            trails.append(-1)
            i = j
        p += 1
    return Parsing(LZ78, n_parse, lens, srcs, trails)


def _as_symbols(text):
    if hasattr(text, "symbols"):
        return text.symbols, int(text.n)
    symbols = np.asarray(text, dtype=np.uint8)
    if symbols[-1] != 0 or np.count_nonzero(symbols == 0) != 1:
        raise ValueError("symbol input must end with the unique sentinel 0")
    return symbols, int(symbols.size)


def parse_raw(kind, data):
    """Parse raw bytes with no sentinel appended (the concatenation-law
    surface: the final phrase may be trail-less)."""
    symbols = _compact_symbols(data)
    n_parse = len(data)
    if n_parse == 0:
        raise ValueError("empty text")
    if kind == LZ78:
        return parse_lz78(_RawView(symbols, n_parse))
    return _run_parser(symbols, n_parse, 0 if kind == LZ77 else 1, kind)


class _RawView:
    """Adapter so parsers stop before the machinery sentinel."""

    def __init__(self, symbols, n_parse):
        self.symbols = symbols
        self.n = n_parse


def compute_height(parsing):
    """Height H (max transitive copy depth), mean depth, max phrase length."""
    n = parsing.n
    C = np.zeros(n + 1, dtype=np.int64)
    start = 1
    for p in range(parsing.n_phrases):
        ln = int(parsing.copy_lens[p])
        has_trail = int(parsing.trails[p]) >= 0
        if ln:
            if parsing.kind == LZ77:
                c0 = int(parsing.sources[p])
            else:
                c0 = int(parsing.ends[int(parsing.sources[p]) - 1]) - ln + 1
            C[start : start + ln] = C[c0 : c0 + ln] + 1
        if has_trail:
            C[start + ln] = 1
        start += ln + has_trail
    height = int(C[1:].max()) if n else 0
    stats = ParsingStats(
        height=height,
        mean_height=float(C[1:].mean()) if n else 0.0,
        max_phrase_len=parsing.max_phrase_len(),
    )
    if parsing.kind == LZEND:
        assert stats.height <= stats.max_phrase_len
    return stats


class EncodedParsing:
    """char[] / source[] / phrase-end-bitmap triple, the extraction
    substrate.  Sources are phrase ids for LZ-End/LZ78 and source start
    positions for LZ77."""

    def __init__(self, kind, n, chars, sources, ends, sigma=256):
        self.kind = kind
        self.n = int(n)
        self.chars = np.asarray(chars, dtype=np.uint8)
        self.sources = np.asarray(sources, dtype=np.int64)
        self.ends = np.asarray(ends, dtype=np.int64)
        self.sigma = int(sigma)
        self.B = SparseBitmap(self.ends, self.n)

    @classmethod
    def from_parsing(cls, parsing, sigma=256):
        if np.any(parsing.trails < 0):
            raise ValueError("cannot encode a parsing with a trail-less phrase")
        return cls(parsing.kind, parsing.n, parsing.trails, parsing.sources, parsing.ends, sigma)

    @property
    def n_phrases(self):
        return int(self.chars.size)

    def phrase_of(self, pos):
        """Phrase id containing text position pos."""
        if not 1 <= pos <= self.n:
            raise IndexError(f"position {pos} out of range [1,{self.n}]")
        return int(np.searchsorted(self.ends, pos - 1, side="right")) + 1

    def first_pos(self, pid):
        self._check_pid(pid)
        return int(self.ends[pid - 2]) + 1 if pid > 1 else 1

    def last_pos(self, pid):
        self._check_pid(pid)
        return int(self.ends[pid - 1])

    def length(self, pid):
        return self.last_pos(pid) - self.first_pos(pid) + 1

    def copy_len(self, pid):
        return self.length(pid) - 1

    def _check_pid(self, pid):
        if not 1 <= pid <= self.n_phrases:
            raise IndexError(f"phrase id {pid} out of range [1,{self.n_phrases}]")

    def extract(self, start, length, count_steps=False):
        """T[start, start+length-1] as symbols; optionally also the
        simulated recursion-step count of the extraction algorithm."""
        if length < 0:
            raise ValueError("negative length")
        if length == 0:
            out = np.zeros(0, dtype=np.uint8)
            return (out, 0) if count_steps else out
        if start < 1 or start + length - 1 > self.n:
            raise ValueError(
                f"range [{start},{start + length - 1}] outside the text [1,{self.n}]"
            )
        out, steps = _kernels.extract_loop(
            self.ends, self.sources, self.chars, self.kind == LZ77, start, length
        )
        return (out, steps) if count_steps else out

    def decode(self):
        copy_lens = np.diff(np.concatenate([[0], self.ends])) - 1
        return _decode(self.kind, copy_lens, self.sources, self.chars.astype(np.int64), self.ends, self.n)

    def size_bytes(self):
        return len(self.to_bytes())

    def to_bytes(self, with_sources=True):
        """Serialize; the self-index omits the source array because the
        source bitmap plus the phrase<->source permutation encode it."""
        w = SectionWriter()
        w.put_u8(_KIND_CODE[self.kind])
        w.put_u64(self.n)
        w.put_u64(self.sigma)
        char_width = width_for(max(self.sigma - 1, 1))
        w.put_u8(char_width)
        w.put_u64(self.n_phrases)
        w.put_bytes(pack_ints(self.chars, char_width))
        w.put_u8(1 if with_sources else 0)
        if with_sources:
            src_max = self.n if self.kind == LZ77 else self.n_phrases
            src_width = width_for(max(src_max, 1))
            w.put_u8(src_width)
            w.put_bytes(pack_ints(self.sources, src_width))
        w.put_bytes(self.B.to_bytes())
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data, sources=None):
        r = SectionReader(data)
        kind = _KIND_NAME[r.get_u8()]
        n = r.get_u64()
        sigma = r.get_u64()
        char_width = r.get_u8()
        n_phrases = r.get_u64()
        chars = unpack_ints(r.get_bytes(), char_width, n_phrases)
        has_sources = r.get_u8()
        if has_sources:
            src_width = r.get_u8()
            sources = unpack_ints(r.get_bytes(), src_width, n_phrases)
        elif sources is None:
            raise ValueError("payload has no source array and none was supplied")
        bitmap = SparseBitmap.from_bytes(r.get_bytes())
        return cls(kind, n, chars, sources, bitmap.positions(), sigma)

    @classmethod
    def header_from_bytes(cls, data):
        """(kind, n, sigma, chars, B) of a sources-less payload."""
        r = SectionReader(data)
        kind = _KIND_NAME[r.get_u8()]
        n = r.get_u64()
        sigma = r.get_u64()
        char_width = r.get_u8()
        n_phrases = r.get_u64()
        chars = unpack_ints(r.get_bytes(), char_width, n_phrases)
        has_sources = r.get_u8()
        srcs = None
        if has_sources:
            src_width = r.get_u8()
            srcs = unpack_ints(r.get_bytes(), src_width, n_phrases)
        bitmap = SparseBitmap.from_bytes(r.get_bytes())
        return kind, n, sigma, chars, srcs, bitmap


def encode_parsing(parsing, sigma=256):
    return EncodedParsing.from_parsing(parsing, sigma)


def extract(enc, start, length):
    return enc.extract(start, length)
