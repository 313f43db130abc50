"""The LZ77/LZ-End self-index: build, locate, exists, extract.

Primary occurrences cross a phrase boundary and are found by splitting
the pattern in every position, searching the right part in a sparse
suffix trie (suffixes starting at phrase beginnings), the reversed left
part in a PATRICIA trie of reversed phrases, and joining the two ranges
in a wavelet-tree grid.  Special primaries end exactly at a phrase
boundary and come straight out of the reverse trie.  Secondary
occurrences are copies, found by walking sources that cover an already
reported occurrence, with a depth array and prevLess steering the walk
past non-covering sources.
"""

import struct
from dataclasses import dataclass

import numpy as np

from .parsing import LZ77, LZEND, EncodedParsing, encode_parsing, parse_lz77, parse_lzend
from .rangeq import SparseMinTable
from .serial import (
    SectionReader,
    SectionWriter,
    pack_ints,
    read_section,
    unpack_ints,
    width_for,
    wrap_section,
)
from .succinct import CyclePermutation, DacSequence, DfudsTree, SparseBitmap, WaveletTree
from .textcore import SuffixArrayBundle, Text

MAGIC = b"LZSIX"
VERSION = 1

PRIMARY = "primary"
SPECIAL = "special"
SECONDARY = "secondary"


class IndexFormatError(ValueError):
    """Raised for bad magic bytes or an unsupported format version."""


@dataclass(frozen=True)
class Occurrence:
    pos: int
    kind: str


def _build_patricia(n_items, str_len, lcp, label_at):
    """PATRICIA trie from items sorted in lexicographic order.

    str_len[i] is the i-th string's length, lcp[i] its longest common
    prefix with item i-1, and label_at(i, d) the d-th (0-based) symbol of
    item i.  Strings must be distinct and prefix-free (callers append a
    virtual terminator where needed).  Returns (DfudsTree, skips
    DacSequence); leaf order in the tree equals item order.
    """

    class Node:
        __slots__ = ("depth", "children")

        def __init__(self, depth):
            self.depth = depth
            self.children = []

    root = Node(0)
    stack = [root]
    for i in range(n_items):
        h = int(lcp[i]) if i else 0
        last = None
        while stack[-1].depth > h:
            last = stack.pop()
        top = stack[-1]
        if top.depth == h:
            attach = top
        else:
            mid = Node(h)
            label, _ = top.children[-1]
            top.children[-1] = (label, mid)
            mid.children.append((label_at(i - 1, h), last))
            attach = mid
            stack.append(mid)
        leaf = Node(int(str_len[i]))
        attach.children.append((label_at(i, attach.depth), leaf))
        stack.append(leaf)

    bits = [1]
    labels = []
    skips = []
    walk = [root]
    while walk:
        node = walk.pop()
        bits.extend([1] * len(node.children))
        bits.append(0)
        for label, child in node.children:
            labels.append(label)
            # descent stops on reaching a leaf, so leaf-edge skips are
            # never consulted; store 0 instead of the full tail length
            skips.append(child.depth - node.depth - 1 if child.children else 0)
        for _, child in reversed(node.children):
            walk.append(child)
    tree = DfudsTree(np.asarray(bits, dtype=np.uint8), labels)
    return tree, DacSequence(skips, block_width=4)


def _compute_depths(starts, ends):
    """Depth of each source (start asc, len desc sweep): the deepest
    strictly-covering chain below it.  Returns (depths, d_max)."""
    m = int(starts.size)
    depths = np.zeros(m, dtype=np.int64)
    order = np.lexsort((-(ends - starts), starts))
    rightmost = []  # rightmost[d] = max end among processed depth-d sources
    k = 0
    while k < m:
        grp_end = k
        s = starts[order[k]]
        while grp_end < m and starts[order[grp_end]] == s:
            grp_end += 1
        group = order[k:grp_end]
        grp_depths = []
        for idx in group:
            e = int(ends[idx])
            # deepest d with rightmost[d] >= e (rightmost is nonincreasing)
            lo, hi = 0, len(rightmost) - 1
            best = -1
            while lo <= hi:
                mid = (lo + hi) // 2
                if rightmost[mid] >= e:
                    best = mid
                    lo = mid + 1
                else:
                    hi = mid - 1
            grp_depths.append(best + 1)
        for idx, d in zip(group, grp_depths):
            depths[idx] = d
            e = int(ends[idx])
            if d == len(rightmost):
                rightmost.append(e)
            else:
                rightmost[d] = max(rightmost[d], e)
        k = grp_end
    return depths, int(depths.max()) if m else 0


class SelfIndex:
    def __init__(self, kind, n, sigma, sym_to_byte, enc, sst, sst_skips, rev,
                 rev_skips, rev_ids, range_wt, b_src, p_src, depths_wt, d_max):
        self.kind = kind
        self.n = n
        self.sigma = sigma
        self.sym_to_byte = np.asarray(sym_to_byte, dtype=np.uint8)
        self.byte_to_sym = np.full(256, -1, dtype=np.int16)
        for sym in range(1, sigma):
            self.byte_to_sym[self.sym_to_byte[sym]] = sym
        self.enc = enc
        self.sst = sst
        self.sst_skips = sst_skips
        self.rev = rev
        self.rev_skips = rev_skips
        self.rev_ids = np.asarray(rev_ids, dtype=np.int64)
        self.range_wt = range_wt
        self.b_src = b_src
        self.p_src = p_src
        self.depths_wt = depths_wt
        self.d_max = d_max
        # decoded caches for the secondary-occurrence walk
        self._src_pos = self.b_src.positions()
        self._src_zeros = self._src_pos - np.arange(1, self._src_pos.size + 1)
        self._ends_list = self.enc.ends.tolist()
        self._src_pos_list = self._src_pos.tolist()

    @property
    def n_phrases(self):
        return self.enc.n_phrases

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def build(cls, text, kind=LZ77):
        if kind not in (LZ77, LZEND):
            raise ValueError(f"index supports lz77 and lzend parsings, not {kind!r}")
        if kind == LZ77:
            parsing = parse_lz77(text)
        else:
            parsing, _ = parse_lzend(text)
        enc = encode_parsing(parsing, sigma=text.sigma)
        n = text.n
        nph = enc.n_phrases
        symbols = text.symbols
        ends = enc.ends
        starts = np.concatenate([[1], ends[:-1] + 1]).astype(np.int64)

        # sparse suffix trie over suffixes starting at phrase beginnings
        fwd = SuffixArrayBundle.build(text, with_rmq=False)
        suf_order = np.argsort(fwd.A_inv[starts], kind="stable")
        sorted_starts = starts[suf_order]
        id_array = suf_order + 1  # phrase ids in sst leaf order
        suf_len = n - sorted_starts + 1
        suf_lcp = np.zeros(nph, dtype=np.int64)
        if nph > 1:
            fwd_table = SparseMinTable(fwd.lcp())
            ra = fwd.A_inv[sorted_starts[:-1]] - 1
            rb = fwd.A_inv[sorted_starts[1:]] - 1
            suf_lcp[1:] = fwd_table.min_vec(ra + 1, rb)

        def suf_label(i, d):
            return int(symbols[sorted_starts[i] - 1 + d])

        sst, sst_skips = _build_patricia(nph, suf_len, suf_lcp, suf_label)

        # reverse trie over reversed phrases 1..n'-1, virtually terminated
        rev_bundle = SuffixArrayBundle.build(text, reversed=True, with_rmq=False)
        rseq = rev_bundle.seq
        n_rev = nph - 1
        rev_perm, rev_lcp, rev_len = cls._sort_reversed_phrases(
            rev_bundle, starts, ends, n_rev, n
        )

        def rev_label(i, d):
            pid = int(rev_perm[i])
            if d >= int(ends[pid - 1]) - int(starts[pid - 1]) + 1:
                return 0  # virtual terminator
            return int(rseq[n - int(ends[pid - 1]) - 1 + d])

        rev, rev_skips = _build_patricia(n_rev, rev_len, rev_lcp, rev_label)
        rev_ids = np.zeros(nph, dtype=np.int64)
        rev_ids[1:] = rev_perm

        # grid: column x (sst leaf) connects to the row of the previous phrase
        rev_rank = np.zeros(nph, dtype=np.int64)  # phrase id -> rev leaf rank
        rev_rank[rev_perm] = np.arange(1, n_rev + 1, dtype=np.int64)
        pi = rev_rank[id_array - 1]  # id_array==1 maps to the virtual row 0
        range_wt = WaveletTree(pi, sigma=nph)

        # sources: bitmap, phrase<->source permutation, depths
        copy_lens = np.diff(np.concatenate([[0], ends])) - 1
        eps_phr = np.flatnonzero(copy_lens == 0) + 1
        sub_phr = np.flatnonzero(copy_lens > 0) + 1
        if kind == LZ77:
            src_starts = enc.sources[sub_phr - 1]
        else:
            src_ends = ends[enc.sources[sub_phr - 1] - 1]
            src_starts = src_ends - copy_lens[sub_phr - 1] + 1
        src_ends_all = src_starts + copy_lens[sub_phr - 1] - 1
        order = np.lexsort((sub_phr, copy_lens[sub_phr - 1], src_starts))
        n_eps = int(eps_phr.size)
        sorted_starts_src = src_starts[order]
        one_positions = np.concatenate(
            [
                np.arange(1, n_eps + 1, dtype=np.int64),
                n_eps + sorted_starts_src + np.arange(sorted_starts_src.size) + 1,
            ]
        )
        b_src = SparseBitmap(one_positions, n + nph + 1)
        fwd_perm = np.zeros(nph, dtype=np.int64)
        fwd_perm[eps_phr - 1] = np.arange(1, n_eps + 1, dtype=np.int64)
        fwd_perm[sub_phr[order] - 1] = n_eps + 1 + np.arange(order.size, dtype=np.int64)
        p_src = CyclePermutation(fwd_perm, epsilon=1 / 32)
        depths = np.zeros(nph, dtype=np.int64)
        if order.size:
            d_sub, _ = _compute_depths(sorted_starts_src, src_ends_all[order])
            depths[n_eps:] = d_sub
        d_max = int(depths.max()) if nph else 0
        depths_wt = WaveletTree(depths, sigma=d_max + 1)

        _, sym_to_byte = text.alphabet_tables()
        return cls(kind, n, text.sigma, sym_to_byte, enc, sst, sst_skips, rev,
                   rev_skips, rev_ids, range_wt, b_src, p_src, depths_wt, d_max)

    @staticmethod
    def _sort_reversed_phrases(rev_bundle, starts, ends, n_rev, n):
        """Sort reversed phrases 1..n'-1 lexicographically (virtual
        terminator smallest) using the reverse-text suffix array.

        The lexicographic order of the length-truncated strings equals the
        order of (interval start, length), where the interval start of a
        phrase is the smallest suffix rank still sharing its whole string.
        """
        if n_rev == 0:
            return (np.zeros(0, dtype=np.int64),) * 3
        rstart = n - ends[:n_rev]  # reversed phrase p begins here in rseq (1-based)
        plen = (ends - np.concatenate([[0], ends[:-1]]))[:n_rev]
        ranks = rev_bundle.A_inv[rstart] - 1  # 0-based suffix ranks
        table = SparseMinTable(rev_bundle.lcp())
        lo = np.zeros(n_rev, dtype=np.int64)
        hi = ranks.copy()
        while np.any(lo < hi):
            mid = (lo + hi) // 2
            shares = table.min_vec(mid + 1, ranks) >= plen
            hi = np.where(shares, mid, hi)
            lo = np.where(shares, lo, mid + 1)
        interval_start = lo
        order0 = np.lexsort((plen, interval_start))
        rev_perm = order0.astype(np.int64) + 1
        rev_len = plen[order0] + 1  # includes the virtual terminator
        rev_lcp = np.zeros(n_rev, dtype=np.int64)
        if n_rev > 1:
            pa, pb = order0[:-1], order0[1:]
            ra = np.minimum(ranks[pa], ranks[pb])
            rb = np.maximum(ranks[pa], ranks[pb])
            full = table.min_vec(ra + 1, rb)
            full = np.where(ranks[pa] == ranks[pb], np.iinfo(np.int64).max, full)
            rev_lcp[1:] = np.minimum(full, np.minimum(plen[pa], plen[pb]))
        return rev_perm, rev_lcp, rev_len

    # ------------------------------------------------------------------
    # queries

    def map_pattern(self, pattern):
        arr = np.frombuffer(bytes(pattern), dtype=np.uint8)
        syms = self.byte_to_sym[arr]
        if np.any(syms < 0):
            return None
        return syms.astype(np.int64)

    def _descend(self, tree, skips, piece):
        """PATRICIA descent; returns the leaf range (1-based, inclusive)
        of candidates possibly prefixed by piece, or None."""
        if tree.n_nodes <= 1:
            return None
        x = tree.root
        pos = 0
        m = len(piece)
        while pos < m:
            hit = tree.labeled_child(x, int(piece[pos]))
            if hit is None:
                return None
            x, edge_no = hit
            if tree.is_leaf(x):
                break  # single unverified candidate; skip never applies
            pos += 1 + skips.access(edge_no + 1)
        return tree.leaf_index_range(x)

    def _verify(self, pos, syms):
        m = len(syms)
        if pos < 1 or pos + m - 1 > self.n:
            return False
        return bool(np.array_equal(self.enc.extract(pos, m), syms))

    def search_sst(self, piece):
        """Leaf range of the sparse suffix trie for a pattern piece."""
        return self._descend(self.sst, self.sst_skips, piece)

    def search_rev(self, piece_reversed):
        """Leaf range of the reverse trie for a reversed left piece."""
        return self._descend(self.rev, self.rev_skips, piece_reversed)

    def _special_primaries(self, syms, emit):
        """Phrases ending with the pattern; no grid query needed."""
        m = int(syms.size)
        rng = self.search_rev(syms[::-1])
        if rng is None:
            return
        verified = None
        for j in range(rng[0], rng[1] + 1):
            pid = int(self.rev_ids[j])
            if self.enc.length(pid) < m:
                continue
            pos = self.enc.last_pos(pid) - m + 1
            if verified is None:
                verified = self._verify(pos, syms)
            if not verified:
                break
            if not emit(pos, SPECIAL):
                break

    def _primaries(self, syms, emit):
        """One grid query per pattern split; verify one candidate per
        split, the rest share all its characters."""
        m = int(syms.size)
        for i in range(1, m):
            right = self.search_sst(syms[i:])
            if right is None:
                continue
            left = self.search_rev(syms[:i][::-1])
            if left is None:
                continue
            points = self.range_wt.range_report(right[0], right[1], left[0], left[1])
            verified = None
            for _, y in points:
                right_pid = 1 + int(self.rev_ids[y])
                pos = self.enc.first_pos(right_pid) - i
                if verified is None:
                    verified = self._verify(pos, syms)
                if not verified:
                    break
                if not emit(pos, PRIMARY):
                    return

    def _expand_secondaries(self, seeds, m, emit):
        """Chase covering sources from every seed, transitively; the
        depth array and prevLess step past non-covering sources."""
        ends = self._ends_list
        inverse = self.p_src.inverse
        prev_less = self.depths_wt.prev_less
        depth_at = self.depths_wt.access
        live = True
        while seeds and live:
            start = seeds.pop()
            # ones before the (start+1)-th zero of the source bitmap
            sid = int(np.searchsorted(self._src_zeros, start + 1, side="left"))
            d = self.d_max
            while sid > 0:
                pid = inverse(sid)
                s_start = self._src_pos_list[sid - 1] - sid
                first = ends[pid - 2] + 1 if pid > 1 else 1
                copy_len = ends[pid - 1] - first
                if s_start + copy_len >= start + m:
                    occ = first + (start - s_start)
                    if not emit(occ, SECONDARY):
                        live = False
                        break
                else:
                    d = depth_at(sid) - 1
                    if d < 0:
                        break
                nxt = prev_less(sid, d)
                sid = nxt if nxt else 0

    def occurrences(self, pattern, cap=None):
        """All occurrences of the byte pattern, classified by kind."""
        syms = self.map_pattern(pattern)
        if syms is None or syms.size == 0:
            return []
        m = int(syms.size)
        found = {}
        seeds = []

        def emit(pos, kind):
            if pos not in found:
                found[pos] = kind
                seeds.append(pos)
            return cap is None or len(found) < cap

        self._special_primaries(syms, emit)
        if cap is None or len(found) < cap:
            self._primaries(syms, emit)
        if cap is None or len(found) < cap:
            self._expand_secondaries(seeds, m, emit)
        out = [Occurrence(pos, kind) for pos, kind in found.items()]
        return out[:cap] if cap is not None else out

    def special_primary_occurrences(self, pattern):
        """Occurrences contained in one phrase and ending at its end."""
        syms = self.map_pattern(pattern)
        if syms is None or syms.size == 0:
            return []
        out = []
        self._special_primaries(syms, lambda pos, kind: out.append(Occurrence(pos, kind)) or True)
        return out

    def primary_occurrences(self, pattern):
        """Occurrences crossing at least one phrase boundary."""
        syms = self.map_pattern(pattern)
        if syms is None or syms.size == 0:
            return []
        seen = set()

        def emit(pos, kind):
            seen.add(pos)
            return True

        self._primaries(syms, emit)
        return [Occurrence(pos, PRIMARY) for pos in sorted(seen)]

    def secondary_occurrences(self, seed_pos, length):
        """Transitive copies of a verified occurrence T[seed_pos,
        seed_pos+length-1], excluding the seed itself."""
        found = {}
        seeds = [seed_pos]

        def emit(pos, kind):
            if pos != seed_pos and pos not in found:
                found[pos] = kind
                seeds.append(pos)
            return True

        self._expand_secondaries(seeds, length, emit)
        return [Occurrence(pos, SECONDARY) for pos in sorted(found)]

    def locate(self, pattern, cap=None, sort=False):
        """Occurrence start positions (1-based)."""
        out = [occ.pos for occ in self.occurrences(pattern, cap=cap)]
        return sorted(out) if sort else out

    def exists(self, pattern):
        """True iff the pattern occurs; stops at the first verified hit."""
        syms = self.map_pattern(pattern)
        if syms is None or syms.size == 0:
            return False
        m = int(syms.size)
        rng = self.search_rev(syms[::-1])
        if rng is not None:
            for j in range(rng[0], rng[1] + 1):
                pid = int(self.rev_ids[j])
                if self.enc.length(pid) < m:
                    continue
                if self._verify(self.enc.last_pos(pid) - m + 1, syms):
                    return True
                break  # candidates share all characters; none can match
        for i in range(1, m):
            right = self.search_sst(syms[i:])
            if right is None:
                continue
            left = self.search_rev(syms[:i][::-1])
            if left is None:
                continue
            points = self.range_wt.range_report(right[0], right[1], left[0], left[1])
            if points:
                _, y = points[0]
                right_pid = 1 + int(self.rev_ids[y])
                if self._verify(self.enc.first_pos(right_pid) - i, syms):
                    return True
        return False

    def extract(self, start, length):
        """Bytes of the raw text (positions 1..n-1; the sentinel is not
        extractable as a byte)."""
        if length == 0:
            return b""
        if start < 1 or start + length - 1 > self.n - 1:
            raise ValueError(
                f"range [{start},{start + length - 1}] outside the text [1,{self.n - 1}]"
            )
        syms = self.enc.extract(start, length)
        return self.sym_to_byte[syms].tobytes()

    # ------------------------------------------------------------------
    # serialization

    def component_sizes(self):
        return {tag: len(payload) for tag, payload in self._sections()}

    def size_bytes(self):
        return len(self.to_bytes())

    def _sections(self):
        w = SectionWriter()
        w.put_u64(self.d_max)
        depth_payload = w.getvalue() + self.depths_wt.to_bytes()
        return [
            (b"ALPH", self.sym_to_byte[1:].tobytes()),
            (b"ENCP", self.enc.to_bytes(with_sources=False)),
            (b"SSTT", self.sst.to_bytes()),
            (b"SSKP", self.sst_skips.to_bytes()),
            (b"REVT", self.rev.to_bytes()),
            (b"RSKP", self.rev_skips.to_bytes()),
            (b"RVID", pack_ints(self.rev_ids, width_for(max(self.n_phrases, 1)))),
            (b"RNGE", self.range_wt.to_bytes()),
            (b"BSRC", self.b_src.to_bytes()),
            (b"PSRC", self.p_src.to_bytes()),
            (b"DPTH", depth_payload),
        ]

    def to_bytes(self):
        sections = self._sections()
        header = MAGIC + struct.pack("<HB", VERSION, 0 if self.kind == LZ77 else 1)
        header += struct.pack("<QQQ", self.n, self.n_phrases, self.sigma)
        header += struct.pack("<I", len(sections))
        table_size = len(sections) * 20
        offset = len(header) + table_size
        table = b""
        blob = b""
        for tag, payload in sections:
            section = wrap_section(tag, payload)
            table += tag + struct.pack("<QQ", offset, len(section))
            offset += len(section)
            blob += section
        return header + table + blob

    @classmethod
    def from_bytes(cls, data):
        if data[:5] != MAGIC:
            raise IndexFormatError("bad magic bytes")
        version, kind_code = struct.unpack("<HB", data[5:8])
        if version != VERSION:
            raise IndexFormatError(f"unsupported index version {version}")
        n, nph, sigma = struct.unpack("<QQQ", data[8:32])
        (n_sections,) = struct.unpack("<I", data[32:36])
        sections = {}
        pos = 36
        for _ in range(n_sections):
            tag = data[pos : pos + 4]
            off, length = struct.unpack("<QQ", data[pos + 4 : pos + 20])
            pos += 20
            stag, payload, _ = read_section(data, off)
            if stag != tag:
                raise IndexFormatError("section table mismatch")
            sections[tag] = payload
        kind = LZ77 if kind_code == 0 else LZEND
        sym_to_byte = np.zeros(sigma, dtype=np.uint8)
        sym_to_byte[1:] = np.frombuffer(sections[b"ALPH"], dtype=np.uint8)
        sst = DfudsTree.from_bytes(sections[b"SSTT"])
        sst_skips = DacSequence.from_bytes(sections[b"SSKP"])
        rev = DfudsTree.from_bytes(sections[b"REVT"])
        rev_skips = DacSequence.from_bytes(sections[b"RSKP"])
        rev_ids = unpack_ints(sections[b"RVID"], width_for(max(nph, 1)), nph)
        range_wt = WaveletTree.from_bytes(sections[b"RNGE"])
        b_src = SparseBitmap.from_bytes(sections[b"BSRC"])
        p_src = CyclePermutation.from_bytes(sections[b"PSRC"])
        r = SectionReader(sections[b"DPTH"])
        d_max = r.get_u64()
        depths_wt = WaveletTree.from_bytes(sections[b"DPTH"][8:])
        enc = cls._restore_parsing(sections[b"ENCP"], b_src, p_src)
        return cls(kind, n, sigma, sym_to_byte, enc, sst, sst_skips, rev,
                   rev_skips, rev_ids, range_wt, b_src, p_src, depths_wt, d_max)

    @staticmethod
    def _restore_parsing(payload, b_src, p_src):
        """Rebuild the source array from the bitmap of sources and the
        phrase<->source permutation: a source starts at
        select1(B_S, P_S(p)) - P_S(p) and spans the phrase's copy length."""
        kind, n, sigma, chars, srcs, bitmap = EncodedParsing.header_from_bytes(payload)
        ends = bitmap.positions()
        if srcs is None:
            copy_lens = np.diff(np.concatenate([[0], ends])) - 1
            fwd = p_src.forward_array()
            src_pos = b_src.positions()
            start_by_sid = src_pos - np.arange(1, src_pos.size + 1, dtype=np.int64)
            srcs = np.zeros(ends.size, dtype=np.int64)
            covered = copy_lens > 0
            starts = start_by_sid[fwd[covered] - 1]
            if kind == LZ77:
                srcs[covered] = starts
            else:
                src_end = starts + copy_lens[covered] - 1
                srcs[covered] = np.searchsorted(ends, src_end) + 1
        return EncodedParsing(kind, n, chars, srcs, ends, sigma)

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path):
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())


def build_index(data, kind=LZ77):
    """Build a self-index straight from bytes."""
    return SelfIndex.build(Text(data), kind=kind)
