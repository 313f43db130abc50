"""Pure Python/numpy implementations of the hot kernels.

These define the reference semantics; the compiled backend must produce
bit-identical outputs.
"""

import numpy as np
from sortedcontainers import SortedList

from ..rangeq import RangeArgMax

LZ77, LZEND = 0, 1


def lcp_from_sa(seq, sa):
    """Kasai: lcp[r] = lcp(suffix sa[r-1], suffix sa[r]); lcp[0] = 0."""
    n = int(sa.size)
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n, dtype=np.int64)
    lcp = np.zeros(n, dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = int(sa[r - 1])
            while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def bwt_rank(bwt, occ, block, c, i):
    """Occurrences of symbol c in bwt[0:i] (0-based half-open)."""
    b = i // block
    count = int(occ[b, c])
    if i - b * block:
        count += int(np.count_nonzero(bwt[b * block : i] == c))
    return count


def lz_parse(seq, n_parse, A, A_inv, bwt, occ, block, counts, mode):
    """LZ77/LZ-End parse driver over the reverse-text machinery.

    seq is the symbol sequence ending with the unique smallest sentinel;
    positions 1..n_parse are parsed.  A/A_inv are the 1-based suffix
    array of the reverse text and its inverse; bwt/occ/counts support
    backward search on it.  Returns (copy_lens, sources, trails, N) with
    trails[-1] possibly -1 when the final phrase is cut by the text end.
    """
    n_m = int(seq.size)
    rmq = RangeArgMax(A)
    lens, srcs, trails = [], [], []
    f_pos = SortedList()
    f_map = {}
    n_processed = 0
    i = 1
    p = 1
    while i <= n_parse:
        sp, ep = 1, n_m
        j = 0
        ell = 0
        src = 0
        while i + j <= n_parse:
            c = int(seq[i + j - 1])
            sp_new = int(counts[c]) + bwt_rank(bwt, occ, block, c, sp - 1) + 1
            ep_new = int(counts[c]) + bwt_rank(bwt, occ, block, c, ep)
            n_processed += 1
            sp, ep = sp_new, ep_new
            if sp > ep:
                break
            # rank 1 is the sentinel suffix of the reverse text; it maps to
            # no text position and must not count as an occurrence
            lo = max(sp, 2)
            if lo > ep:
                break
            mpos = rmq.argmax(lo - 1, ep - 1)
            amax = int(A[mpos])
            if amax <= n_m - i:
                break  # no occurrence ends before position i
            j += 1
            if mode == LZ77:
                ell = j
                src = (n_m - amax) - j + 1  # earliest-ending occurrence start
            else:
                k = f_pos.bisect_left(sp)
                if k < len(f_pos) and f_pos[k] <= ep:
                    ell = j
                    src = f_map[f_pos[k]]
        if i + ell <= n_parse:
            trail = int(seq[i + ell - 1])
            end = i + ell
        else:
            trail = -1
            end = i + ell - 1
        if mode == LZEND and n_m - end >= 1:
            fp = int(A_inv[n_m - end])
            f_pos.add(fp)
            f_map[fp] = p
        lens.append(ell)
        srcs.append(src)
        trails.append(trail)
        i = end + 1
        p += 1
    return (
        np.asarray(lens, dtype=np.int64),
        np.asarray(srcs, dtype=np.int64),
        np.asarray(trails, dtype=np.int64),
        n_processed,
    )


def extract_loop(ends, srcs, trails, pos_mode, start, length):
    """Iterative form of the right-to-left extraction; returns the symbol
    array and the simulated recursion-step count."""
    out = np.zeros(length, dtype=np.uint8)
    steps = 0
    stack = [(start, length, 0)]
    while stack:
        s, ln, o = stack.pop()
        steps += 1
        if ln <= 0:
            continue
        e = s + ln - 1
        r = int(np.searchsorted(ends, e, side="right"))
        if r >= 1 and ends[r - 1] == e:
            out[o + ln - 1] = trails[r - 1]
            stack.append((s, ln - 1, o))
            continue
        pos = int(ends[r - 1]) + 1 if r >= 1 else 1  # phrase r+1 starts here
        if s < pos:
            stack.append((s, pos - s, o))
            o += pos - s
            ln = e - pos + 1
            s = pos
        if pos_mode:
            stack.append((int(srcs[r]) + (s - pos), ln, o))
        else:
            q = int(srcs[r])
            ell = int(ends[r]) - pos
            stack.append((int(ends[q - 1]) - ell + (s - pos) + 1, ln, o))
    return out, steps
