# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: Kasai LCP, BWT rank, the LZ parse driver, and
the extraction loop.  Semantics (including tie breaks) must match
lzsix._kernels.pure exactly."""

import numpy as np

cimport numpy as cnp
from cython.operator cimport dereference
from libcpp.map cimport map as cpp_map
from libcpp.vector cimport vector

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8


def lcp_from_sa(seq, sa):
    cdef const u8[::1] s = np.ascontiguousarray(seq, dtype=np.uint8)
    cdef const i64[::1] a = np.ascontiguousarray(sa, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] lcp = out
    rank_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] rank = rank_arr
    cdef Py_ssize_t i, j, r
    cdef i64 h = 0
    for i in range(n):
        rank[a[i]] = i
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = a[r - 1]
            while i + h < n and j + h < n and s[i + h] == s[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return out


cdef inline i64 _rank_c(const u8[::1] bwt, const i64[:, ::1] occ,
                        Py_ssize_t block, int c, i64 i) noexcept nogil:
    cdef i64 b = i // block
    cdef i64 count = occ[b, c]
    cdef i64 p
    for p in range(b * block, i):
        if bwt[p] == c:
            count += 1
    return count


def bwt_rank(bwt, occ, block, c, i):
    cdef const u8[::1] bw = bwt
    cdef const i64[:, ::1] oc = occ
    return int(_rank_c(bw, oc, block, c, i))


cdef class _BlockRmq:
    """Arg-max with smallest-position ties over 64-element blocks plus a
    sparse table of per-block champions (positions)."""

    cdef const i64[::1] A
    cdef i64[::1] table
    cdef i64 nb, levels
    cdef object _table_ref

    def __cinit__(self, const i64[::1] A):
        self.A = A
        cdef i64 n = A.shape[0]
        self.nb = (n + 63) >> 6
        self.levels = 1
        while (1 << self.levels) <= self.nb:
            self.levels += 1
        table_arr = np.zeros(self.levels * self.nb, dtype=np.int64)
        self._table_ref = table_arr
        self.table = table_arr
        cdef i64 b, lo, hi, j, half, x, y, p
        cdef i64 best_val, best_pos
        for b in range(self.nb):
            lo = b << 6
            hi = lo + 63
            if hi > n - 1:
                hi = n - 1
            best_val = A[lo]
            best_pos = lo
            for p in range(lo + 1, hi + 1):
                if A[p] > best_val:
                    best_val = A[p]
                    best_pos = p
            self.table[b] = best_pos
        for j in range(1, self.levels):
            half = 1 << (j - 1)
            for b in range(self.nb - (1 << j) + 1):
                x = self.table[(j - 1) * self.nb + b]
                y = self.table[(j - 1) * self.nb + b + half]
                # x always precedes y, so ties keep x
                self.table[j * self.nb + b] = y if A[y] > A[x] else x

    cdef i64 argmax(self, i64 lo, i64 hi) noexcept nogil:
        cdef i64 b_lo = lo >> 6
        cdef i64 b_hi = hi >> 6
        cdef i64 best_val, best_pos, val, pos, j, span, p1, p2, p, end
        if b_lo == b_hi:
            best_val = self.A[lo]
            best_pos = lo
            for p in range(lo + 1, hi + 1):
                if self.A[p] > best_val:
                    best_val = self.A[p]
                    best_pos = p
            return best_pos
        best_val = self.A[lo]
        best_pos = lo
        end = ((b_lo + 1) << 6) - 1
        for p in range(lo + 1, end + 1):
            if self.A[p] > best_val:
                best_val = self.A[p]
                best_pos = p
        if b_hi - b_lo > 1:
            span = b_hi - b_lo - 1
            j = 0
            while (2 << j) <= span:
                j += 1
            p1 = self.table[j * self.nb + b_lo + 1]
            p2 = self.table[j * self.nb + b_hi - (1 << j)]
            if self.A[p2] > self.A[p1] or (self.A[p2] == self.A[p1] and p2 < p1):
                p1 = p2
            if self.A[p1] > best_val:
                best_val = self.A[p1]
                best_pos = p1
        for p in range(b_hi << 6, hi + 1):
            if self.A[p] > best_val:
                best_val = self.A[p]
                best_pos = p
        return best_pos


def lz_parse(seq, n_parse, A, A_inv, bwt, occ, block, counts, mode):
    cdef const u8[::1] s = seq
    cdef const i64[::1] a = A
    cdef const i64[::1] ainv = A_inv
    cdef const u8[::1] bw = bwt
    cdef const i64[:, ::1] oc = occ
    cdef const i64[::1] cnt = counts
    cdef Py_ssize_t blk = block
    cdef i64 n_m = s.shape[0]
    cdef i64 n_lim = n_parse
    cdef int md = mode
    cdef _BlockRmq rmq = _BlockRmq(a)
    cdef cpp_map[i64, i64] fset
    cdef cpp_map[i64, i64].iterator it
    cdef vector[i64] lens, srcs, trails
    cdef i64 n_processed = 0
    cdef i64 i = 1, p = 1
    cdef i64 sp, ep, nsp, nep, j, ell, src, lo, mpos, amax, end, fp
    cdef int c
    while i <= n_lim:
        sp = 1
        ep = n_m
        j = 0
        ell = 0
        src = 0
        while i + j <= n_lim:
            c = s[i + j - 1]
            nsp = cnt[c] + _rank_c(bw, oc, blk, c, sp - 1) + 1
            nep = cnt[c] + _rank_c(bw, oc, blk, c, ep)
            n_processed += 1
            sp = nsp
            ep = nep
            if sp > ep:
                break
            # rank 1 is the sentinel suffix; it maps to no text position
            lo = sp if sp >= 2 else 2
            if lo > ep:
                break
            mpos = rmq.argmax(lo - 1, ep - 1)
            amax = a[mpos]
            if amax <= n_m - i:
                break
            j += 1
            if md == 0:
                ell = j
                src = (n_m - amax) - j + 1
            else:
                it = fset.lower_bound(sp)
                if it != fset.end() and dereference(it).first <= ep:
                    ell = j
                    src = dereference(it).second
        if i + ell <= n_lim:
            trails.push_back(s[i + ell - 1])
            end = i + ell
        else:
            trails.push_back(-1)
            end = i + ell - 1
        if md == 1 and n_m - end >= 1:
            fp = ainv[n_m - end]
            fset[fp] = p
        lens.push_back(ell)
        srcs.push_back(src)
        i = end + 1
        p += 1
    cdef Py_ssize_t m = lens.size()
    lens_arr = np.empty(m, dtype=np.int64)
    srcs_arr = np.empty(m, dtype=np.int64)
    trails_arr = np.empty(m, dtype=np.int64)
    cdef i64[::1] la = lens_arr
    cdef i64[::1] sa2 = srcs_arr
    cdef i64[::1] ta = trails_arr
    cdef Py_ssize_t k
    for k in range(m):
        la[k] = lens[k]
        sa2[k] = srcs[k]
        ta[k] = trails[k]
    return lens_arr, srcs_arr, trails_arr, int(n_processed)


def extract_loop(ends, srcs, trails, pos_mode, start, length):
    cdef const i64[::1] e_arr = ends
    cdef const i64[::1] s_arr = srcs
    cdef const u8[::1] t_arr = np.ascontiguousarray(trails, dtype=np.uint8)
    cdef Py_ssize_t nph = e_arr.shape[0]
    cdef int pmode = 1 if pos_mode else 0
    out_arr = np.zeros(length, dtype=np.uint8)
    cdef u8[::1] out = out_arr
    cdef vector[i64] st_s, st_l, st_o
    cdef i64 steps = 0
    cdef i64 s, ln, o, e, r, pos, q, ell, a, b, mid
    st_s.push_back(start)
    st_l.push_back(length)
    st_o.push_back(0)
    while st_s.size() > 0:
        s = st_s.back(); st_s.pop_back()
        ln = st_l.back(); st_l.pop_back()
        o = st_o.back(); st_o.pop_back()
        steps += 1
        if ln <= 0:
            continue
        e = s + ln - 1
        a = 0
        b = nph
        while a < b:
            mid = (a + b) >> 1
            if e_arr[mid] <= e:
                a = mid + 1
            else:
                b = mid
        r = a  # number of phrase ends <= e
        if r >= 1 and e_arr[r - 1] == e:
            out[o + ln - 1] = t_arr[r - 1]
            st_s.push_back(s)
            st_l.push_back(ln - 1)
            st_o.push_back(o)
            continue
        pos = e_arr[r - 1] + 1 if r >= 1 else 1
        if s < pos:
            st_s.push_back(s)
            st_l.push_back(pos - s)
            st_o.push_back(o)
            o += pos - s
            ln = e - pos + 1
            s = pos
        if pmode:
            st_s.push_back(s_arr[r] + (s - pos))
        else:
            q = s_arr[r]
            ell = e_arr[r] - pos
            st_s.push_back(e_arr[q - 1] - ell + (s - pos) + 1)
        st_l.push_back(ln)
        st_o.push_back(o)
    return out_arr, int(steps)
