import random

import numpy as np
import pytest

from lzsix import Text, empirical_entropy, entropy_table, gen_fibonacci, gen_thue_morse, ipm
from lzsix.textcore import BwsRange, SuffixArrayBundle, suffix_array
from oracles import naive_occurrences, naive_suffix_array


class TestText:
    def test_sentinel_byte_rejected(self):
        with pytest.raises(ValueError):
            Text(b"ab\x00cd")

    def test_alphabet_roundtrip(self):
        t = Text(b"banana")
        syms = t.map_pattern(b"nab")
        assert t.unmap(syms) == b"nab"
        assert t.map_pattern(b"x") is None

    def test_sentinel_is_smallest_and_unique(self):
        t = Text(b"zzz")
        assert t.symbols[-1] == 0
        assert np.count_nonzero(t.symbols == 0) == 1
        assert t.n == 4
        assert t.sigma == 2


class TestSuffixArray:
    def test_abba(self):
        t = Text(b"abba")
        b = SuffixArrayBundle.build(t)
        assert b.A.tolist() == [5, 4, 1, 3, 2]

    def test_single(self):
        t = Text(b"a")
        b = SuffixArrayBundle.build(t)
        assert b.A.tolist() == [2, 1]

    def test_random_vs_naive(self):
        rng = random.Random(11)
        for n in (1, 2, 3, 50, 500, 4000):
            seq = [rng.randrange(1, 5) for _ in range(n)] + [0]
            got = suffix_array(np.asarray(seq, dtype=np.uint8))
            assert got.tolist() == naive_suffix_array(seq)

    def test_inverse(self):
        t = Text(b"mississippi")
        b = SuffixArrayBundle.build(t)
        for r in range(1, b.n + 1):
            assert b.A_inv[b.A[r - 1]] == r


class TestBws:
    def test_bwt_abba(self):
        t = Text(b"abba")
        b = SuffixArrayBundle.build(t)
        # bwt("abba$") = "ab$ba"
        assert t.unmap(b.bwt[b.bwt > 0]) == b"abba"
        want = [t.map_pattern(b"a")[0], t.map_pattern(b"b")[0], 0,
                t.map_pattern(b"b")[0], t.map_pattern(b"a")[0]]
        assert b.bwt.tolist() == want

    def test_step_b(self):
        t = Text(b"abba")
        b = SuffixArrayBundle.build(t)
        rng = b.bws_step(BwsRange(1, 5), int(t.map_pattern(b"b")[0]))
        assert tuple(rng) == (4, 5)

    def test_empty_propagates(self):
        t = Text(b"abba")
        b = SuffixArrayBundle.build(t)
        out = b.bws_step(BwsRange(3, 2), 1)
        assert out.empty

    def test_unknown_symbol_empty(self):
        t = Text(b"abba")
        b = SuffixArrayBundle.build(t)
        assert b.bws_step(BwsRange(1, 5), 200).empty

    def test_running_example_al_range(self, running_text):
        # searching "al" backwards over the reverse text reaches the
        # range of prefixes ending with "la": [11, 13]
        b = SuffixArrayBundle.build(running_text, reversed=True)
        rng = b.bws(running_text.map_pattern(b"al"))
        assert tuple(rng) == (11, 13)

    def test_full_pattern_count_matches_scan(self):
        rng = random.Random(12)
        for _ in range(60):
            n = rng.randrange(2, 300)
            data = bytes(rng.randrange(97, 101) for _ in range(n))
            t = Text(data)
            b = SuffixArrayBundle.build(t)
            m = rng.randrange(1, 6)
            pat = bytes(rng.randrange(97, 101) for _ in range(m))
            syms = t.map_pattern(pat)
            r = b.bws(syms) if syms is not None else BwsRange(1, 0)
            count = 0 if r.empty else r.ep - r.sp + 1
            assert count == len(naive_occurrences(data, pat))

    def test_lf_reverses_text(self):
        rng = random.Random(13)
        for _ in range(20):
            n = rng.randrange(1, 400)
            data = bytes(rng.randrange(97, 103) for _ in range(n))
            t = Text(data)
            b = SuffixArrayBundle.build(t)
            out = []
            i = 1  # row of the sentinel-smallest suffix
            for _ in range(b.n - 1):
                out.append(int(b.bwt[i - 1]))
                i = b.lf(i)
            assert t.unmap(out) == data[::-1]


class TestRmq:
    def test_example(self):
        t = Text(b"abba")
        b = SuffixArrayBundle.build(t)
        assert b.A.tolist() == [5, 4, 1, 3, 2]
        assert b.rmq_max(2, 4) == 2

    def test_point(self):
        t = Text(b"abba")
        b = SuffixArrayBundle.build(t)
        for i in range(1, 6):
            assert b.rmq_max(i, i) == i

    def test_errors(self):
        t = Text(b"ab")
        b = SuffixArrayBundle.build(t)
        with pytest.raises(ValueError):
            b.rmq_max(2, 1)

    def test_random_vs_scan(self):
        from lzsix.rangeq import RangeArgMax

        rng = random.Random(14)
        for n in (1, 63, 64, 65, 129, 1000, 4096):
            vals = [rng.randrange(n + 2) for _ in range(n)]
            r = RangeArgMax(vals)
            for _ in range(300):
                lo = rng.randrange(n)
                hi = rng.randrange(lo, n)
                seg = vals[lo : hi + 1]
                best = max(seg)
                want = lo + seg.index(best)
                assert r.argmax(lo, hi) == want


class TestEntropy:
    def test_h0_constant(self):
        assert empirical_entropy(b"aaaa", 0)[0] == 0.0

    def test_h0_uniform_binary(self):
        h, ctx = empirical_entropy(b"abababab", 0)
        assert h == pytest.approx(1.0)
        assert ctx == 1

    def test_fibonacci_h0_limit(self):
        f25 = gen_fibonacci(25)
        h, _ = empirical_entropy(f25, 0)
        assert 100 * h / 8 == pytest.approx(11.99, abs=0.1)

    def test_contexts_k1_is_sigma(self):
        data = b"mississippi"
        _, ctx = empirical_entropy(data, 1)
        assert ctx == len(set(data))

    def test_monotone_decreasing(self):
        rng = random.Random(15)
        data = bytes(rng.randrange(97, 103) for _ in range(3000))
        rows = entropy_table(data, 6)
        hs = [h for _, h, _, _ in rows]
        for a, b in zip(hs, hs[1:]):
            assert b <= a + 1e-9

    def test_doubling_never_lowers_entropy(self):
        rng = random.Random(16)
        for _ in range(25):
            n = rng.randrange(6, 300)
            data = bytes(rng.randrange(97, 101) for _ in range(n))
            for k in range(0, 5):
                if k >= n:
                    continue
                h1, _ = empirical_entropy(data, k)
                h2, _ = empirical_entropy(data + data, k)
                assert h2 >= h1 - 1e-9

    def test_order_error(self):
        with pytest.raises(ValueError):
            empirical_entropy(b"ab", 2)


class TestIpm:
    def test_uniform_binary(self):
        assert ipm(b"0101") == pytest.approx(2.0)

    def test_thue_morse(self):
        assert ipm(gen_thue_morse(20)) == pytest.approx(2.0, abs=0.001)

    def test_fibonacci(self):
        assert ipm(gen_fibonacci(25)) == pytest.approx(1.894, abs=0.005)
