"""Both kernel lanes must produce bit-identical results."""

import random

import numpy as np
import pytest

from lzsix import Text, encode_parsing, parse_lz77
from lzsix._kernels import pure
from lzsix.textcore import SuffixArrayBundle

speedups = pytest.importorskip("lzsix._kernels._speedups")


def random_text(rng):
    sigma = rng.choice([2, 4, 26, 120])
    n = rng.randrange(2, 900)
    if rng.random() < 0.5:
        base = bytes(rng.randrange(97, 97 + min(sigma, 25)) for _ in range(max(2, n // 4)))
        return (base * 5)[:n]
    return bytes(rng.randrange(32, 32 + sigma) for _ in range(n))


class TestLaneEquivalence:
    def test_lcp(self):
        rng = random.Random(30)
        for _ in range(25):
            t = Text(random_text(rng))
            b = SuffixArrayBundle.build(t, with_rmq=False)
            a = pure.lcp_from_sa(b.seq, b.A - 1)
            c = speedups.lcp_from_sa(b.seq, b.A - 1)
            assert np.array_equal(a, c)

    def test_bwt_rank(self):
        rng = random.Random(31)
        for _ in range(10):
            t = Text(random_text(rng))
            b = SuffixArrayBundle.build(t, with_rmq=False)
            for _ in range(50):
                c = rng.randrange(t.sigma)
                i = rng.randrange(0, b.n + 1)
                assert pure.bwt_rank(b.bwt, b.occ, b.OCC_BLOCK, c, i) == speedups.bwt_rank(
                    b.bwt, b.occ, b.OCC_BLOCK, c, i
                )

    def test_parse_drivers(self):
        rng = random.Random(32)
        for _ in range(30):
            t = Text(random_text(rng))
            b = SuffixArrayBundle.build(t, reversed=True, with_rmq=False)
            for mode in (0, 1):
                r1 = pure.lz_parse(
                    t.symbols, t.n, b.A, b.A_inv, b.bwt, b.occ, b.OCC_BLOCK, b.counts, mode
                )
                r2 = speedups.lz_parse(
                    t.symbols, t.n, b.A, b.A_inv, b.bwt, b.occ, b.OCC_BLOCK, b.counts, mode
                )
                for x, y in zip(r1, r2):
                    assert np.array_equal(x, y)

    def test_extract_loops(self):
        rng = random.Random(33)
        for _ in range(15):
            t = Text(random_text(rng))
            enc = encode_parsing(parse_lz77(t), sigma=t.sigma)
            for _ in range(12):
                start = rng.randrange(1, t.n + 1)
                length = rng.randrange(0, t.n - start + 2)
                a = pure.extract_loop(enc.ends, enc.sources, enc.chars, True, start, length)
                c = speedups.extract_loop(enc.ends, enc.sources, enc.chars, True, start, length)
                assert np.array_equal(a[0], c[0])
                assert a[1] == c[1]
