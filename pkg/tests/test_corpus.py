import numpy as np
import pytest

from lzsix import gen_fibonacci, gen_mutated, gen_thue_morse, parse_lz77
from lzsix.corpus import SplitMix64, generator_metadata
from lzsix.textcore import Text


class TestFibonacci:
    def test_base(self):
        assert gen_fibonacci(1) == b"0"
        assert gen_fibonacci(2) == b"1"

    def test_recurrence_unrolled(self):
        assert gen_fibonacci(3) == b"10"
        assert gen_fibonacci(4) == b"101"
        assert gen_fibonacci(5) == b"10110"

    def test_length_is_fibonacci_number(self):
        assert len(gen_fibonacci(25)) == 75025

    def test_factor_complexity(self):
        # a sturmian word has exactly i+1 distinct factors of length i
        word = gen_fibonacci(20)
        for i in range(1, 13):
            factors = {word[k : k + i] for k in range(len(word) - i + 1)}
            assert len(factors) == i + 1

    def test_cap(self):
        with pytest.raises(ValueError):
            gen_fibonacci(60, cap=10**6)


class TestThueMorse:
    def test_small(self):
        assert gen_thue_morse(1) == b"01"
        assert gen_thue_morse(2) == b"0110"
        assert gen_thue_morse(3) == b"01101001"

    def test_length(self):
        for n in (1, 5, 12):
            assert len(gen_thue_morse(n)) == 2**n

    def test_no_overlapping_squares(self):
        # no factor 0X0X0 or 1X1X1 for |X| <= 6, checked exhaustively
        word = np.frombuffer(gen_thue_morse(14), dtype=np.uint8)
        n = word.size
        for xlen in range(0, 7):
            period = xlen + 1
            total = 2 * period + 1
            if total > n:
                continue
            first = word[: n - total + 1]
            mid = word[period : n - total + 1 + period]
            last = word[2 * period : n - total + 1 + 2 * period]
            overlap = (first == mid) & (mid == last)
            if xlen:
                for j in range(1, xlen + 1):
                    overlap &= word[j : n - total + 1 + j] == word[period + j : n - total + 1 + period + j]
            assert not overlap.any()

    def test_balanced(self):
        word = gen_thue_morse(16)
        assert word.count(b"0") == word.count(b"1")


class TestMutated:
    BASE = b"the five boxing wizards jump quickly. " * 40

    def test_zero_effective_rate_gives_exact_copies(self):
        out = gen_mutated(self.BASE, 4, 1e-7, 1, seed=1)
        assert out == self.BASE * 4

    def test_first_copy_unmutated(self):
        out = gen_mutated(self.BASE, 3, 0.01, 2, seed=2)
        assert out[: len(self.BASE)] == self.BASE

    def test_mutation_count_per_copy(self):
        rate = 0.01
        out = gen_mutated(self.BASE, 2, rate, 1, seed=3)
        second = out[len(self.BASE) :]
        hamming = sum(a != b for a, b in zip(self.BASE, second))
        assert hamming == round(rate * len(self.BASE))

    def test_rate_arithmetic_on_mebibyte(self):
        assert round(0.001 * 2**20) in (1048, 1049)

    def test_schemes_agree_until_copy_three(self):
        base = self.BASE * 7  # ~10 KiB
        a = gen_mutated(base, 5, 0.01, 1, seed=4)
        b = gen_mutated(base, 5, 0.01, 2, seed=4)
        n = len(base)
        assert a[: 2 * n] == b[: 2 * n]
        assert a[2 * n : 3 * n] != b[2 * n : 3 * n]

    def test_deterministic(self):
        a = gen_mutated(self.BASE, 4, 0.02, 2, seed=9)
        b = gen_mutated(self.BASE, 4, 0.02, 2, seed=9)
        assert a == b
        c = gen_mutated(self.BASE, 4, 0.02, 2, seed=10)
        assert a != c

    def test_single_symbol_base_rejected(self):
        with pytest.raises(ValueError):
            gen_mutated(b"aaaa" * 100, 2, 0.5, 1, seed=0)

    def test_replacement_chars_come_from_base(self):
        out = gen_mutated(self.BASE, 6, 0.05, 2, seed=11)
        assert set(out) <= set(self.BASE)

    def test_phrase_growth_bounded_by_mutations(self):
        base = self.BASE * 4
        copies = 6
        clean = parse_lz77(Text(base * copies)).n_phrases
        rate = 0.005
        mutated = parse_lz77(Text(gen_mutated(base, copies, rate, 1, seed=12))).n_phrases
        total_mutations = round(rate * len(base)) * (copies - 1)
        assert mutated - clean <= 3 * total_mutations


class TestSplitMix:
    def test_known_stream(self):
        # splitmix64 reference values for seed 1234567
        rng = SplitMix64(1234567)
        got = [rng.next_u64() for _ in range(3)]
        assert got == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
        ]

    def test_below_is_uniformish(self):
        rng = SplitMix64(0)
        counts = [0] * 5
        for _ in range(5000):
            counts[rng.below(5)] += 1
        assert min(counts) > 800


def test_metadata_line():
    meta = generator_metadata("mutate1", {"copies": 10, "rate": 0.001}, seed=7)
    assert "family=mutate1" in meta
    assert "first_copy=unmutated" in meta
    assert "seed=7" in meta
