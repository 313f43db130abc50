"""Deterministic generators for repetitive test texts: Fibonacci and
Thue-Morse words, and two mutation schemes over a base text.

Randomness comes from an in-tree splitmix64 generator so outputs are
reproducible across platforms and Python versions for a given seed.
"""

import numpy as np

DEFAULT_CAP = 1 << 28  # refuse to generate more than 256 MiB


class SplitMix64:
    """splitmix64: z += 0x9E3779B97F4A7C15; mix with shifts/multiplies."""

    MASK = (1 << 64) - 1

    def __init__(self, seed):
        self.state = seed & self.MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, bound):
        """Uniform integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound


def gen_fibonacci(order, cap=DEFAULT_CAP):
    """F_1 = '0', F_2 = '1', F_n = F_{n-1} F_{n-2}, over bytes b'0'/b'1'."""
    if order < 1:
        raise ValueError("order must be >= 1")
    lengths = [1, 1]
    while len(lengths) < order:
        lengths.append(lengths[-1] + lengths[-2])
    if lengths[order - 1] > cap:
        raise ValueError(f"Fibonacci word F_{order} exceeds the size cap {cap}")
    if order == 1:
        return b"0"
    prev, cur = b"0", b"1"
    for _ in range(order - 2):
        prev, cur = cur, cur + prev
    return cur


def gen_thue_morse(order, cap=DEFAULT_CAP):
    """Thue-Morse word of length 2^order over bytes b'0'/b'1'.

    Built by repeated doubling with bitwise negation starting from '0';
    gen_thue_morse(3) == b'01101001'.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if (1 << order) > cap:
        raise ValueError(f"Thue-Morse word T_{order} exceeds the size cap {cap}")
    word = np.zeros(1, dtype=np.uint8)
    for _ in range(order):
        word = np.concatenate([word, 1 - word])
    return (word + ord("0")).astype(np.uint8).tobytes()


def gen_mutated(base, copies, rate, scheme, seed, cap=DEFAULT_CAP):
    """Concatenation of `copies` versions of `base` mutated at `rate`.

    Scheme 1 mutates a fresh copy of the base every time; scheme 2
    mutates the previously emitted copy.  The first emitted copy is the
    unmutated base in both schemes.  Each mutation picks a position
    (without replacement within a copy) and replaces the character with a
    uniformly random different character occurring in the base.
    """
    base = bytes(base)
    if not base:
        raise ValueError("base text must be nonempty")
    if not 0 < rate < 1:
        raise ValueError("mutation rate must be in (0, 1)")
    if scheme not in (1, 2):
        raise ValueError("scheme must be 1 or 2")
    if copies * len(base) > cap:
        raise ValueError("output exceeds the size cap")
    alphabet = sorted(set(base))
    n_mut = int(round(rate * len(base)))
    if n_mut > 0 and len(alphabet) < 2:
        raise ValueError("base with a single distinct symbol cannot be mutated")
    rng = SplitMix64(seed)
    pieces = [base]
    prev = np.frombuffer(base, dtype=np.uint8).copy()
    base_arr = np.frombuffer(base, dtype=np.uint8)
    for _ in range(copies - 1):
        src = base_arr.copy() if scheme == 1 else prev.copy()
        chosen = set()
        for _ in range(n_mut):
            while True:
                pos = rng.below(len(base))
                if pos not in chosen:
                    chosen.add(pos)
                    break
            old = src[pos]
            while True:
                repl = alphabet[rng.below(len(alphabet))]
                if repl != old:
                    break
            src[pos] = repl
        pieces.append(src.tobytes())
        prev = src
    return b"".join(pieces[:copies])


def generator_metadata(family, params, seed=None):
    """One-line sidecar description written next to generated files."""
    items = [f"family={family}"]
    items += [f"{k}={v}" for k, v in params.items()]
    if seed is not None:
        items.append(f"seed={seed}")
    if family.startswith("mutate"):
        items.append("first_copy=unmutated")
    return " ".join(items)
