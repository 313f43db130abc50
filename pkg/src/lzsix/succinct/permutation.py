"""Permutation with sampled cycle back-links for fast inversion.

apply() is one array read; inverse() follows the cycle forward, taking a
sampled back-link as soon as one is met, so it never walks more than
about 2/epsilon steps.  Indices are 1-based.
"""

import numpy as np

from ..serial import SectionReader, SectionWriter, pack_ints, unpack_ints, width_for


class CyclePermutation:
    def __init__(self, forward, epsilon=1 / 32):
        fwd = np.asarray(forward, dtype=np.int64)
        n = int(fwd.size)
        if n and (sorted(fwd.tolist()) != list(range(1, n + 1))):
            raise ValueError("forward must be a bijection on [1..n]")
        self.n = n
        self.epsilon = float(epsilon)
        self.step = max(2, int(np.ceil(1 / self.epsilon)))
        self._fwd = fwd
        self._fwd_list = fwd.tolist()
        self._build_shortcuts()

    def _build_shortcuts(self):
        shortcuts = {}
        seen = np.zeros(self.n, dtype=bool)
        fwd = self._fwd_list
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cycle = []
            x = start
            while not seen[x - 1]:
                seen[x - 1] = True
                cycle.append(x)
                x = fwd[x - 1]
            if len(cycle) < self.step:
                continue  # short cycles are walked directly
            for k in range(self.step, len(cycle), self.step):
                shortcuts[cycle[k]] = cycle[k - self.step]
            # close the cycle: the first sampled element points backwards too
            k_last = (len(cycle) // self.step) * self.step
            if k_last == len(cycle):
                k_last -= self.step
            shortcuts[cycle[0]] = cycle[k_last]
        self._shortcuts = shortcuts

    def __len__(self):
        return self.n

    def apply(self, i):
        """pi(i)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} out of range [1,{self.n}]")
        return self._fwd_list[i - 1]

    def inverse(self, i):
        """pi^-1(i): walk the cycle, jumping back through a shortcut once."""
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} out of range [1,{self.n}]")
        fwd = self._fwd_list
        get = self._shortcuts.get
        j = i
        jumped = False
        while fwd[j - 1] != i:
            if not jumped:
                back = get(j)
                if back is not None:
                    j = back
                    jumped = True
                    continue
            j = fwd[j - 1]
        return j

    def forward_array(self):
        return self._fwd

    def size_bytes(self):
        return len(self.to_bytes())

    def to_bytes(self):
        w = SectionWriter()
        w.put_u64(self.n)
        width = width_for(max(self.n, 1))
        w.put_u8(width)
        w.put_bytes(pack_ints(self._fwd, width))
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data, epsilon=1 / 32):
        r = SectionReader(data)
        n = r.get_u64()
        width = r.get_u8()
        fwd = unpack_ints(r.get_bytes(), width, n)
        return cls(fwd, epsilon)
