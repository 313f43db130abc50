"""Brute-force reference implementations used to freeze expected values.

Everything here is deliberately naive: linear scans, quadratic cover
checks, explicit tree walks.  Tests compare the library against these,
never the other way round.
"""

def rank_scan(bits, i, bit=1):
    return sum(1 for b in bits[:i] if b == bit)


def select_scan(bits, j, bit=1):
    seen = 0
    for pos, b in enumerate(bits, start=1):
        if b == bit:
            seen += 1
            if seen == j:
                return pos
    raise IndexError


def naive_suffix_array(seq):
    seq = list(seq)
    n = len(seq)
    return sorted(range(n), key=lambda i: seq[i:])


def naive_occurrences(data, pattern):
    """1-based start positions of pattern in data (bytes or sequences)."""
    out = []
    m = len(pattern)
    if m == 0:
        return out
    for i in range(len(data) - m + 1):
        if data[i : i + m] == pattern:
            out.append(i + 1)
    return out


def prev_less_scan(values, pos, v):
    for p in range(pos - 1, 0, -1):
        if values[p - 1] <= v:
            return p
    return None


def range_count_scan(values, x1, x2, y1, y2):
    return sum(1 for x in range(x1, x2 + 1) if y1 <= values[x - 1] <= y2)


def cover_depth_quadratic(starts, lengths):
    """Source depths by the definition: depth = 1 + max depth of strictly
    covering sources (same-start sources never cover each other)."""
    m = len(starts)
    ends = [starts[k] + lengths[k] - 1 for k in range(m)]
    order = sorted(range(m), key=lambda k: (starts[k], -lengths[k]))
    depths = [0] * m
    for k in order:
        best = -1
        for j in range(m):
            if j == k:
                continue
            if starts[j] < starts[k] and ends[j] >= ends[k]:
                best = max(best, depths[j])
        depths[k] = best + 1
    return depths


def copy_depth_naive(kind, phrases, n):
    """C[i] by direct recursive unrolling of the copy chains."""
    phrases = [(p.source, p.copy_len, p.trail) for p in phrases]
    starts = []
    ends = []
    pos = 1
    for source, copy_len, trail in phrases:
        end = pos + copy_len - 1 + (1 if trail is not None else 0)
        starts.append(pos)
        ends.append(end)
        pos = end + 1

    import functools

    @functools.lru_cache(maxsize=None)
    def depth(i):
        for p, (source, copy_len, trail) in enumerate(phrases):
            if starts[p] <= i <= ends[p]:
                if trail is not None and i == ends[p]:
                    return 1
                if kind == "lz77":
                    src_start = source
                else:
                    src_end = ends[source - 1]
                    src_start = src_end - copy_len + 1
                return depth(src_start + (i - starts[p])) + 1
        raise AssertionError(f"position {i} not covered")

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        return [depth(i) for i in range(1, n + 1)]
    finally:
        sys.setrecursionlimit(old)


def classify_occurrences(data, pattern, phrase_ends):
    """Partition oracle occurrences by how they sit against phrase
    boundaries (phrase_ends are 1-based end positions)."""
    ends = set(int(e) for e in phrase_ends)
    sorted_ends = sorted(ends)
    out = {}
    m = len(pattern)
    for pos in naive_occurrences(data, pattern):
        last = pos + m - 1
        crossed = any(pos <= e < last for e in sorted_ends)
        if crossed:
            out[pos] = "primary"
        elif last in ends:
            out[pos] = "special"
        else:
            out[pos] = "secondary"
    return out


class ExplicitTree:
    """Plain pointer tree mirroring the DFUDS operations."""

    def __init__(self, children):
        # children: list of (label, ExplicitTree)
        self.children = children

    def degree(self):
        return len(self.children)

    def is_leaf(self):
        return not self.children

    def preorder_nodes(self):
        out = [self]
        for _, c in self.children:
            out.extend(c.preorder_nodes())
        return out

    def leaves(self):
        if self.is_leaf():
            return [self]
        out = []
        for _, c in self.children:
            out.extend(c.leaves())
        return out


def random_tree(rng, max_nodes):
    """Random ordinal tree with sorted edge labels, as nested lists."""
    budget = rng.randrange(1, max_nodes + 1)

    def grow(remaining):
        if remaining <= 1:
            return [], 1
        deg = rng.randrange(0, min(5, remaining))
        labels = sorted(rng.sample(range(64), deg))
        used = 1
        node = []
        for lab in labels:
            child, size = grow(max(1, (remaining - used) // max(deg, 1)))
            node.append((lab, child))
            used += size
        return node, used

    node, _ = grow(budget)
    return node
