"""Deterministic randomness: SplitMix64 streams and unbiased shuffles.

Every sampler in the package draws from a SplitMix64 stream seeded by a
documented mixing of (master_seed, stream_index), so identical inputs give
byte-identical samples on any machine and any interpreter version.  No
platform RNG is involved.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x):
    """SplitMix64 finalizer (Steele/Lea/Flood); a 64-bit bijective mixer."""
    x = (x + GOLDEN) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed, index):
    """Seed for stream `index` of a run keyed by `master_seed`.

    Fixed for all time: mix the master seed, add (index+1) strides of the
    SplitMix64 golden increment, and mix again.  Streams for distinct
    indices are independent for all practical purposes.
    """
    m = splitmix64(master_seed & MASK64)
    return splitmix64((m + (index + 1) * GOLDEN) & MASK64)


class SeedStream:
    """A SplitMix64 sequence with unbiased integer and shuffle helpers."""

    def __init__(self, seed):
        self._state = seed & MASK64

    def next64(self):
        self._state = (self._state + GOLDEN) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randbelow(self, n):
        """Uniform integer in [0, n) by rejection; no modulo bias."""
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def shuffle(self, items):
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def permutation(self, n):
        """Uniform permutation of range(n) as a list: i -> perm[i]."""
        items = list(range(n))
        return self.shuffle(items)

    def single_cycle(self, n):
        """Uniform permutation with one cycle of length n (n >= 2).

        Shuffle an ordering and close it into a cycle; each of the (n-1)!
        n-cycles arises from exactly n orderings.
        """
        order = self.permutation(n)
        pi = [0] * n
        for i in range(n):
            pi[order[i]] = order[(i + 1) % n]
        return pi

    def perfect_matching(self, n):
        """Uniform fixed-point-free involution of range(n), n even."""
        order = self.permutation(n)
        pi = [0] * n
        for i in range(0, n, 2):
            a, b = order[i], order[i + 1]
            pi[a], pi[b] = b, a
        return pi

    def near_perfect_matching(self, n):
        """Involution with one uniform fixed point and a matching on the rest."""
        order = self.permutation(n)
        pi = [0] * n
        pi[order[0]] = order[0]
        for i in range(1, n, 2):
            a, b = order[i], order[i + 1]
            pi[a], pi[b] = b, a
        return pi
