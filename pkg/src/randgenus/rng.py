"""Portable 64-bit random streams.

Experiments must reproduce bit for bit on any platform, so the generator is
pinned to xoshiro256** seeded through SplitMix64 instead of relying on
:mod:`random`.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def fmix64(z):
    """SplitMix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix(seed, index):
    """Derive the seed of stream ``index`` from a base ``seed``.

    ``mix(seed, i) = fmix64(seed XOR (i * GOLDEN_GAMMA mod 2^64))``. The
    multiplication keeps ``mix(a, b)`` and ``mix(b, a)`` apart.
    """
    return fmix64((seed & MASK64) ^ ((index * GOLDEN_GAMMA) & MASK64))


def splitmix64(seed):
    """Yield the SplitMix64 sequence started at ``seed``."""
    state = seed & MASK64
    while True:
        state = (state + GOLDEN_GAMMA) & MASK64
        yield fmix64(state)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** generator.

    >>> Xoshiro256(0).next_u64() == Xoshiro256(0).next_u64()
    True
    """

    __slots__ = ("_s",)

    def __init__(self, seed):
        sm = splitmix64(seed)
        self._s = [next(sm) for _ in range(4)]

    def next_u64(self):
        s = self._s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, bound):
        """Uniform integer in ``[0, bound)`` (Lemire's multiply-and-reject)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        m = self.next_u64() * bound
        low = m & MASK64
        if low < bound:
            threshold = (-bound) % bound
            while low < threshold:
                m = self.next_u64() * bound
                low = m & MASK64
        return m >> 64

    def random(self):
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items):
        """In-place Fisher-Yates shuffle, last index first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
