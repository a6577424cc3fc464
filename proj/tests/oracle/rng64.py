"""mt19937_64 replica matching std::mt19937_64, plus the helper draws the C++ side uses."""

MASK = (1 << 64) - 1


class MT19937_64:
    N, M, R = 312, 156, 31
    A = 0xB5026F5AA96619E9
    F = 6364136223846793005
    U, D = 29, 0x5555555555555555
    S, B = 17, 0x71D67FFFEDA60000
    T, C = 37, 0xFFF7EEE000000000
    L = 43
    LOWER = (1 << R) - 1
    UPPER = MASK ^ LOWER

    def __init__(self, seed):
        self.mt = [0] * self.N
        self.mt[0] = seed & MASK
        for i in range(1, self.N):
            self.mt[i] = (self.F * (self.mt[i - 1] ^ (self.mt[i - 1] >> 62)) + i) & MASK
        self.index = self.N

    def _twist(self):
        for i in range(self.N):
            x = (self.mt[i] & self.UPPER) | (self.mt[(i + 1) % self.N] & self.LOWER)
            xa = x >> 1
            if x & 1:
                xa ^= self.A
            self.mt[i] = self.mt[(i + self.M) % self.N] ^ xa
        self.index = 0

    def next(self):
        if self.index >= self.N:
            self._twist()
        y = self.mt[self.index]
        self.index += 1
        y ^= (y >> self.U) & self.D
        y ^= (y << self.S) & self.B & MASK
        y ^= (y << self.T) & self.C & MASK
        y ^= y >> self.L
        return y & MASK


def splitmix64(z):
    z = (z + 0x9E3779B97F4A7C15) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return (z ^ (z >> 31)) & MASK


def mix(seed, salt):
    return splitmix64((seed ^ ((0xD1B54A32D192ED03 * (salt + 1)) & MASK)) & MASK)


def unit_double(rng):
    return (rng.next() >> 11) * (2.0 ** -53)


def bounded(rng, m):
    return rng.next() % m


def fisher_yates(n, rng):
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        k = bounded(rng, i + 1)
        perm[i], perm[k] = perm[k], perm[i]
    return perm


if __name__ == "__main__":
    r = MT19937_64(7)
    for _ in range(5):
        print(r.next())
    r2 = MT19937_64(0xDEADBEEFCAFE)
    for _ in range(3):
        print(r2.next())
