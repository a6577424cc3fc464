#include "core/rng.h"

namespace wrsg {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ (0xD1B54A32D192ED03ull * (salt + 1)));
}

double unit_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t bounded(Rng& rng, std::uint64_t m) {
  return rng() % m;
}

std::vector<std::uint32_t> permutation(std::uint32_t n, Rng& rng) {
  std::vector<std::uint32_t> p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  for (std::uint32_t i = n; i-- > 1;) {
    const auto k = static_cast<std::uint32_t>(bounded(rng, i + 1));
    std::swap(p[i], p[k]);
  }
  return p;
}

} // namespace wrsg
