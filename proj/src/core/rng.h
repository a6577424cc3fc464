#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wrsg {

/// Deterministic random plumbing shared by sampling, splitting, and the
/// test suite.  Everything here is pinned behaviour: identical (seed, salt)
/// pairs must yield identical streams on every platform, so that files
/// regenerated from the same seeds compare byte-for-byte equal.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer, used to decorrelate derived stream seeds.
std::uint64_t splitmix64(std::uint64_t z);

/// Derive an independent stream seed from a user seed and a stream salt.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double unit_double(Rng& rng);

/// Uniform integer in [0, m), m >= 1, by modulo reduction. The moduli used
/// here are tiny (<= a few hundred thousand), so the bias is negligible and
/// the mapping stays trivially portable.
std::uint64_t bounded(Rng& rng, std::uint64_t m);

/// Fisher-Yates shuffle of the identity permutation over 0..n-1.
std::vector<std::uint32_t> permutation(std::uint32_t n, Rng& rng);

} // namespace wrsg
