#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/machine.h"

namespace wrsg {

/// Canonical ordering of the fundamental variables everywhere: files,
/// matrices, significance tables.
inline constexpr std::array<const char*, 6> kVarNames = {
    "d1", "d2", "l", "pbh", "pbw", "na"};

struct VarRange {
  double lo = 0, hi = 0;
};

/// Per-variable bounds of the sweepable design space.
struct DesignSpace {
  VarRange d1{100.0, 200.0};
  VarRange d2{120.0, 250.0};
  VarRange l{40.0, 80.0};
  VarRange pbh{20.0, 40.0};
  VarRange pbw{20.0, 40.0};
  std::vector<int> na_set{5, 6, 7};

  const VarRange& continuous(int dim) const; ///< dim in 0..4, kVarNames order
};

/// The default design space (the ranges above).
DesignSpace default_space();

/// One evaluated design point.  Invalid samples are retained — with their
/// violation reasons and without performance — so the valid rate stays
/// observable and reproducible.
struct Sample {
  int id = 0;
  GeometryVars x;
  DependentParams m;
  Performance p;
  bool valid = false;
  std::vector<ValidityIssue> reasons;
};

struct Dataset {
  std::vector<Sample> samples;
  std::uint64_t seed = 0;
  DesignSpace space;
  std::string created; ///< ISO-8601 UTC; from SOURCE_DATE_EPOCH, else epoch 0

  int valid_count() const;
};

/// How to partition the valid samples of a dataset.
struct SplitSpec {
  double test_fraction = 0.25;
  std::uint64_t seed = 0;
};

/// Latin hypercube sample of the space: each continuous coordinate is
/// stratified into n equal bins with exactly one point per bin; na is drawn
/// uniformly from the discrete set.  Deterministic under (n, seed);
/// raises `invalid_argument` for n < 2.
std::vector<GeometryVars> sample_lhs(const DesignSpace& space, int n,
                                     std::uint64_t seed);

/// Draw n points, derive the dependent geometry, gate validity, and
/// evaluate performance for the valid ones.  Output is ordered by id.
Dataset generate_dataset(const DesignSpace& space, int n, std::uint64_t seed,
                         const OracleConstants& c, const Boundaries& b);

/// Partition the valid samples into train/test.  |test| =
/// round(test_fraction * n_valid), clamped so both sides stay non-empty;
/// requires at least 4 valid samples (`too_few_valid`).  The returned
/// datasets keep the source sample ids.
void split_dataset(const Dataset& ds, const SplitSpec& spec, Dataset* train,
                   Dataset* test);

/// Line-delimited serialization: one header object (seed, space, created)
/// followed by one sample object per line, numbers at 17 significant
/// digits.  Writes are atomic; loading a malformed file raises
/// `corrupt_dataset`.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

} // namespace wrsg
