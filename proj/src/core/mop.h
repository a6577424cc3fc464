#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/sampling.h"

namespace wrsg {

/// The three predicted quantities, in canonical order.
inline constexpr std::array<const char*, 3> kTargets = {"pout_kva", "w_kg",
                                                        "eta_pct"};

enum class ModelKind { PLS1 = 0, PLS2 = 1, MLS = 2, KRIGING = 3 };

const char* kind_name(ModelKind k); ///< "pls" / "mls" / "kriging"

/// Per-variable affine normalization (mean, sample std) fitted on the
/// training inputs; aligned with the model's variable subset.
struct Scaler {
  std::vector<double> means;
  std::vector<double> stds;
};

/// One trained regressor over a variable subset.  Self-contained: predicting
/// needs no dataset access.
struct FittedMetamodel {
  std::string target;
  ModelKind kind = ModelKind::PLS1;
  int degree = 0;          ///< PLS only (1 or 2)
  double bandwidth = 0;    ///< MLS only, standardized units
  double theta = 0;        ///< Kriging only, isotropic
  std::vector<int> vars;   ///< indices into kVarNames
  Scaler scaler;           ///< per selected variable

  std::vector<double> coeffs;               ///< PLS basis coefficients
  std::vector<std::vector<double>> points;  ///< MLS/Kriging training inputs
  std::vector<double> y;                    ///< MLS/Kriging training targets
  double krig_mu = 0;
  std::vector<double> krig_alpha;           ///< R^-1 (y - mu), recomputed on load

  /// Largest relative training-point misfit recorded at fit time
  /// (Kriging only; exact zero-distance identity for the others).
  double train_interp_err = 0;

  /// Evaluate at one raw point given as the full 6-variable vector in
  /// kVarNames order; standardizes, restricts to the subset, evaluates.
  double predict(const std::array<double, 6>& x_raw) const;
};

/// Eq-style correlation screening outcome for one target.
struct SignificanceReport {
  // rho[var][target], kVarNames x kTargets order
  std::array<std::array<double, 3>, 6> rho{};
};

/// Outcome of one candidate (kind x subset) evaluation during training.
struct CandidateScore {
  ModelKind kind = ModelKind::PLS1;
  int degree = 0;
  double bandwidth = 0;
  std::vector<int> vars;
  double cop = 0;
  double rmse = 0;
  bool ok = false;
  std::string fail_id; ///< error id when the fit or scoring failed
};

/// Winner plus bookkeeping for one target.
struct TargetModel {
  FittedMetamodel winner;
  double cop = 0;
  double rmse = 0; ///< diagnostic only; never drives selection
  int candidates_tried = 0;
  std::vector<CandidateScore> candidates; ///< in-memory diagnostics
};

/// The per-output max-CoP model bundle.
struct MopModel {
  std::array<TargetModel, 3> targets; ///< kTargets order
  SignificanceReport significance;
  SplitSpec split; ///< in-memory only; lets cop_matrix reuse the partition
  bool has_split = false;

  const TargetModel& for_target(const std::string& name) const;
};

/// Pearson linear correlation; raises `degenerate_variance` when either
/// vector is constant.  Lengths must match and be >= 3.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Squared Pearson correlation between held-out targets and predictions,
/// clamped to [0,1].  A constant predictor yields value 0 with warning
/// "constant_predictor"; a constant target raises `degenerate_test_set`.
struct CopResult {
  double value = 0;
  std::string warning;
};
CopResult cop_statistic(const std::vector<double>& actual,
                        const std::vector<double>& predicted);

/// Candidate variable subsets from screening: strong (|rho| >= 0.7), then
/// moderate (|rho| >= 0.3), then all variables; empty subsets skipped,
/// duplicates collapsed.  Indices ascend within each subset.
std::vector<std::vector<int>> significance_subsets(
    const std::array<double, 6>& rho_abs, int n_vars = 6);

/// Train the per-output winners on a dataset: screen, enumerate
/// {PLS deg 1, PLS deg 2, MLS bw {0.5, 1.0, 2.0}, Kriging} x subsets, fit on
/// the train split, score CoP on the test split, keep the argmax (ties:
/// fewer variables, then simpler kind, then smaller bandwidth).
MopModel train_mop(const Dataset& ds, const SplitSpec& split);

/// Per-(variable, target) single-variable refits of the winning kind scored
/// on the test split, plus the winner's total CoP.  Fit failures become
/// zero entries with a warning.
struct CopMatrix {
  std::array<std::array<double, 3>, 6> entry{}; // [var][target]
  std::array<double, 3> total{};
  std::vector<std::string> warnings;
};
CopMatrix cop_matrix(const MopModel& mop, const Dataset& ds);

/// Serialize to the canonical line-delimited form (one object per target,
/// kTargets order) and back.  Loading recomputes Kriging weights from the
/// stored training points; malformed files raise `corrupt_model`.
std::string serialize_model(const MopModel& mop);
void save_model(const MopModel& mop, const std::string& path);
MopModel load_model(const std::string& path);

/// FNV-1a 64 digest (hex) of the canonical serialized form.  A database
/// records this to tie its predictions to the model that produced them.
std::string model_fingerprint(const MopModel& mop);

// Exposed for tests: fit a single metamodel on raw training data.
// `x_rows` are raw (unstandardized) subset coordinates row per sample.
FittedMetamodel fit_metamodel(ModelKind kind, int degree, double bandwidth,
                              const std::string& target,
                              const std::vector<int>& vars,
                              const std::vector<std::vector<double>>& x_rows,
                              const std::vector<double>& y);

// Exposed for tests: predict from subset-space raw coordinates.
double predict_subset(const FittedMetamodel& model,
                      const std::vector<double>& x_subset_raw);

} // namespace wrsg
