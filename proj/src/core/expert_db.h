#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/machine.h"
#include "core/mop.h"
#include "core/sampling.h"

namespace wrsg {

enum class ConstraintOp { GE = 0, LE = 1, GT = 2, LT = 3 };

const char* op_symbol(ConstraintOp op); ///< ">=" / "<=" / ">" / "<"

/// One requirement of the form `quantity op value`.  Quantities:
/// pout_kva / w_kg / eta_pct (predicted), d2 (geometry), n (rated speed,
/// checked against the database boundaries — the models are single-speed).
struct Constraint {
  std::string quantity;
  ConstraintOp op = ConstraintOp::GE;
  double value = 0;
};

/// One catalogued design: geometry, derived parameters, and the surrogate's
/// predicted performance triple.  Only geometry-valid designs are stored.
struct DesignRecord {
  int id = 0;
  GeometryVars x;
  DependentParams m;
  double pout_kva = 0;
  double w_kg = 0;
  double eta_pct = 0;
  bool feasible = true; ///< satisfies the database's constraint set
  bool on_front = false; ///< power-weight Pareto front member (feasible only)
};

/// The bulk design catalogue.  Immutable after build apart from the
/// feasible / on_front flags, which always reflect `constraints`.
struct ExpertDatabase {
  std::vector<DesignRecord> records; ///< ids contiguous from 0
  std::uint64_t seed = 0;
  DesignSpace space;
  Boundaries boundaries;
  std::string model_fingerprint; ///< digest of the producing model file
  std::vector<Constraint> constraints;
  long long dropped_invalid = 0; ///< LHS points rejected by the validity gate
};

/// Draw n LHS points, derive dependent geometry, drop invalid points
/// (counted in dropped_invalid), and predict the three targets with the
/// winning metamodels.  Deterministic under (space, n, seed).
ExpertDatabase build_database(const MopModel& mop, const DesignSpace& space,
                              int n, std::uint64_t seed, const Boundaries& b,
                              const OracleConstants& c);

/// Re-partition the database: feasible = conjunction of cs (empty = all
/// feasible).  Stores cs, refreshes the Pareto front, and returns the
/// feasible count.  Unknown quantities raise `unknown_quantity`.
std::size_t apply_constraints(ExpertDatabase& db,
                              const std::vector<Constraint>& cs);

/// True iff the record satisfies every constraint.
bool satisfies(const DesignRecord& r, const std::vector<Constraint>& cs,
               const Boundaries& b);

/// Mark the power-weight Pareto front among feasible records: r is on the
/// front iff no feasible q has (q.pout_kva >= r.pout_kva and
/// q.w_kg <= r.w_kg) with at least one strict; records tied on both
/// objectives are all kept.  Returns the front size; when nothing is
/// feasible the front is empty and *warning (if given) is set.
std::size_t mark_pareto_front(ExpertDatabase& db,
                              std::string* warning = nullptr);

/// Comparison of one record's predicted triple with its oracle
/// re-evaluation.  `rel_err[k] = |pred - oracle| / |oracle|` in
/// (pout_kva, w_kg, eta_pct) order.
struct VerificationRow {
  int id = 0;
  std::array<double, 3> predicted{};
  std::array<double, 3> oracle{};
  std::array<double, 3> rel_err{};
  bool oracle_ok = true;
  std::string fail_id; ///< error id when re-evaluation failed
};

struct VerificationReport {
  std::vector<VerificationRow> rows; ///< ascending by id
  std::array<double, 3> max_rel{};
  std::array<double, 3> mean_rel{};
  std::size_t evaluated = 0; ///< rows with oracle_ok
  std::size_t failed = 0;
};

/// Re-evaluate selected records with the analytical oracle.  `which` is
/// either "front" (current Pareto members) or "sample:k:seed" (k records
/// drawn without replacement; k is clamped to the database size).  A
/// failing oracle run is recorded per row, never fatal.  An empty
/// selection yields an empty report.
VerificationReport verify_with_oracle(const ExpertDatabase& db,
                                      const std::string& which,
                                      const Boundaries& b,
                                      const OracleConstants& c);

/// Parse a compact requirement list such as
/// "pout>=30,w<=17,eta>=92,d2<=205".  Aliases pout / w / eta map onto the
/// canonical quantity names; whitespace around tokens is ignored.  Raises
/// `spec_parse` on malformed input and `unknown_quantity` on an
/// unrecognized name.  format_spec emits the canonical form, and
/// parse_spec(format_spec(cs)) == cs.
std::vector<Constraint> parse_spec(const std::string& text);
std::string format_spec(const std::vector<Constraint>& cs);

/// Line-delimited persistence: a header {seed, space, model_fingerprint,
/// constraints, boundaries, dropped_invalid} followed by one record per
/// line.  load(save(db)) == db bit-exactly.  When expected_fingerprint is
/// non-empty and differs from the stored one, *warning (if given) is set
/// to "stale_model".  Malformed files raise `corrupt_database`; a
/// header-only file is a valid empty database.
void save_database(const ExpertDatabase& db, const std::string& path);
ExpertDatabase load_database(const std::string& path,
                             const std::string& expected_fingerprint = "",
                             std::string* warning = nullptr);

/// Scatter-plot export, one line per record:
/// id,w_kg,pout_kva,eta_pct,feasible,on_front (header row included).
std::string export_plot_csv(const ExpertDatabase& db);

} // namespace wrsg
