#pragma once

#include <string>
#include <vector>

#include "core/config.h"
#include "core/expert_db.h"

namespace wrsg {

enum class RankBy { POWER_DENSITY = 0, POUT = 1, ETA = 2 };

const char* rank_by_name(RankBy r); ///< "power_density" / "pout" / "eta"
RankBy parse_rank_by(const std::string& name); ///< `invalid_argument` otherwise

/// A retrieval request: requirement list plus ranking policy.
struct SpecQuery {
  std::vector<Constraint> constraints;
  RankBy rank_by = RankBy::POWER_DENSITY;
  int top_k = 6;
};

struct RankedDesign {
  DesignRecord rec;
  double power_density = 0; ///< pout_kva / w_kg, always echoed
};

/// Query outcome: at most top_k matching designs, best first.
struct SolutionRanking {
  std::vector<RankedDesign> entries;
  SpecQuery query;        ///< echo of the request
  double search_ms = 0;   ///< wall-clock scan time
  std::string status;     ///< "ok" or "no_solution"
};

/// Scan the database for records satisfying every constraint, rank them
/// descending by the requested key (ties broken by ascending id), and keep
/// the best top_k.  An empty result is status "no_solution", not an error.
SolutionRanking query(const ExpertDatabase& db, const SpecQuery& q);

/// Render a ranking.  "table" is an aligned human-readable view, "csv" has
/// the pinned columns rank,id,pout_kva,w_kg,eta_pct,power_density,d1,d2,l,
/// pbh,pbw,na at full precision, "lines" is one key=value record per line.
std::string format_ranking(const SolutionRanking& ranking,
                           const std::string& format);

/// One comparison row.  Geometry rows carry no oracle re-evaluation;
/// delta_rel is meaningful only when has_rel (reference value nonzero).
struct ReportRow {
  std::string name;
  double candidate = 0;
  double reference = 0;
  double delta_abs = 0;
  double delta_rel = 0;
  bool has_rel = false;
  bool has_oracle = false;
  double oracle_value = 0;
  double oracle_rel_err = 0; ///< |candidate - oracle| / |oracle|
};

/// Side-by-side candidate-vs-reference comparison over the fixed row set
/// pout_kva, w_kg, eta_pct, d2, l, pbh, pbw, d1, na, power_density.
struct ReportBundle {
  int candidate_id = 0;
  bool with_oracle = false;
  std::vector<ReportRow> rows;
};

/// Build the comparison.  The reference's performance triple is taken from
/// the baseline when present and otherwise computed with the analytical
/// oracle (which requires the baseline geometry to be valid).  When
/// with_oracle is set the candidate is re-evaluated too and the prediction
/// error is reported per performance row.
ReportBundle compare_report(const DesignRecord& candidate,
                            const BaselineDesign& reference,
                            const Boundaries& b, const OracleConstants& c,
                            bool with_oracle);

/// Render a report as an aligned text table or CSV.
std::string format_report(const ReportBundle& report, bool as_csv);

} // namespace wrsg
