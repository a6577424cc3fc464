#include "core/guide.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace wrsg {

namespace {

double rank_key(const RankedDesign& e, RankBy by) {
  switch (by) {
    case RankBy::POWER_DENSITY: return e.power_density;
    case RankBy::POUT: return e.rec.pout_kva;
    default: return e.rec.eta_pct;
  }
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Right-align `s` to `width` (left-align when width is negative).
std::string pad(const std::string& s, int width) {
  const std::size_t w = static_cast<std::size_t>(width < 0 ? -width : width);
  if (s.size() >= w) return s;
  const std::string fill(w - s.size(), ' ');
  return width < 0 ? s + fill : fill + s;
}

} // namespace

const char* rank_by_name(RankBy r) {
  switch (r) {
    case RankBy::POWER_DENSITY: return "power_density";
    case RankBy::POUT: return "pout";
    default: return "eta";
  }
}

RankBy parse_rank_by(const std::string& name) {
  if (name == "power_density") return RankBy::POWER_DENSITY;
  if (name == "pout") return RankBy::POUT;
  if (name == "eta") return RankBy::ETA;
  raise("invalid_argument", "unknown ranking key: " + name);
}

SolutionRanking query(const ExpertDatabase& db, const SpecQuery& q) {
  if (q.top_k < 1) raise("invalid_argument", "top_k must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  SolutionRanking out;
  out.query = q;
  for (const auto& r : db.records) {
    if (!satisfies(r, q.constraints, db.boundaries)) continue;
    RankedDesign e;
    e.rec = r;
    e.power_density = r.pout_kva / r.w_kg;
    out.entries.push_back(std::move(e));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [&q](const RankedDesign& a, const RankedDesign& b) {
              const double ka = rank_key(a, q.rank_by);
              const double kb = rank_key(b, q.rank_by);
              return ka != kb ? ka > kb : a.rec.id < b.rec.id;
            });
  if (out.entries.size() > static_cast<std::size_t>(q.top_k))
    out.entries.resize(static_cast<std::size_t>(q.top_k));
  out.status = out.entries.empty() ? "no_solution" : "ok";

  const auto t1 = std::chrono::steady_clock::now();
  out.search_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

std::string format_ranking(const SolutionRanking& ranking,
                           const std::string& format) {
  std::string out;
  char buf[384];
  if (format == "csv") {
    out = "rank,id,pout_kva,w_kg,eta_pct,power_density,d1,d2,l,pbh,pbw,na\n";
    int rank = 1;
    for (const auto& e : ranking.entries) {
      std::snprintf(buf, sizeof buf,
                    "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                    "%.17g,%d\n",
                    rank++, e.rec.id, e.rec.pout_kva, e.rec.w_kg,
                    e.rec.eta_pct, e.power_density, e.rec.x.d1, e.rec.x.d2,
                    e.rec.x.l, e.rec.x.pbh, e.rec.x.pbw, e.rec.x.na);
      out += buf;
    }
    return out;
  }
  if (format == "lines") {
    int rank = 1;
    for (const auto& e : ranking.entries) {
      std::snprintf(buf, sizeof buf,
                    "rank=%d id=%d pout_kva=%.17g w_kg=%.17g eta_pct=%.17g "
                    "power_density=%.17g d1=%.17g d2=%.17g l=%.17g "
                    "pbh=%.17g pbw=%.17g na=%d\n",
                    rank++, e.rec.id, e.rec.pout_kva, e.rec.w_kg,
                    e.rec.eta_pct, e.power_density, e.rec.x.d1, e.rec.x.d2,
                    e.rec.x.l, e.rec.x.pbh, e.rec.x.pbw, e.rec.x.na);
      out += buf;
    }
    if (ranking.entries.empty()) out = "no_solution\n";
    return out;
  }
  if (format != "table")
    raise("invalid_argument", "unknown ranking format: " + format);

  if (ranking.entries.empty())
    return "no design satisfies the specification (no_solution)\n";
  out = pad("rank", 5) + pad("id", 7) + pad("pout[kVA]", 11) +
        pad("w[kg]", 9) + pad("eta[%]", 9) + pad("pd[kVA/kg]", 12) +
        pad("d1", 9) + pad("d2", 9) + pad("l", 8) + pad("pbh", 7) +
        pad("pbw", 7) + pad("na", 4) + "\n";
  int rank = 1;
  for (const auto& e : ranking.entries) {
    out += pad(std::to_string(rank++), 5);
    out += pad(std::to_string(e.rec.id), 7);
    out += pad(fmt("%.2f", e.rec.pout_kva), 11);
    out += pad(fmt("%.2f", e.rec.w_kg), 9);
    out += pad(fmt("%.2f", e.rec.eta_pct), 9);
    out += pad(fmt("%.3f", e.power_density), 12);
    out += pad(fmt("%.1f", e.rec.x.d1), 9);
    out += pad(fmt("%.1f", e.rec.x.d2), 9);
    out += pad(fmt("%.1f", e.rec.x.l), 8);
    out += pad(fmt("%.1f", e.rec.x.pbh), 7);
    out += pad(fmt("%.1f", e.rec.x.pbw), 7);
    out += pad(std::to_string(e.rec.x.na), 4);
    out += '\n';
  }
  return out;
}

ReportBundle compare_report(const DesignRecord& candidate,
                            const BaselineDesign& reference,
                            const Boundaries& b, const OracleConstants& c,
                            bool with_oracle) {
  double ref_pout = reference.pout_kva;
  double ref_w = reference.w_kg;
  double ref_eta = reference.eta_pct;
  if (!reference.has_perf) {
    const DependentParams m = derive_dependent(reference.x, b);
    const auto rep = validate(reference.x, m, b, c);
    if (!rep.valid())
      raise("invalid_geometry",
            "baseline violates rule " + rep.reasons.front().rule);
    const Performance p = evaluate_performance(reference.x, m, b, c);
    ref_pout = p.pout_kva;
    ref_w = p.w_kg;
    ref_eta = p.eta_pct;
  }
  if (!(ref_w > 0))
    raise("invalid_argument", "baseline weight must be positive");

  Performance cand_oracle{};
  if (with_oracle)
    cand_oracle = evaluate_performance(candidate.x, candidate.m, b, c);

  ReportBundle out;
  out.candidate_id = candidate.id;
  out.with_oracle = with_oracle;

  const double cand_pd = candidate.pout_kva / candidate.w_kg;
  const double ref_pd = ref_pout / ref_w;
  const double oracle_pd =
      with_oracle ? cand_oracle.pout_kva / cand_oracle.w_kg : 0;

  struct Entry {
    const char* name;
    double cand, ref;
    bool perf; ///< performance row: oracle re-evaluation applies
    double oracle;
  };
  const Entry entries[] = {
      {"pout_kva", candidate.pout_kva, ref_pout, true, cand_oracle.pout_kva},
      {"w_kg", candidate.w_kg, ref_w, true, cand_oracle.w_kg},
      {"eta_pct", candidate.eta_pct, ref_eta, true, cand_oracle.eta_pct},
      {"d2", candidate.x.d2, reference.x.d2, false, 0},
      {"l", candidate.x.l, reference.x.l, false, 0},
      {"pbh", candidate.x.pbh, reference.x.pbh, false, 0},
      {"pbw", candidate.x.pbw, reference.x.pbw, false, 0},
      {"d1", candidate.x.d1, reference.x.d1, false, 0},
      {"na", static_cast<double>(candidate.x.na),
       static_cast<double>(reference.x.na), false, 0},
      {"power_density", cand_pd, ref_pd, true, oracle_pd},
  };
  for (const auto& e : entries) {
    ReportRow row;
    row.name = e.name;
    row.candidate = e.cand;
    row.reference = e.ref;
    row.delta_abs = e.cand - e.ref;
    row.has_rel = e.ref != 0;
    if (row.has_rel) row.delta_rel = row.delta_abs / std::abs(e.ref);
    if (with_oracle && e.perf) {
      row.has_oracle = true;
      row.oracle_value = e.oracle;
      row.oracle_rel_err = std::abs(e.cand - e.oracle) / std::abs(e.oracle);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string format_report(const ReportBundle& report, bool as_csv) {
  std::string out;
  char buf[256];
  if (as_csv) {
    out = report.with_oracle
              ? "quantity,candidate,reference,delta_abs,delta_rel,oracle,"
                "oracle_rel_err\n"
              : "quantity,candidate,reference,delta_abs,delta_rel\n";
    for (const auto& r : report.rows) {
      out += r.name;
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g", r.candidate,
                    r.reference, r.delta_abs);
      out += buf;
      out += r.has_rel ? fmt(",%.17g", r.delta_rel) : std::string(",");
      if (report.with_oracle) {
        if (r.has_oracle) {
          std::snprintf(buf, sizeof buf, ",%.17g,%.17g", r.oracle_value,
                        r.oracle_rel_err);
          out += buf;
        } else {
          out += ",,";
        }
      }
      out += '\n';
    }
    return out;
  }

  out = "design comparison (candidate id " +
        std::to_string(report.candidate_id) + " vs reference)\n";
  out += pad("quantity", -14) + pad("candidate", 12) + pad("reference", 12) +
         pad("delta", 12) + pad("delta[%]", 10);
  if (report.with_oracle) out += pad("oracle", 12) + pad("err[%]", 9);
  out += '\n';
  for (const auto& r : report.rows) {
    out += pad(r.name, -14);
    out += pad(fmt("%.4f", r.candidate), 12);
    out += pad(fmt("%.4f", r.reference), 12);
    out += pad(fmt("%+.4f", r.delta_abs), 12);
    out += r.has_rel ? pad(fmt("%+.2f", 100.0 * r.delta_rel), 10)
                     : pad("-", 10);
    if (report.with_oracle) {
      out += r.has_oracle ? pad(fmt("%.4f", r.oracle_value), 12)
                          : pad("-", 12);
      out += r.has_oracle ? pad(fmt("%.2f", 100.0 * r.oracle_rel_err), 9)
                          : pad("-", 9);
    }
    out += '\n';
  }
  return out;
}

} // namespace wrsg
