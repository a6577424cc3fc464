#define WRSG_BUILDING 1

#include "wrsg_expert.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "core/config.h"
#include "core/expert_db.h"
#include "core/guide.h"
#include "core/machine.h"
#include "core/mop.h"
#include "core/sampling.h"

struct wrsg_ctx {
  wrsg::OracleConstants constants;
  wrsg::Boundaries boundaries;
  wrsg::DesignSpace space;
};

struct wrsg_dataset {
  wrsg::Dataset ds;
};

struct wrsg_model {
  wrsg::MopModel mop;
};

struct wrsg_db {
  wrsg::ExpertDatabase db;
};

struct wrsg_ranking {
  wrsg::SolutionRanking ranking;
};

namespace {

thread_local std::string tl_error;
thread_local std::string tl_error_id;

wrsg_status status_for(const std::string& id) {
  if (id == "invalid_argument" || id == "unknown_quantity" ||
      id == "spec_parse" || id == "unknown_constant" ||
      id == "missing_field" || id == "config_parse")
    return WRSG_ERR_ARGUMENT;
  if (id == "io_error") return WRSG_ERR_IO;
  if (id == "corrupt_dataset" || id == "corrupt_model" ||
      id == "corrupt_database")
    return WRSG_ERR_FORMAT;
  if (id == "internal") return WRSG_ERR_INTERNAL;
  return WRSG_ERR_DOMAIN;
}

wrsg_status fail(const std::string& id, const std::string& message) {
  tl_error_id = id;
  tl_error = message;
  return status_for(id);
}

template <typename F>
wrsg_status guarded(F&& body) {
  try {
    body();
    return WRSG_OK;
  } catch (const wrsg::Error& e) {
    return fail(e.id(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  } catch (...) {
    return fail("internal", "unidentified failure");
  }
}

wrsg_status fail_null_arg(const char* what) {
  return fail("invalid_argument", std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const wrsg::DesignRecord& record_by_id(const wrsg::ExpertDatabase& db,
                                       int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= db.records.size())
    wrsg::raise("invalid_argument",
                "no record with id " + std::to_string(id));
  return db.records[static_cast<std::size_t>(id)];
}

} // namespace

extern "C" {

const char* wrsg_version(void) { return "1.0.0"; }

const char* wrsg_last_error(void) { return tl_error.c_str(); }

const char* wrsg_last_error_id(void) { return tl_error_id.c_str(); }

void wrsg_string_free(char* s) { std::free(s); }

wrsg_status wrsg_ctx_create(const char* constants_file,
                            const char* space_file, wrsg_ctx** out) {
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto ctx = std::make_unique<wrsg_ctx>();
    if (constants_file && *constants_file)
      ctx->constants = wrsg::load_constants(constants_file);
    if (space_file && *space_file)
      ctx->space = wrsg::load_space(space_file);
    *out = ctx.release();
  });
}

void wrsg_ctx_free(wrsg_ctx* ctx) { delete ctx; }

wrsg_status wrsg_dataset_generate(const wrsg_ctx* ctx, int n, uint64_t seed,
                                  wrsg_dataset** out) {
  if (!ctx) return fail_null_arg("ctx");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto ds = std::make_unique<wrsg_dataset>();
    ds->ds = wrsg::generate_dataset(ctx->space, n, seed, ctx->constants,
                                    ctx->boundaries);
    *out = ds.release();
  });
}

wrsg_status wrsg_dataset_save(const wrsg_dataset* ds, const char* path) {
  if (!ds) return fail_null_arg("ds");
  if (!path) return fail_null_arg("path");
  return guarded([&] { wrsg::save_dataset(ds->ds, path); });
}

wrsg_status wrsg_dataset_open(const char* path, wrsg_dataset** out) {
  if (!path) return fail_null_arg("path");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto ds = std::make_unique<wrsg_dataset>();
    ds->ds = wrsg::load_dataset(path);
    *out = ds.release();
  });
}

int wrsg_dataset_count(const wrsg_dataset* ds) {
  return ds ? static_cast<int>(ds->ds.samples.size()) : 0;
}

int wrsg_dataset_valid_count(const wrsg_dataset* ds) {
  return ds ? ds->ds.valid_count() : 0;
}

void wrsg_dataset_free(wrsg_dataset* ds) { delete ds; }

wrsg_status wrsg_model_train(const wrsg_dataset* ds, double test_fraction,
                             uint64_t seed, wrsg_model** out) {
  if (!ds) return fail_null_arg("ds");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<wrsg_model>();
    m->mop = wrsg::train_mop(ds->ds, wrsg::SplitSpec{test_fraction, seed});
    *out = m.release();
  });
}

wrsg_status wrsg_model_save(const wrsg_model* m, const char* path) {
  if (!m) return fail_null_arg("m");
  if (!path) return fail_null_arg("path");
  return guarded([&] { wrsg::save_model(m->mop, path); });
}

wrsg_status wrsg_model_open(const char* path, wrsg_model** out) {
  if (!path) return fail_null_arg("path");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<wrsg_model>();
    m->mop = wrsg::load_model(path);
    *out = m.release();
  });
}

wrsg_status wrsg_model_cop(const wrsg_model* m, const char* target,
                           double* out) {
  if (!m) return fail_null_arg("m");
  if (!target) return fail_null_arg("target");
  if (!out) return fail_null_arg("out");
  return guarded([&] { *out = m->mop.for_target(target).cop; });
}

wrsg_status wrsg_model_summary(const wrsg_model* m, char** out) {
  if (!m) return fail_null_arg("m");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    std::string text;
    char buf[128];
    for (std::size_t t = 0; t < wrsg::kTargets.size(); ++t) {
      const auto& tm = m->mop.targets[t];
      const auto& w = tm.winner;
      text += wrsg::kTargets[t];
      text += ": ";
      text += wrsg::kind_name(w.kind);
      if (w.kind == wrsg::ModelKind::PLS1 || w.kind == wrsg::ModelKind::PLS2)
        std::snprintf(buf, sizeof buf, " degree %d", w.degree);
      else if (w.kind == wrsg::ModelKind::MLS)
        std::snprintf(buf, sizeof buf, " bandwidth %g", w.bandwidth);
      else
        std::snprintf(buf, sizeof buf, " theta %g", w.theta);
      text += buf;
      text += " on ";
      for (std::size_t v = 0; v < w.vars.size(); ++v) {
        if (v) text += ',';
        text += wrsg::kVarNames[static_cast<std::size_t>(w.vars[v])];
      }
      std::snprintf(buf, sizeof buf, " cop=%.6f candidates=%d\n", tm.cop,
                    tm.candidates_tried);
      text += buf;
    }
    *out = dup_string(text);
  });
}

wrsg_status wrsg_model_fingerprint(const wrsg_model* m, char** out) {
  if (!m) return fail_null_arg("m");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup_string(wrsg::model_fingerprint(m->mop)); });
}

void wrsg_model_free(wrsg_model* m) { delete m; }

wrsg_status wrsg_db_build(const wrsg_ctx* ctx, const wrsg_model* m, int n,
                          uint64_t seed, const char* spec, wrsg_db** out) {
  if (!ctx) return fail_null_arg("ctx");
  if (!m) return fail_null_arg("m");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto db = std::make_unique<wrsg_db>();
    db->db = wrsg::build_database(m->mop, ctx->space, n, seed,
                                  ctx->boundaries, ctx->constants);
    if (spec && *spec)
      wrsg::apply_constraints(db->db, wrsg::parse_spec(spec));
    *out = db.release();
  });
}

wrsg_status wrsg_db_save(const wrsg_db* db, const char* path) {
  if (!db) return fail_null_arg("db");
  if (!path) return fail_null_arg("path");
  return guarded([&] { wrsg::save_database(db->db, path); });
}

wrsg_status wrsg_db_open(const char* path, const char* expected_fingerprint,
                         wrsg_db** out, int* stale) {
  if (!path) return fail_null_arg("path");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  if (stale) *stale = 0;
  return guarded([&] {
    auto db = std::make_unique<wrsg_db>();
    std::string warning;
    db->db = wrsg::load_database(
        path, expected_fingerprint ? expected_fingerprint : "", &warning);
    if (stale) *stale = warning == "stale_model" ? 1 : 0;
    *out = db.release();
  });
}

long long wrsg_db_count(const wrsg_db* db) {
  return db ? static_cast<long long>(db->db.records.size()) : 0;
}

long long wrsg_db_dropped(const wrsg_db* db) {
  return db ? db->db.dropped_invalid : 0;
}

wrsg_status wrsg_db_fingerprint(const wrsg_db* db, char** out) {
  if (!db) return fail_null_arg("db");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup_string(db->db.model_fingerprint); });
}

wrsg_status wrsg_db_export_plot(const wrsg_db* db, char** csv) {
  if (!db) return fail_null_arg("db");
  if (!csv) return fail_null_arg("csv");
  *csv = nullptr;
  return guarded([&] { *csv = dup_string(wrsg::export_plot_csv(db->db)); });
}

wrsg_status wrsg_db_query(const wrsg_db* db, const char* spec,
                          const char* rank_by, int top_k,
                          wrsg_ranking** out) {
  if (!db) return fail_null_arg("db");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    wrsg::SpecQuery q;
    q.constraints = wrsg::parse_spec(spec ? spec : "");
    q.rank_by = wrsg::parse_rank_by(rank_by && *rank_by ? rank_by
                                                        : "power_density");
    q.top_k = top_k;
    auto r = std::make_unique<wrsg_ranking>();
    r->ranking = wrsg::query(db->db, q);
    *out = r.release();
  });
}

wrsg_status wrsg_db_verify(const wrsg_db* db, const wrsg_ctx* ctx,
                           const char* which, char** report,
                           double* max_rel_pout, double* max_rel_w,
                           double* max_rel_eta) {
  if (!db) return fail_null_arg("db");
  if (!ctx) return fail_null_arg("ctx");
  if (!which) return fail_null_arg("which");
  if (report) *report = nullptr;
  return guarded([&] {
    const auto rep = wrsg::verify_with_oracle(db->db, which,
                                              db->db.boundaries,
                                              ctx->constants);
    if (max_rel_pout) *max_rel_pout = rep.max_rel[0];
    if (max_rel_w) *max_rel_w = rep.max_rel[1];
    if (max_rel_eta) *max_rel_eta = rep.max_rel[2];
    if (!report) return;
    std::string text =
        "id,pout_pred,pout_oracle,pout_rel,w_pred,w_oracle,w_rel,"
        "eta_pred,eta_oracle,eta_rel,ok,fail_id\n";
    char buf[320];
    for (const auto& row : rep.rows) {
      if (row.oracle_ok) {
        std::snprintf(buf, sizeof buf,
                      "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g,1,\n",
                      row.id, row.predicted[0], row.oracle[0], row.rel_err[0],
                      row.predicted[1], row.oracle[1], row.rel_err[1],
                      row.predicted[2], row.oracle[2], row.rel_err[2]);
        text += buf;
      } else {
        std::snprintf(buf, sizeof buf, "%d,%.17g,,,%.17g,,,%.17g,,,0,%s\n",
                      row.id, row.predicted[0], row.predicted[1],
                      row.predicted[2], row.fail_id.c_str());
        text += buf;
      }
    }
    std::snprintf(buf, sizeof buf, "# evaluated=%zu failed=%zu\n",
                  rep.evaluated, rep.failed);
    text += buf;
    std::snprintf(buf, sizeof buf,
                  "# max_rel pout_kva=%.6g w_kg=%.6g eta_pct=%.6g\n",
                  rep.max_rel[0], rep.max_rel[1], rep.max_rel[2]);
    text += buf;
    std::snprintf(buf, sizeof buf,
                  "# mean_rel pout_kva=%.6g w_kg=%.6g eta_pct=%.6g\n",
                  rep.mean_rel[0], rep.mean_rel[1], rep.mean_rel[2]);
    text += buf;
    *report = dup_string(text);
  });
}

wrsg_status wrsg_db_report(const wrsg_db* db, const wrsg_ctx* ctx, int id,
                           const char* baseline_file, int with_oracle,
                           int as_csv, char** out) {
  if (!db) return fail_null_arg("db");
  if (!ctx) return fail_null_arg("ctx");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto& rec = record_by_id(db->db, id);
    const wrsg::BaselineDesign base = baseline_file && *baseline_file
                                          ? wrsg::load_baseline(baseline_file)
                                          : wrsg::default_baseline();
    const auto bundle =
        wrsg::compare_report(rec, base, db->db.boundaries, ctx->constants,
                             with_oracle != 0);
    *out = dup_string(wrsg::format_report(bundle, as_csv != 0));
  });
}

void wrsg_db_free(wrsg_db* db) { delete db; }

int wrsg_ranking_count(const wrsg_ranking* r) {
  return r ? static_cast<int>(r->ranking.entries.size()) : 0;
}

const char* wrsg_ranking_status(const wrsg_ranking* r) {
  return r ? r->ranking.status.c_str() : "";
}

double wrsg_ranking_search_ms(const wrsg_ranking* r) {
  return r ? r->ranking.search_ms : 0.0;
}

wrsg_status wrsg_ranking_entry(const wrsg_ranking* r, int index, int* id,
                               double* pout_kva, double* w_kg,
                               double* eta_pct, double* power_density) {
  if (!r) return fail_null_arg("r");
  if (index < 0 ||
      static_cast<std::size_t>(index) >= r->ranking.entries.size())
    return fail("invalid_argument",
                "ranking index out of range: " + std::to_string(index));
  const auto& e = r->ranking.entries[static_cast<std::size_t>(index)];
  if (id) *id = e.rec.id;
  if (pout_kva) *pout_kva = e.rec.pout_kva;
  if (w_kg) *w_kg = e.rec.w_kg;
  if (eta_pct) *eta_pct = e.rec.eta_pct;
  if (power_density) *power_density = e.power_density;
  return WRSG_OK;
}

wrsg_status wrsg_ranking_format(const wrsg_ranking* r, const char* format,
                                char** out) {
  if (!r) return fail_null_arg("r");
  if (!format) return fail_null_arg("format");
  if (!out) return fail_null_arg("out");
  *out = nullptr;
  return guarded(
      [&] { *out = dup_string(wrsg::format_ranking(r->ranking, format)); });
}

void wrsg_ranking_free(wrsg_ranking* r) { delete r; }

} // extern "C"
