// Exercises the shared library strictly through its C surface: every
// assertion here would hold for any client language binding.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <unistd.h>

#include "wrsg_expert.h"

namespace {

std::string temp_path(const char* stem) {
  const char* dir = std::getenv("TMPDIR");
  std::string base = dir ? dir : "/tmp";
  return base + "/" + stem + "." + std::to_string(::getpid());
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// unique_ptr-style guards keep the handle bookkeeping out of the tests
struct CtxGuard {
  wrsg_ctx* p = nullptr;
  ~CtxGuard() { wrsg_ctx_free(p); }
};
struct DatasetGuard {
  wrsg_dataset* p = nullptr;
  ~DatasetGuard() { wrsg_dataset_free(p); }
};
struct ModelGuard {
  wrsg_model* p = nullptr;
  ~ModelGuard() { wrsg_model_free(p); }
};
struct DbGuard {
  wrsg_db* p = nullptr;
  ~DbGuard() { wrsg_db_free(p); }
};
struct RankingGuard {
  wrsg_ranking* p = nullptr;
  ~RankingGuard() { wrsg_ranking_free(p); }
};
struct StringGuard {
  char* p = nullptr;
  ~StringGuard() { wrsg_string_free(p); }
};

} // namespace

TEST_CASE("version and error channel basics") {
  CHECK(wrsg_version() == std::string("1.0.0"));
  CHECK(wrsg_last_error() != nullptr);
  CHECK(wrsg_last_error_id() != nullptr);

  // a failing call populates both error strings
  wrsg_dataset* ds = nullptr;
  CHECK(wrsg_dataset_open("/nonexistent/nowhere.jsonl", &ds) == WRSG_ERR_IO);
  CHECK(ds == nullptr);
  CHECK(wrsg_last_error_id() == std::string("io_error"));
  CHECK(std::string(wrsg_last_error()).find("nowhere") != std::string::npos);

  wrsg_string_free(nullptr); // must be a no-op
}

TEST_CASE("null handles are argument errors, not crashes") {
  CHECK(wrsg_ctx_create(nullptr, nullptr, nullptr) == WRSG_ERR_ARGUMENT);
  CHECK(wrsg_dataset_generate(nullptr, 10, 1, nullptr) == WRSG_ERR_ARGUMENT);
  CHECK(wrsg_dataset_save(nullptr, "x") == WRSG_ERR_ARGUMENT);
  CHECK(wrsg_model_train(nullptr, 0.25, 1, nullptr) == WRSG_ERR_ARGUMENT);
  CHECK(wrsg_db_build(nullptr, nullptr, 1, 1, nullptr, nullptr) ==
        WRSG_ERR_ARGUMENT);
  CHECK(wrsg_db_query(nullptr, nullptr, nullptr, 1, nullptr) ==
        WRSG_ERR_ARGUMENT);
  CHECK(wrsg_last_error_id() == std::string("invalid_argument"));

  CHECK(wrsg_dataset_count(nullptr) == 0);
  CHECK(wrsg_dataset_valid_count(nullptr) == 0);
  CHECK(wrsg_db_count(nullptr) == 0);
  CHECK(wrsg_ranking_count(nullptr) == 0);

  // frees tolerate NULL
  wrsg_ctx_free(nullptr);
  wrsg_dataset_free(nullptr);
  wrsg_model_free(nullptr);
  wrsg_db_free(nullptr);
  wrsg_ranking_free(nullptr);
}

TEST_CASE("context creation validates its configuration files") {
  CtxGuard ok;
  REQUIRE(wrsg_ctx_create(nullptr, nullptr, &ok.p) == WRSG_OK);
  REQUIRE(ok.p != nullptr);

  wrsg_ctx* ctx = nullptr;
  CHECK(wrsg_ctx_create("/nonexistent/constants.cfg", nullptr, &ctx) ==
        WRSG_ERR_IO);
  CHECK(ctx == nullptr);

  const std::string bad = temp_path("wrsg_capi_badcfg");
  write_text(bad, "this is not a key value line\n");
  CHECK(wrsg_ctx_create(bad.c_str(), nullptr, &ctx) == WRSG_ERR_ARGUMENT);
  CHECK(wrsg_last_error_id() == std::string("config_parse"));

  write_text(bad, "not_a_real_constant=1.0\n");
  CHECK(wrsg_ctx_create(bad.c_str(), nullptr, &ctx) == WRSG_ERR_ARGUMENT);
  CHECK(wrsg_last_error_id() == std::string("unknown_constant"));

  // a well-formed override parses
  write_text(bad, "# comment\nbg = 0.85\nkw=0.92\n");
  CtxGuard tuned;
  CHECK(wrsg_ctx_create(bad.c_str(), nullptr, &tuned.p) == WRSG_OK);

  // space override with an inverted range is rejected
  const std::string space = temp_path("wrsg_capi_badspace");
  write_text(space, "d1_min=300\nd1_max=200\n");
  CHECK(wrsg_ctx_create(nullptr, space.c_str(), &ctx) == WRSG_ERR_ARGUMENT);
  CHECK(wrsg_last_error_id() == std::string("config_parse"));

  std::remove(bad.c_str());
  std::remove(space.c_str());
}

TEST_CASE("the full pipeline runs through the C surface") {
  CtxGuard ctx;
  REQUIRE(wrsg_ctx_create(nullptr, nullptr, &ctx.p) == WRSG_OK);

  // ---- dataset ----
  DatasetGuard ds;
  REQUIRE(wrsg_dataset_generate(ctx.p, 400, 7, &ds.p) == WRSG_OK);
  CHECK(wrsg_dataset_count(ds.p) == 400);
  CHECK(wrsg_dataset_valid_count(ds.p) == 83);

  wrsg_dataset* tiny = nullptr;
  CHECK(wrsg_dataset_generate(ctx.p, 1, 7, &tiny) == WRSG_ERR_ARGUMENT);
  CHECK(tiny == nullptr);

  const std::string ds_path = temp_path("wrsg_capi_ds");
  REQUIRE(wrsg_dataset_save(ds.p, ds_path.c_str()) == WRSG_OK);
  DatasetGuard ds2;
  REQUIRE(wrsg_dataset_open(ds_path.c_str(), &ds2.p) == WRSG_OK);
  CHECK(wrsg_dataset_count(ds2.p) == 400);
  CHECK(wrsg_dataset_valid_count(ds2.p) == 83);

  const std::string junk = temp_path("wrsg_capi_junk");
  write_text(junk, "definitely not a dataset\n");
  wrsg_dataset* bad = nullptr;
  CHECK(wrsg_dataset_open(junk.c_str(), &bad) == WRSG_ERR_FORMAT);
  CHECK(wrsg_last_error_id() == std::string("corrupt_dataset"));

  // ---- model ----
  ModelGuard model;
  REQUIRE(wrsg_model_train(ds.p, 0.25, 7, &model.p) == WRSG_OK);

  double cop = 0;
  REQUIRE(wrsg_model_cop(model.p, "pout_kva", &cop) == WRSG_OK);
  CHECK(cop == doctest::Approx(0.9978523676052289).epsilon(1e-6));
  REQUIRE(wrsg_model_cop(model.p, "w_kg", &cop) == WRSG_OK);
  CHECK(cop == doctest::Approx(0.9998664820480906).epsilon(1e-6));
  REQUIRE(wrsg_model_cop(model.p, "eta_pct", &cop) == WRSG_OK);
  CHECK(cop == doctest::Approx(0.96278852453759).epsilon(1e-6));
  CHECK(wrsg_model_cop(model.p, "torque", &cop) == WRSG_ERR_ARGUMENT);

  StringGuard summary;
  REQUIRE(wrsg_model_summary(model.p, &summary.p) == WRSG_OK);
  CHECK(std::string(summary.p).find("pout_kva") != std::string::npos);
  CHECK(std::string(summary.p).find("cop=") != std::string::npos);

  StringGuard fp;
  REQUIRE(wrsg_model_fingerprint(model.p, &fp.p) == WRSG_OK);
  CHECK(std::string(fp.p).size() == 16);

  const std::string model_path = temp_path("wrsg_capi_model");
  REQUIRE(wrsg_model_save(model.p, model_path.c_str()) == WRSG_OK);
  ModelGuard model2;
  REQUIRE(wrsg_model_open(model_path.c_str(), &model2.p) == WRSG_OK);
  double cop2 = 0;
  REQUIRE(wrsg_model_cop(model.p, "eta_pct", &cop) == WRSG_OK);
  REQUIRE(wrsg_model_cop(model2.p, "eta_pct", &cop2) == WRSG_OK);
  CHECK(cop == cop2); // persisted at full precision

  StringGuard fp2;
  REQUIRE(wrsg_model_fingerprint(model2.p, &fp2.p) == WRSG_OK);
  CHECK(std::string(fp.p) == fp2.p);

  wrsg_model* nomodel = nullptr;
  CHECK(wrsg_model_open(junk.c_str(), &nomodel) == WRSG_ERR_FORMAT);
  CHECK(wrsg_last_error_id() == std::string("corrupt_model"));

  // ---- database ----
  DbGuard db;
  REQUIRE(wrsg_db_build(ctx.p, model.p, 400, 11, nullptr, &db.p) == WRSG_OK);
  CHECK(wrsg_db_count(db.p) == 66);
  CHECK(wrsg_db_dropped(db.p) == 334);

  StringGuard dbfp;
  REQUIRE(wrsg_db_fingerprint(db.p, &dbfp.p) == WRSG_OK);
  CHECK(std::string(dbfp.p) == fp.p);

  wrsg_db* nodb = nullptr;
  CHECK(wrsg_db_build(ctx.p, model.p, 400, 11, "gibberish", &nodb) ==
        WRSG_ERR_ARGUMENT);
  CHECK(nodb == nullptr);

  const std::string db_path = temp_path("wrsg_capi_db");
  REQUIRE(wrsg_db_save(db.p, db_path.c_str()) == WRSG_OK);

  int stale = -1;
  DbGuard db2;
  REQUIRE(wrsg_db_open(db_path.c_str(), fp.p, &db2.p, &stale) == WRSG_OK);
  CHECK(stale == 0);
  CHECK(wrsg_db_count(db2.p) == 66);

  int stale2 = -1;
  DbGuard db3;
  REQUIRE(wrsg_db_open(db_path.c_str(), "0123456789abcdef", &db3.p, &stale2) ==
          WRSG_OK);
  CHECK(stale2 == 1);

  StringGuard plot;
  REQUIRE(wrsg_db_export_plot(db.p, &plot.p) == WRSG_OK);
  CHECK(std::string(plot.p).rfind("id,w_kg,pout_kva,eta_pct,feasible,on_front",
                                  0) == 0);

  // ---- query ----
  RankingGuard ranking;
  REQUIRE(wrsg_db_query(db.p, "eta>=85", nullptr, 5, &ranking.p) == WRSG_OK);
  CHECK(wrsg_ranking_status(ranking.p) == std::string("ok"));
  CHECK(wrsg_ranking_count(ranking.p) == 5);
  CHECK(wrsg_ranking_search_ms(ranking.p) >= 0.0);

  double prev_density = 1e300;
  for (int i = 0; i < wrsg_ranking_count(ranking.p); ++i) {
    int id = -1;
    double pout = 0, w = 0, eta = 0, density = 0;
    REQUIRE(wrsg_ranking_entry(ranking.p, i, &id, &pout, &w, &eta, &density) ==
            WRSG_OK);
    CHECK(id >= 0);
    CHECK(eta >= 85.0);
    CHECK(density == doctest::Approx(pout / w).epsilon(1e-15));
    CHECK(density <= prev_density);
    prev_density = density;
  }
  CHECK(wrsg_ranking_entry(ranking.p, 99, nullptr, nullptr, nullptr, nullptr,
                           nullptr) == WRSG_ERR_ARGUMENT);

  StringGuard table;
  REQUIRE(wrsg_ranking_format(ranking.p, "csv", &table.p) == WRSG_OK);
  CHECK(std::string(table.p).rfind("rank,id,", 0) == 0);
  char* bad_fmt = nullptr;
  CHECK(wrsg_ranking_format(ranking.p, "yaml", &bad_fmt) == WRSG_ERR_ARGUMENT);

  RankingGuard none;
  REQUIRE(wrsg_db_query(db.p, "pout>=100000", nullptr, 3, &none.p) == WRSG_OK);
  CHECK(wrsg_ranking_status(none.p) == std::string("no_solution"));
  CHECK(wrsg_ranking_count(none.p) == 0);

  // ---- verification ----
  StringGuard verify_report;
  double mp = -1, mw = -1, me = -1;
  REQUIRE(wrsg_db_verify(db.p, ctx.p, "front", &verify_report.p, &mp, &mw,
                         &me) == WRSG_OK);
  CHECK(mp >= 0.0);
  CHECK(mw >= 0.0);
  CHECK(me >= 0.0);
  CHECK(std::string(verify_report.p).find("evaluated=") != std::string::npos);

  CHECK(wrsg_db_verify(db.p, ctx.p, "nonsense", nullptr, nullptr, nullptr,
                       nullptr) == WRSG_ERR_ARGUMENT);

  // ---- comparison report ----
  StringGuard report;
  REQUIRE(wrsg_db_report(db.p, ctx.p, 0, nullptr, 1, 1, &report.p) == WRSG_OK);
  CHECK(std::string(report.p).rfind("quantity,", 0) == 0);
  CHECK(std::string(report.p).find("pout_kva") != std::string::npos);

  char* noreport = nullptr;
  CHECK(wrsg_db_report(db.p, ctx.p, 100000, nullptr, 0, 0, &noreport) ==
        WRSG_ERR_ARGUMENT);

  std::remove(ds_path.c_str());
  std::remove(model_path.c_str());
  std::remove(db_path.c_str());
  std::remove(junk.c_str());
}

TEST_CASE("training rejects an out-of-range test fraction") {
  CtxGuard ctx;
  REQUIRE(wrsg_ctx_create(nullptr, nullptr, &ctx.p) == WRSG_OK);

  DatasetGuard ds;
  REQUIRE(wrsg_dataset_generate(ctx.p, 400, 7, &ds.p) == WRSG_OK);

  wrsg_model* m = nullptr;
  CHECK(wrsg_model_train(ds.p, 2.0, 7, &m) == WRSG_ERR_ARGUMENT);
  CHECK(m == nullptr);
}
