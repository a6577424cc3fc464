// wrsg — command-line front end for the WRSG preliminary-design pipeline.
// Orchestrates the four stages (sample, train, build-db, query) plus the
// verification and reporting utilities, speaking only the public C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "wrsg_expert.h"

namespace {

// Every handle/string from the C API is released through these.
struct CtxDeleter { void operator()(wrsg_ctx* p) const { wrsg_ctx_free(p); } };
struct DsDeleter {
  void operator()(wrsg_dataset* p) const { wrsg_dataset_free(p); }
};
struct ModelDeleter {
  void operator()(wrsg_model* p) const { wrsg_model_free(p); }
};
struct DbDeleter { void operator()(wrsg_db* p) const { wrsg_db_free(p); } };
struct RankDeleter {
  void operator()(wrsg_ranking* p) const { wrsg_ranking_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { wrsg_string_free(p); }
};

using CtxPtr = std::unique_ptr<wrsg_ctx, CtxDeleter>;
using DsPtr = std::unique_ptr<wrsg_dataset, DsDeleter>;
using ModelPtr = std::unique_ptr<wrsg_model, ModelDeleter>;
using DbPtr = std::unique_ptr<wrsg_db, DbDeleter>;
using RankPtr = std::unique_ptr<wrsg_ranking, RankDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Report the thread's last library error and signal runtime failure.
int runtime_error() {
  std::cerr << "error[" << wrsg_last_error_id() << "]: " << wrsg_last_error()
            << "\n";
  return 1;
}

bool write_text(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) {
    std::cerr << "error[io_error]: cannot write " << path << "\n";
    return false;
  }
  return true;
}

int emit(const std::string& out_path, const char* text) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  return write_text(out_path, text) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"WRSG preliminary-design expert pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return wrsg_version(); });

  std::string constants_file;
  app.add_option("--constants-file", constants_file,
                 "flat key=value overrides for the analytical oracle")
      ->envname("WRSG_CONSTANTS_FILE");

  // sample ------------------------------------------------------------------
  auto* sample = app.add_subcommand(
      "sample", "generate an oracle-labelled LHS dataset");
  int sample_n = 400;
  std::uint64_t sample_seed = 7;
  std::string sample_space, sample_out;
  sample->add_option("--n", sample_n, "number of designs")->required();
  sample->add_option("--seed", sample_seed, "sampling seed")->required();
  sample->add_option("--space-file", sample_space,
                     "design-space overrides (flat key=value)");
  sample->add_option("--out", sample_out, "dataset path")->required();

  // train ---------------------------------------------------------------
  auto* train = app.add_subcommand(
      "train", "fit the per-target surrogate models on a dataset");
  std::string train_data, train_out;
  double train_tf = 0.25;
  std::uint64_t train_seed = 7;
  train->add_option("--data", train_data, "dataset path")->required();
  train->add_option("--test-fraction", train_tf,
                    "held-out fraction of valid samples");
  train->add_option("--seed", train_seed, "split seed")->required();
  train->add_option("--out", train_out, "model path")->required();

  // build-db --------------------------------------------------------------
  auto* build = app.add_subcommand(
      "build-db", "predict a bulk design database with a trained model");
  std::string build_model, build_out, build_spec, build_space;
  int build_n = 9900;
  std::uint64_t build_seed = 11;
  build->add_option("--model", build_model, "model path")->required();
  build->add_option("--n", build_n, "number of LHS candidates")->required();
  build->add_option("--seed", build_seed, "sampling seed")->required();
  build->add_option("--spec", build_spec,
                    "requirement list stored as the feasibility partition");
  build->add_option("--space-file", build_space,
                    "design-space overrides (flat key=value)");
  build->add_option("--out", build_out, "database path")->required();

  // query ----------------------------------------------------------------
  auto* query = app.add_subcommand(
      "query", "retrieve the best designs for a specification");
  std::string query_db, query_spec, query_rank = "power_density";
  std::string query_format = "table";
  int query_topk = 6;
  query->add_option("--db", query_db, "database path")->required();
  query->add_option("--spec", query_spec,
                    "requirement list, e.g. \"pout>=30,w<=17,eta>=92,d2<=205\"")
      ->required();
  query->add_option("--top-k", query_topk, "designs to return");
  query->add_option("--rank-by", query_rank, "power_density | pout | eta");
  query->add_option("--format", query_format, "table | csv | lines")
      ->check(CLI::IsMember({"table", "csv", "lines"}));

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "re-evaluate database predictions with the oracle");
  std::string verify_db, verify_which = "front", verify_out;
  verify->add_option("--db", verify_db, "database path")->required();
  verify->add_option("--which", verify_which,
                     "selection: front or sample:<k>:<seed>");
  verify->add_option("--out", verify_out, "report path (stdout otherwise)");

  // report ---------------------------------------------------------------
  auto* report = app.add_subcommand(
      "report", "compare one database design against a reference design");
  std::string report_db, report_baseline, report_out;
  int report_id = 0;
  bool report_oracle = false, report_csv = false;
  report->add_option("--db", report_db, "database path")->required();
  report->add_option("--id", report_id, "record id of the candidate")
      ->required();
  report->add_option("--baseline-file", report_baseline,
                     "reference design (flat key=value); default built-in");
  report->add_flag("--oracle", report_oracle,
                   "re-evaluate the candidate with the oracle");
  report->add_flag("--csv", report_csv, "emit CSV instead of a table");
  report->add_option("--out", report_out, "report path (stdout otherwise)");

  // export-plot -----------------------------------------------------------
  auto* plot = app.add_subcommand(
      "export-plot", "dump a scatter-plot CSV of the whole database");
  std::string plot_db, plot_out;
  plot->add_option("--db", plot_db, "database path")->required();
  plot->add_option("--out", plot_out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e); // prints the message to stderr
    return 2;
  }

  CtxPtr ctx;
  {
    const std::string space =
        sample->parsed() ? sample_space : (build->parsed() ? build_space : "");
    wrsg_ctx* raw = nullptr;
    if (wrsg_ctx_create(constants_file.empty() ? nullptr
                                               : constants_file.c_str(),
                        space.empty() ? nullptr : space.c_str(),
                        &raw) != WRSG_OK)
      return runtime_error();
    ctx.reset(raw);
  }

  if (sample->parsed()) {
    wrsg_dataset* raw = nullptr;
    if (wrsg_dataset_generate(ctx.get(), sample_n, sample_seed, &raw) !=
        WRSG_OK)
      return runtime_error();
    DsPtr ds(raw);
    if (wrsg_dataset_save(ds.get(), sample_out.c_str()) != WRSG_OK)
      return runtime_error();
    std::cout << "dataset: " << wrsg_dataset_count(ds.get()) << " samples ("
              << wrsg_dataset_valid_count(ds.get()) << " valid) -> "
              << sample_out << "\n";
    return 0;
  }

  if (train->parsed()) {
    wrsg_dataset* dsraw = nullptr;
    if (wrsg_dataset_open(train_data.c_str(), &dsraw) != WRSG_OK)
      return runtime_error();
    DsPtr ds(dsraw);
    wrsg_model* mraw = nullptr;
    if (wrsg_model_train(ds.get(), train_tf, train_seed, &mraw) != WRSG_OK)
      return runtime_error();
    ModelPtr model(mraw);
    if (wrsg_model_save(model.get(), train_out.c_str()) != WRSG_OK)
      return runtime_error();
    char* summary = nullptr;
    if (wrsg_model_summary(model.get(), &summary) != WRSG_OK)
      return runtime_error();
    StringPtr summary_owner(summary);
    char* fp = nullptr;
    if (wrsg_model_fingerprint(model.get(), &fp) != WRSG_OK)
      return runtime_error();
    StringPtr fp_owner(fp);
    std::cout << summary << "fingerprint: " << fp << "\nmodel -> "
              << train_out << "\n";
    return 0;
  }

  if (build->parsed()) {
    wrsg_model* mraw = nullptr;
    if (wrsg_model_open(build_model.c_str(), &mraw) != WRSG_OK)
      return runtime_error();
    ModelPtr model(mraw);
    wrsg_db* dbraw = nullptr;
    if (wrsg_db_build(ctx.get(), model.get(), build_n, build_seed,
                      build_spec.empty() ? nullptr : build_spec.c_str(),
                      &dbraw) != WRSG_OK)
      return runtime_error();
    DbPtr db(dbraw);
    if (wrsg_db_save(db.get(), build_out.c_str()) != WRSG_OK)
      return runtime_error();
    std::cout << "database: " << wrsg_db_count(db.get()) << " records ("
              << wrsg_db_dropped(db.get()) << " invalid dropped) -> "
              << build_out << "\n";
    return 0;
  }

  if (query->parsed()) {
    wrsg_db* dbraw = nullptr;
    if (wrsg_db_open(query_db.c_str(), nullptr, &dbraw, nullptr) != WRSG_OK)
      return runtime_error();
    DbPtr db(dbraw);
    wrsg_ranking* rraw = nullptr;
    if (wrsg_db_query(db.get(), query_spec.c_str(), query_rank.c_str(),
                      query_topk, &rraw) != WRSG_OK)
      return runtime_error();
    RankPtr ranking(rraw);
    char* text = nullptr;
    if (wrsg_ranking_format(ranking.get(), query_format.c_str(), &text) !=
        WRSG_OK)
      return runtime_error();
    StringPtr text_owner(text);
    std::cout << text;
    return 0;
  }

  if (verify->parsed()) {
    wrsg_db* dbraw = nullptr;
    if (wrsg_db_open(verify_db.c_str(), nullptr, &dbraw, nullptr) != WRSG_OK)
      return runtime_error();
    DbPtr db(dbraw);
    char* text = nullptr;
    double max_pout = 0, max_w = 0, max_eta = 0;
    if (wrsg_db_verify(db.get(), ctx.get(), verify_which.c_str(), &text,
                       &max_pout, &max_w, &max_eta) != WRSG_OK)
      return runtime_error();
    StringPtr text_owner(text);
    if (!verify_out.empty()) {
      if (!write_text(verify_out, text)) return 1;
      std::printf("verification (%s): max_rel pout_kva=%.6g w_kg=%.6g "
                  "eta_pct=%.6g -> %s\n",
                  verify_which.c_str(), max_pout, max_w, max_eta,
                  verify_out.c_str());
    } else {
      std::cout << text;
    }
    return 0;
  }

  if (report->parsed()) {
    wrsg_db* dbraw = nullptr;
    if (wrsg_db_open(report_db.c_str(), nullptr, &dbraw, nullptr) != WRSG_OK)
      return runtime_error();
    DbPtr db(dbraw);
    char* text = nullptr;
    if (wrsg_db_report(db.get(), ctx.get(), report_id,
                       report_baseline.empty() ? nullptr
                                               : report_baseline.c_str(),
                       report_oracle ? 1 : 0, report_csv ? 1 : 0,
                       &text) != WRSG_OK)
      return runtime_error();
    StringPtr text_owner(text);
    return emit(report_out, text);
  }

  if (plot->parsed()) {
    wrsg_db* dbraw = nullptr;
    if (wrsg_db_open(plot_db.c_str(), nullptr, &dbraw, nullptr) != WRSG_OK)
      return runtime_error();
    DbPtr db(dbraw);
    char* csv = nullptr;
    if (wrsg_db_export_plot(db.get(), &csv) != WRSG_OK)
      return runtime_error();
    StringPtr csv_owner(csv);
    if (!write_text(plot_out, csv)) return 1;
    std::cout << "plot data -> " << plot_out << "\n";
    return 0;
  }

  return 2; // unreachable: a subcommand is required
}
