// Acceptance gate for the WRSG preliminary-design toolkit.  Runs the ten
// release criteria end to end against the real pipeline and prints one
// PASS/FAIL line per criterion with the measured numbers.  The process
// exits non-zero if any criterion fails; a failing line plus its measured
// values is the canonical record of an unmet requirement.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <unistd.h>
#include <vector>

#include "core/expert_db.h"
#include "core/guide.h"
#include "core/jsonio.h"
#include "core/machine.h"
#include "core/mop.h"
#include "core/rng.h"
#include "core/sampling.h"

using namespace wrsg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string strf(const char* spec, ...) {
  char buf[512];
  va_list args;
  va_start(args, spec);
  std::vsnprintf(buf, sizeof buf, spec, args);
  va_end(args);
  return buf;
}

struct Outcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Outcome> g_results;

void record(const std::string& name, bool pass, const std::string& detail) {
  g_results.push_back({name, pass, detail});
  std::printf("[%2zu/10] %s %s: %s\n", g_results.size(),
              pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

void record_error(const std::string& name, const std::string& what) {
  record(name, false, "aborted by error: " + what);
}

std::string temp_path(const char* stem) {
  const char* dir = std::getenv("TMPDIR");
  std::string base = dir ? dir : "/tmp";
  return base + "/" + stem + "." + std::to_string(::getpid());
}

// Shared pipeline state, built once in criterion order.
struct Pipeline {
  Dataset dataset;              // n=400, seed 7
  MopModel mop;                 // split 0.25, seed 7
  bool mop_ready = false;
  ExpertDatabase db;            // n=9900, seed 11
  bool db_ready = false;
  double build_seconds = 0;
};

const Boundaries kB;
const OracleConstants kC;

// ---- criterion 1: derived-geometry fixtures -------------------------------

void criterion_geometry() {
  const char* name = "derived-geometry fixtures";
  try {
    const GeometryVars x{163.40, 204.95, 70.04, 22.12, 22.36, 7};
    const auto t0 = Clock::now();
    const auto m = derive_dependent(x, kB);
    const auto p = evaluate_performance(x, m, kB, kC);
    const double ms = seconds_since(t0) * 1e3;

    const bool ints_ok = m.np == 4 && m.ns == 42 && m.nf == 37;
    const std::array<std::pair<double, double>, 13> doubles = {{
        {m.drc, 22.02},
        {m.ws, 6.2294475381050232},
        {m.ds, 5.1937499999999979},
        {m.ptw, 6.6360000000000001},
        {m.ptd, 2.2360000000000002},
        {m.psr, 129.59999999999999},
        {m.pso, 46.283999999999999},
        {m.dsh, 78.746987951807228},
        {m.wac, 4.529447538105023},
        {m.hac, 1.7968749999999989},
        {p.pout_kva, 18.421108357239163},
        {p.w_kg, 16.340025468760619},
        {p.eta_pct, 94.465070964333606},
    }};
    double max_abs = 0;
    for (const auto& [got, want] : doubles)
      max_abs = std::max(max_abs, std::abs(got - want));

    const bool pass = ints_ok && max_abs <= 1e-3 && ms < 1.0;
    record(name, pass,
           strf("max |delta| %.3g (tol 1e-3), integer counts %s, %.4f ms "
                "(limit 1 ms)",
                max_abs, ints_ok ? "exact" : "WRONG", ms));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 2: surrogate training quality -------------------------------

void criterion_training(Pipeline& pl) {
  const char* name = "surrogate training quality";
  try {
    const auto t0 = Clock::now();
    pl.dataset = generate_dataset(default_space(), 400, 7, kC, kB);
    pl.mop = train_mop(pl.dataset, SplitSpec{0.25, 7});
    pl.mop_ready = true;
    const double secs = seconds_since(t0);

    const double c0 = pl.mop.targets[0].cop;
    const double c1 = pl.mop.targets[1].cop;
    const double c2 = pl.mop.targets[2].cop;
    const bool pass =
        c0 >= 0.90 && c1 >= 0.90 && c2 >= 0.90 && secs <= 300.0;
    record(name, pass,
           strf("cop pout_kva=%.6f w_kg=%.6f eta_pct=%.6f (all >= 0.90), "
                "%.2f s (limit 300 s)",
                c0, c1, c2, secs));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 3: kriging interpolation ------------------------------------

double kriging_interp_err(const std::vector<std::vector<double>>& X,
                          const std::vector<double>& y) {
  std::vector<int> vars(X[0].size());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<int>(i);
  const auto mdl =
      fit_metamodel(ModelKind::KRIGING, 0, 0, "pout_kva", vars, X, y);
  double worst = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double rel = std::abs(predict_subset(mdl, X[i]) - y[i]) /
                       std::max(1.0, std::abs(y[i]));
    worst = std::max(worst, rel);
  }
  return worst;
}

void criterion_kriging(const Pipeline& pl) {
  const char* name = "kriging interpolation";
  try {
    double worst = 0;

    // smooth synthetic data in one to six dimensions
    Rng rng(909);
    for (int dims = 1; dims <= 6; ++dims) {
      const int n = 12 + 8 * dims;
      std::vector<std::vector<double>> X(n, std::vector<double>(dims));
      std::vector<double> y(n);
      for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int d = 0; d < dims; ++d) {
          X[i][d] = unit_double(rng);
          s += X[i][d];
        }
        y[i] = std::sin(2.0 * s) + 0.25 * s * s + 3.0;
      }
      worst = std::max(worst, kriging_interp_err(X, y));
    }

    // the real training split, all six variables, every target
    if (!pl.mop_ready) throw Error("internal", "training stage unavailable");
    Dataset train, test;
    split_dataset(pl.dataset, SplitSpec{0.25, 7}, &train, &test);
    std::vector<std::vector<double>> X;
    for (const auto& s : train.samples)
      X.push_back({s.x.d1, s.x.d2, s.x.l, s.x.pbh, s.x.pbw,
                   static_cast<double>(s.x.na)});
    for (int t = 0; t < 3; ++t) {
      std::vector<double> y;
      for (const auto& s : train.samples)
        y.push_back(t == 0 ? s.p.pout_kva : t == 1 ? s.p.w_kg : s.p.eta_pct);
      worst = std::max(worst, kriging_interp_err(X, y));
    }

    record(name, worst <= 1e-6,
           strf("max relative training-point misfit %.3g over 9 fits "
                "(tol 1e-6)",
                worst));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 4: polynomial least-squares exactness ------------------------

void criterion_pls() {
  const char* name = "polynomial least-squares exactness";
  try {
    Rng rng(707);
    auto rows = [&rng](int n, int k) {
      std::vector<std::vector<double>> X(n, std::vector<double>(k));
      for (auto& r : X)
        for (auto& v : r) v = unit_double(rng) * 2.0 - 1.0;
      return X;
    };

    double worst = 0;

    const auto X1 = rows(50, 3);
    std::vector<double> y1;
    for (const auto& r : X1) y1.push_back(4.0 * r[0] - r[1] + 0.5 * r[2] + 2.0);
    const auto m1 =
        fit_metamodel(ModelKind::PLS1, 1, 0, "pout_kva", {0, 1, 2}, X1, y1);
    for (const auto& q : rows(25, 3)) {
      const double truth = 4.0 * q[0] - q[1] + 0.5 * q[2] + 2.0;
      worst = std::max(worst, std::abs(predict_subset(m1, q) - truth) /
                                  std::max(1.0, std::abs(truth)));
    }

    const auto X2 = rows(60, 2);
    auto f2 = [](const std::vector<double>& r) {
      return 1.0 + r[0] - 2.0 * r[1] + 0.5 * r[0] * r[0] - r[0] * r[1] +
             0.25 * r[1] * r[1];
    };
    std::vector<double> y2;
    for (const auto& r : X2) y2.push_back(f2(r));
    const auto m2 =
        fit_metamodel(ModelKind::PLS2, 2, 0, "w_kg", {0, 1}, X2, y2);
    for (const auto& q : rows(25, 2))
      worst = std::max(worst, std::abs(predict_subset(m2, q) - f2(q)) /
                                  std::max(1.0, std::abs(f2(q))));

    record(name, worst <= 1e-9,
           strf("max held-out relative error %.3g on scripted "
                "linear/quadratic data (tol 1e-9)",
                worst));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 5: prognosis-coefficient properties --------------------------

void criterion_cop() {
  const char* name = "prognosis-coefficient properties";
  try {
    Rng rng(606);
    double lo = 1e300, hi = -1e300;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> a(16), b(16);
      for (int i = 0; i < 16; ++i) {
        a[i] = unit_double(rng) * 20.0 - 10.0;
        b[i] = unit_double(rng) * 20.0 - 10.0;
      }
      const double v = cop_statistic(a, b).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const bool range_ok = lo >= 0.0 && hi <= 1.0;

    std::vector<double> target(16), flat(16, 4.25);
    for (int i = 0; i < 16; ++i) target[i] = unit_double(rng) * 5.0;
    const auto degen = cop_statistic(target, flat);
    const bool flat_ok =
        degen.value == 0.0 && degen.warning == "constant_predictor";

    record(name, range_ok && flat_ok,
           strf("1000 random pairs in [%.3g, %.3g] (need [0,1]); constant "
                "predictor -> %.1f with warning '%s'",
                lo, hi, degen.value, degen.warning.c_str()));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 6: pareto front correctness ----------------------------------

void criterion_pareto() {
  const char* name = "pareto front correctness";
  try {
    Rng rng(505);
    ExpertDatabase db;
    db.space = default_space();
    for (int i = 0; i < 10000; ++i) {
      DesignRecord r;
      r.id = i;
      r.x = GeometryVars{150, 200, 60, 25, 25, 6};
      // quantized values force ties on both objectives
      r.pout_kva = static_cast<double>(bounded(rng, 400)) / 8.0;
      r.w_kg = 1.0 + static_cast<double>(bounded(rng, 300)) / 10.0;
      r.eta_pct = 90.0;
      db.records.push_back(r);
    }

    const auto t0 = Clock::now();
    const std::size_t front = mark_pareto_front(db);
    const double secs = seconds_since(t0);

    std::size_t mismatches = 0;
    for (const auto& r : db.records) {
      bool dominated = false;
      for (const auto& q : db.records) {
        if (q.pout_kva >= r.pout_kva && q.w_kg <= r.w_kg &&
            (q.pout_kva > r.pout_kva || q.w_kg < r.w_kg)) {
          dominated = true;
          break;
        }
      }
      mismatches += (r.on_front == !dominated) ? 0 : 1;
    }

    record(name, mismatches == 0 && secs <= 10.0,
           strf("10000 records, front size %zu, %zu mismatches vs brute "
                "force, %.3f s (limit 10 s)",
                front, mismatches, secs));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 7: end-to-end retrieval --------------------------------------

void criterion_retrieval(Pipeline& pl) {
  const char* name = "end-to-end retrieval";
  try {
    if (!pl.mop_ready) throw Error("internal", "training stage unavailable");

    const auto t0 = Clock::now();
    pl.db = build_database(pl.mop, default_space(), 9900, 11, kB, kC);
    pl.build_seconds = seconds_since(t0);
    pl.db_ready = true;

    SpecQuery q;
    q.constraints = parse_spec("pout>=30,w<=17,eta>=92,d2<=205");
    q.top_k = 6;
    const auto t1 = Clock::now();
    const auto ranking = query(pl.db, q);
    const double query_secs = seconds_since(t1);

    const bool pass = !ranking.entries.empty() && query_secs < 1.0 &&
                      pl.build_seconds <= 600.0;
    record(name, pass,
           strf("%zu designs match \"pout>=30,w<=17,eta>=92,d2<=205\" "
                "(need >= 1) among %zu records; build %.2f s (limit 600), "
                "query %.4f s (limit 1)",
                ranking.entries.size(), pl.db.records.size(),
                pl.build_seconds, query_secs));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 8: front fidelity against the oracle -------------------------

void criterion_front_fidelity(const Pipeline& pl) {
  const char* name = "front fidelity against the oracle";
  try {
    if (!pl.db_ready) throw Error("internal", "database stage unavailable");
    const auto rep = verify_with_oracle(pl.db, "front", kB, kC);
    const bool pass = rep.failed == 0 && rep.evaluated > 0 &&
                      rep.max_rel[0] <= 0.05 && rep.max_rel[1] <= 0.05;
    record(name, pass,
           strf("front size %zu: max relative error pout_kva=%.4f "
                "w_kg=%.4f (tol 0.05 each), %zu oracle failures",
                rep.rows.size(), rep.max_rel[0], rep.max_rel[1], rep.failed));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 9: determinism ------------------------------------------------

void criterion_determinism(const Pipeline& pl) {
  const char* name = "determinism";
  try {
    if (!pl.mop_ready) throw Error("internal", "training stage unavailable");

    const std::string p1 = temp_path("wrsg_acc_a");
    const std::string p2 = temp_path("wrsg_acc_b");

    // dataset bytes
    save_dataset(pl.dataset, p1);
    save_dataset(generate_dataset(default_space(), 400, 7, kC, kB), p2);
    const bool ds_same = read_file(p1) == read_file(p2);

    // model bytes
    const bool model_same =
        serialize_model(train_mop(pl.dataset, SplitSpec{0.25, 7})) ==
        serialize_model(pl.mop);

    // database bytes
    save_database(build_database(pl.mop, default_space(), 400, 11, kB, kC),
                  p1);
    save_database(build_database(pl.mop, default_space(), 400, 11, kB, kC),
                  p2);
    const bool db_same = read_file(p1) == read_file(p2);
    std::remove(p1.c_str());
    std::remove(p2.c_str());

    // Latin-hypercube stratification across seeds
    const auto space = default_space();
    const int n = 50;
    int violations = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto pts = sample_lhs(space, n, seed);
      for (int dim = 0; dim < 5; ++dim) {
        const auto& range = space.continuous(dim);
        const double width = (range.hi - range.lo) / n;
        std::set<int> bins;
        for (const auto& p : pts) {
          const double v = dim == 0   ? p.d1
                           : dim == 1 ? p.d2
                           : dim == 2 ? p.l
                           : dim == 3 ? p.pbh
                                      : p.pbw;
          bins.insert(static_cast<int>((v - range.lo) / width));
        }
        if (static_cast<int>(bins.size()) != n) ++violations;
      }
    }

    record(name, ds_same && model_same && db_same && violations == 0,
           strf("regenerated dataset %s, model %s, database %s; %d "
                "stratification violations over 100 seeds",
                ds_same ? "byte-identical" : "DIFFERS",
                model_same ? "byte-identical" : "DIFFERS",
                db_same ? "byte-identical" : "DIFFERS", violations));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

// ---- criterion 10: oracle sanity ----------------------------------------------

void criterion_oracle_sanity() {
  const char* name = "oracle sanity";
  try {
    Rng rng(404);
    auto random_valid = [&rng]() {
      for (;;) {
        GeometryVars x;
        x.d1 = 100.0 + unit_double(rng) * 100.0;
        x.d2 = 120.0 + unit_double(rng) * 130.0;
        x.l = 40.0 + unit_double(rng) * 35.0; // leaves room to double later
        x.pbh = 20.0 + unit_double(rng) * 20.0;
        x.pbw = 20.0 + unit_double(rng) * 20.0;
        x.na = 5 + static_cast<int>(bounded(rng, 3));
        const auto m = derive_dependent(x, kB);
        if (validate(x, m, kB, kC).valid()) return x;
      }
    };

    double worst_linearity = 0;
    bool eta_ok = true;
    for (int probe = 0; probe < 100; ++probe) {
      const auto x = random_valid();
      const auto m = derive_dependent(x, kB);
      const auto p = evaluate_performance(x, m, kB, kC);
      eta_ok = eta_ok && p.eta_pct > 0.0 && p.eta_pct < 100.0;

      GeometryVars x2 = x;
      x2.l = 2.0 * x.l;
      const auto m2 = derive_dependent(x2, kB);
      const auto p2 = evaluate_performance(x2, m2, kB, kC);
      worst_linearity =
          std::max(worst_linearity,
                   std::abs(p2.pout_kva - 2.0 * p.pout_kva) /
                       std::abs(2.0 * p.pout_kva));
    }

    // strict weight growth along the outer diameter
    GeometryVars x{163.40, 0, 70.04, 22.12, 22.36, 7};
    bool weight_monotone = true;
    double prev_w = -1;
    for (int k = 0; k < 100; ++k) {
      x.d2 = 190.0 + 0.6 * k;
      const auto m = derive_dependent(x, kB);
      if (!validate(x, m, kB, kC).valid()) {
        weight_monotone = false;
        break;
      }
      const double w = evaluate_performance(x, m, kB, kC).w_kg;
      if (w <= prev_w) {
        weight_monotone = false;
        break;
      }
      prev_w = w;
    }

    record(name,
           worst_linearity <= 1e-12 && eta_ok && weight_monotone,
           strf("power-vs-length linearity max error %.3g (tol 1e-12); "
                "efficiency in (0,100) %s; weight strictly increasing over "
                "100 outer-diameter steps %s",
                worst_linearity, eta_ok ? "yes" : "NO",
                weight_monotone ? "yes" : "NO"));
  } catch (const std::exception& e) {
    record_error(name, e.what());
  }
}

} // namespace

int main() {
  std::printf("WRSG acceptance gate (library %s)\n", "1.0.0");

  Pipeline pl;
  criterion_geometry();
  criterion_training(pl);
  criterion_kriging(pl);
  criterion_pls();
  criterion_cop();
  criterion_pareto();
  criterion_retrieval(pl);
  criterion_front_fidelity(pl);
  criterion_determinism(pl);
  criterion_oracle_sanity();

  std::size_t failed = 0;
  for (const auto& r : g_results) failed += r.pass ? 0 : 1;
  std::printf("\nacceptance: %zu/10 passed, %zu failed\n",
              g_results.size() - failed, failed);
  if (failed) {
    std::printf("unmet criteria:\n");
    for (const auto& r : g_results)
      if (!r.pass) std::printf("  - %s: %s\n", r.name.c_str(), r.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
