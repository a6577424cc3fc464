#include "core/expert_db.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/geomjson.h"
#include "core/jsonio.h"
#include "core/rng.h"

namespace wrsg {

namespace {

constexpr std::uint64_t kSaltVerify = 0xF1;

// Canonical quantity names plus the short aliases accepted in spec strings.
const char* canonical_quantity(const std::string& name) {
  if (name == "pout" || name == "pout_kva") return "pout_kva";
  if (name == "w" || name == "w_kg") return "w_kg";
  if (name == "eta" || name == "eta_pct") return "eta_pct";
  if (name == "d2") return "d2";
  if (name == "n") return "n";
  return nullptr;
}

double resolve_quantity(const DesignRecord& r, const std::string& q,
                        const Boundaries& b) {
  if (q == "pout_kva") return r.pout_kva;
  if (q == "w_kg") return r.w_kg;
  if (q == "eta_pct") return r.eta_pct;
  if (q == "d2") return r.x.d2;
  if (q == "n") return b.n_rated;
  raise("unknown_quantity", "no such constraint quantity: " + q);
}

bool op_holds(double lhs, ConstraintOp op, double rhs) {
  switch (op) {
    case ConstraintOp::GE: return lhs >= rhs;
    case ConstraintOp::LE: return lhs <= rhs;
    case ConstraintOp::GT: return lhs > rhs;
    default: return lhs < rhs;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

} // namespace

const char* op_symbol(ConstraintOp op) {
  switch (op) {
    case ConstraintOp::GE: return ">=";
    case ConstraintOp::LE: return "<=";
    case ConstraintOp::GT: return ">";
    default: return "<";
  }
}

ExpertDatabase build_database(const MopModel& mop, const DesignSpace& space,
                              int n, std::uint64_t seed, const Boundaries& b,
                              const OracleConstants& c) {
  for (std::size_t t = 0; t < kTargets.size(); ++t)
    if (mop.targets[t].winner.target != kTargets[t])
      raise("model_mismatch",
            std::string("model does not cover target ") + kTargets[t]);

  ExpertDatabase db;
  db.seed = seed;
  db.space = space;
  db.boundaries = b;
  db.model_fingerprint = model_fingerprint(mop);

  const auto pts = sample_lhs(space, n, seed);
  for (const auto& x : pts) {
    DesignRecord r;
    r.x = x;
    try {
      r.m = derive_dependent(x, b);
    } catch (const Error&) {
      ++db.dropped_invalid;
      continue;
    }
    if (!validate(x, r.m, b, c).valid()) {
      ++db.dropped_invalid;
      continue;
    }
    r.id = static_cast<int>(db.records.size());
    const std::array<double, 6> raw = {x.d1, x.d2,  x.l,
                                       x.pbh, x.pbw, static_cast<double>(x.na)};
    r.pout_kva = mop.targets[0].winner.predict(raw);
    r.w_kg = mop.targets[1].winner.predict(raw);
    r.eta_pct = mop.targets[2].winner.predict(raw);
    if (!std::isfinite(r.pout_kva) || !std::isfinite(r.w_kg) ||
        !std::isfinite(r.eta_pct))
      raise("oracle_numeric", "non-finite surrogate prediction");
    db.records.push_back(r);
  }
  mark_pareto_front(db);
  return db;
}

bool satisfies(const DesignRecord& r, const std::vector<Constraint>& cs,
               const Boundaries& b) {
  for (const auto& con : cs)
    if (!op_holds(resolve_quantity(r, con.quantity, b), con.op, con.value))
      return false;
  return true;
}

std::size_t apply_constraints(ExpertDatabase& db,
                              const std::vector<Constraint>& cs) {
  for (const auto& con : cs) {
    if (!canonical_quantity(con.quantity) ||
        canonical_quantity(con.quantity) != con.quantity)
      raise("unknown_quantity", "no such constraint quantity: " + con.quantity);
    if (!std::isfinite(con.value))
      raise("invalid_argument", "constraint value must be finite");
  }
  db.constraints = cs;
  std::size_t feasible = 0;
  for (auto& r : db.records) {
    r.feasible = satisfies(r, cs, db.boundaries);
    feasible += r.feasible ? 1 : 0;
  }
  mark_pareto_front(db);
  return feasible;
}

std::size_t mark_pareto_front(ExpertDatabase& db, std::string* warning) {
  for (auto& r : db.records) r.on_front = false;
  std::vector<DesignRecord*> feas;
  for (auto& r : db.records)
    if (r.feasible) feas.push_back(&r);
  if (feas.empty()) {
    if (warning) *warning = "no_feasible_records";
    return 0;
  }
  // Sweep in ascending weight.  Within an equal-weight group only the
  // maximum-power members survive (ties on both objectives all kept); a
  // group survives at all only if it strictly beats the best power among
  // strictly lighter records.
  std::sort(feas.begin(), feas.end(),
            [](const DesignRecord* a, const DesignRecord* b) {
              return a->w_kg != b->w_kg ? a->w_kg < b->w_kg
                                        : a->pout_kva > b->pout_kva;
            });
  std::size_t count = 0;
  double best_lighter = 0.0;
  bool have_lighter = false;
  std::size_t i = 0;
  while (i < feas.size()) {
    std::size_t j = i;
    double gmax = feas[i]->pout_kva;
    while (j < feas.size() && feas[j]->w_kg == feas[i]->w_kg) {
      gmax = std::max(gmax, feas[j]->pout_kva);
      ++j;
    }
    if (!have_lighter || gmax > best_lighter) {
      for (std::size_t k = i; k < j; ++k)
        if (feas[k]->pout_kva == gmax) {
          feas[k]->on_front = true;
          ++count;
        }
    }
    best_lighter = have_lighter ? std::max(best_lighter, gmax) : gmax;
    have_lighter = true;
    i = j;
  }
  return count;
}

VerificationReport verify_with_oracle(const ExpertDatabase& db,
                                      const std::string& which,
                                      const Boundaries& b,
                                      const OracleConstants& c) {
  std::vector<int> selected;
  if (which == "front") {
    for (const auto& r : db.records)
      if (r.on_front) selected.push_back(r.id);
  } else if (which.rfind("sample:", 0) == 0) {
    const std::string rest = which.substr(7);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
      raise("invalid_argument",
            "selection must be 'front' or 'sample:<k>:<seed>'");
    int k = 0;
    std::uint64_t seed = 0;
    try {
      k = std::stoi(rest.substr(0, colon));
      seed = std::stoull(rest.substr(colon + 1));
    } catch (const std::exception&) {
      raise("invalid_argument",
            "selection must be 'front' or 'sample:<k>:<seed>'");
    }
    if (k < 0) raise("invalid_argument", "sample count must be >= 0");
    const std::size_t nrec = db.records.size();
    const std::size_t take = std::min<std::size_t>(
        static_cast<std::size_t>(k), nrec);
    if (take > 0) {
      Rng rng(mix_seed(seed, kSaltVerify));
      const auto perm = permutation(static_cast<std::uint32_t>(nrec), rng);
      for (std::size_t i = 0; i < take; ++i)
        selected.push_back(db.records[perm[i]].id);
      std::sort(selected.begin(), selected.end());
    }
  } else {
    raise("invalid_argument",
          "selection must be 'front' or 'sample:<k>:<seed>'");
  }

  VerificationReport rep;
  std::array<double, 3> sum{};
  for (int id : selected) {
    const auto& r = db.records[static_cast<std::size_t>(id)];
    VerificationRow row;
    row.id = id;
    row.predicted = {r.pout_kva, r.w_kg, r.eta_pct};
    try {
      const Performance p = evaluate_performance(r.x, r.m, b, c);
      row.oracle = {p.pout_kva, p.w_kg, p.eta_pct};
      for (std::size_t q = 0; q < 3; ++q)
        row.rel_err[q] =
            std::abs(row.predicted[q] - row.oracle[q]) / std::abs(row.oracle[q]);
      ++rep.evaluated;
      for (std::size_t q = 0; q < 3; ++q) {
        rep.max_rel[q] = std::max(rep.max_rel[q], row.rel_err[q]);
        sum[q] += row.rel_err[q];
      }
    } catch (const Error& e) {
      row.oracle_ok = false;
      row.fail_id = e.id();
      ++rep.failed;
    }
    rep.rows.push_back(std::move(row));
  }
  if (rep.evaluated > 0)
    for (std::size_t q = 0; q < 3; ++q)
      rep.mean_rel[q] = sum[q] / static_cast<double>(rep.evaluated);
  return rep;
}

std::vector<Constraint> parse_spec(const std::string& text) {
  std::vector<Constraint> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        trim(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                         : comma - pos));
    pos = comma == std::string::npos ? text.size() + 1 : comma + 1;
    if (item.empty()) {
      if (comma == std::string::npos && out.empty() && trim(text).empty())
        break; // wholly empty spec: no constraints
      raise("spec_parse", "empty clause in spec string");
    }
    const std::size_t oppos = item.find_first_of("<>");
    if (oppos == std::string::npos)
      raise("spec_parse", "clause lacks a comparison: " + item);
    Constraint con;
    std::size_t vstart = oppos + 1;
    if (vstart < item.size() && item[vstart] == '=') {
      con.op = item[oppos] == '>' ? ConstraintOp::GE : ConstraintOp::LE;
      ++vstart;
    } else {
      con.op = item[oppos] == '>' ? ConstraintOp::GT : ConstraintOp::LT;
    }
    const std::string name = trim(item.substr(0, oppos));
    if (name.empty())
      raise("spec_parse", "clause lacks a quantity name: " + item);
    const char* canon = canonical_quantity(name);
    if (!canon) raise("unknown_quantity", "no such constraint quantity: " + name);
    con.quantity = canon;
    const std::string value = trim(item.substr(vstart));
    std::size_t used = 0;
    try {
      con.value = std::stod(value, &used);
    } catch (const std::exception&) {
      raise("spec_parse", "clause value is not a number: " + item);
    }
    if (used != value.size() || !std::isfinite(con.value))
      raise("spec_parse", "clause value is not a finite number: " + item);
    out.push_back(std::move(con));
    if (comma == std::string::npos) break;
  }
  return out;
}

std::string format_spec(const std::vector<Constraint>& cs) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ',';
    out += cs[i].quantity;
    out += op_symbol(cs[i].op);
    std::snprintf(buf, sizeof buf, "%.17g", cs[i].value);
    out += buf;
  }
  return out;
}

void save_database(const ExpertDatabase& db, const std::string& path) {
  std::string out;
  {
    JsonWriter w;
    w.obj_begin();
    w.key("seed").integer(static_cast<long long>(db.seed));
    detail::write_space(w, db.space);
    w.key("model_fingerprint").str(db.model_fingerprint);
    w.key("constraints").arr_begin();
    for (const auto& con : db.constraints) {
      w.obj_begin();
      w.key("quantity").str(con.quantity);
      w.key("op").str(op_symbol(con.op));
      w.key("value").num(con.value);
      w.obj_end();
    }
    w.arr_end();
    w.key("boundaries").obj_begin();
    w.key("v_rated").num(db.boundaries.v_rated);
    w.key("n_rated").num(db.boundaries.n_rated);
    w.key("f_rated").num(db.boundaries.f_rated);
    w.key("a_max").num(db.boundaries.a_max);
    w.key("af_max").num(db.boundaries.af_max);
    w.key("n_max").num(db.boundaries.n_max);
    w.obj_end();
    w.key("dropped_invalid").integer(db.dropped_invalid);
    w.obj_end();
    out += w.text();
    out += '\n';
  }
  for (const auto& r : db.records) {
    JsonWriter w;
    w.obj_begin();
    w.key("id").integer(r.id);
    detail::write_x(w, r.x);
    detail::write_m(w, r.m);
    w.key("p").obj_begin();
    w.key("pout_kva").num(r.pout_kva).key("w_kg").num(r.w_kg);
    w.key("eta_pct").num(r.eta_pct);
    w.obj_end();
    w.key("feasible").boolean(r.feasible);
    w.key("on_front").boolean(r.on_front);
    w.obj_end();
    out += w.text();
    out += '\n';
  }
  write_file_atomic(path, out);
}

ExpertDatabase load_database(const std::string& path,
                             const std::string& expected_fingerprint,
                             std::string* warning) {
  const auto lines = split_lines(read_file(path));
  if (lines.empty()) raise("corrupt_database", "empty database file: " + path);
  ExpertDatabase db;
  try {
    const auto header = parse_json_line(lines[0], "corrupt_database");
    db.seed = header.at("seed").get<std::uint64_t>();
    db.space = detail::read_space(header.at("space"));
    db.model_fingerprint = header.at("model_fingerprint").get<std::string>();
    for (const auto& cj : header.at("constraints")) {
      Constraint con;
      con.quantity = cj.at("quantity").get<std::string>();
      const std::string op = cj.at("op").get<std::string>();
      if (op == ">=") con.op = ConstraintOp::GE;
      else if (op == "<=") con.op = ConstraintOp::LE;
      else if (op == ">") con.op = ConstraintOp::GT;
      else if (op == "<") con.op = ConstraintOp::LT;
      else raise("corrupt_database", "unknown constraint operator: " + op);
      con.value = cj.at("value").get<double>();
      db.constraints.push_back(std::move(con));
    }
    const auto& bj = header.at("boundaries");
    db.boundaries.v_rated = bj.at("v_rated").get<double>();
    db.boundaries.n_rated = bj.at("n_rated").get<double>();
    db.boundaries.f_rated = bj.at("f_rated").get<double>();
    db.boundaries.a_max = bj.at("a_max").get<double>();
    db.boundaries.af_max = bj.at("af_max").get<double>();
    db.boundaries.n_max = bj.at("n_max").get<double>();
    db.dropped_invalid = header.at("dropped_invalid").get<long long>();
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto j = parse_json_line(lines[i], "corrupt_database");
      DesignRecord r;
      r.id = j.at("id").get<int>();
      r.x = detail::read_x(j.at("x"));
      r.m = detail::read_m(j.at("m"));
      const auto& p = j.at("p");
      r.pout_kva = p.at("pout_kva").get<double>();
      r.w_kg = p.at("w_kg").get<double>();
      r.eta_pct = p.at("eta_pct").get<double>();
      r.feasible = j.at("feasible").get<bool>();
      r.on_front = j.at("on_front").get<bool>();
      if (r.on_front && !r.feasible)
        raise("corrupt_database", "front member flagged infeasible");
      if (r.id != static_cast<int>(db.records.size()))
        raise("corrupt_database", "record ids are not contiguous");
      db.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    raise("corrupt_database", std::string("database field error: ") + e.what());
  }
  if (!expected_fingerprint.empty() &&
      expected_fingerprint != db.model_fingerprint && warning)
    *warning = "stale_model";
  return db;
}

std::string export_plot_csv(const ExpertDatabase& db) {
  std::string out = "id,w_kg,pout_kva,eta_pct,feasible,on_front\n";
  char buf[96];
  for (const auto& r : db.records) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d,%d\n", r.id,
                  r.w_kg, r.pout_kva, r.eta_pct, r.feasible ? 1 : 0,
                  r.on_front ? 1 : 0);
    out += buf;
  }
  return out;
}

} // namespace wrsg
