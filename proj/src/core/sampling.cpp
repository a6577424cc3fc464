#include "core/sampling.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>

#include "core/geomjson.h"
#include "core/jsonio.h"
#include "core/rng.h"

namespace wrsg {

namespace {

// Stream salts: one independent stream per continuous dimension, one for
// the discrete turns draw, one for splitting.  Pinned — changing them
// changes every generated file.
constexpr std::uint64_t kSaltNa = 5;
constexpr std::uint64_t kSaltSplit = 0xA5;

std::string created_stamp() {
  // Reproducibility contract: same seeds => byte-identical files, so the
  // timestamp honours SOURCE_DATE_EPOCH and otherwise pins to epoch zero.
  long long epoch = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"))
    epoch = std::atoll(env);
  std::time_t t = static_cast<std::time_t>(epoch);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void set_coord(GeometryVars& x, int dim, double v) {
  switch (dim) {
    case 0: x.d1 = v; break;
    case 1: x.d2 = v; break;
    case 2: x.l = v; break;
    case 3: x.pbh = v; break;
    default: x.pbw = v; break;
  }
}

} // namespace

const VarRange& DesignSpace::continuous(int dim) const {
  switch (dim) {
    case 0: return d1;
    case 1: return d2;
    case 2: return l;
    case 3: return pbh;
    default: return pbw;
  }
}

DesignSpace default_space() { return DesignSpace{}; }

int Dataset::valid_count() const {
  int n = 0;
  for (const auto& s : samples) n += s.valid ? 1 : 0;
  return n;
}

std::vector<GeometryVars> sample_lhs(const DesignSpace& space, int n,
                                     std::uint64_t seed) {
  if (n < 2) raise("invalid_argument", "sample count must be >= 2");
  std::vector<GeometryVars> pts(static_cast<std::size_t>(n));
  // One independent stream per dimension: the draw order of other
  // dimensions can never perturb a dimension's marginal.
  for (int dim = 0; dim < 5; ++dim) {
    const auto& r = space.continuous(dim);
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(dim)));
    const auto perm = permutation(static_cast<std::uint32_t>(n), rng);
    const double width = (r.hi - r.lo) / n;
    for (int i = 0; i < n; ++i) {
      const double u = unit_double(rng);
      set_coord(pts[static_cast<std::size_t>(i)], dim,
                r.lo + (perm[static_cast<std::size_t>(i)] + u) * width);
    }
  }
  Rng rng(mix_seed(seed, kSaltNa));
  for (int i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i)].na =
        space.na_set[bounded(rng, space.na_set.size())];
  return pts;
}

Dataset generate_dataset(const DesignSpace& space, int n, std::uint64_t seed,
                         const OracleConstants& c, const Boundaries& b) {
  Dataset ds;
  ds.seed = seed;
  ds.space = space;
  ds.created = created_stamp();
  const auto pts = sample_lhs(space, n, seed);
  ds.samples.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Sample& s = ds.samples[i];
    s.id = static_cast<int>(i);
    s.x = pts[i];
    try {
      s.m = derive_dependent(s.x, b);
    } catch (const Error& e) {
      // Non-integral slot/pole counts are a rejection, not a failure: the
      // sample is retained as invalid with the rule id as reason.
      s.reasons.push_back({e.id(), e.what()});
      s.valid = false;
      continue;
    }
    auto rep = validate(s.x, s.m, b, c);
    s.valid = rep.valid();
    s.reasons = std::move(rep.reasons);
    if (s.valid) s.p = evaluate_performance(s.x, s.m, b, c);
  }
  return ds;
}

void split_dataset(const Dataset& ds, const SplitSpec& spec, Dataset* train,
                   Dataset* test) {
  if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
    raise("invalid_argument", "test_fraction must lie in (0, 1)");
  std::vector<std::size_t> valid_pos; // ids need not equal positions
  for (std::size_t i = 0; i < ds.samples.size(); ++i)
    if (ds.samples[i].valid) valid_pos.push_back(i);
  const int nv = static_cast<int>(valid_pos.size());
  if (nv < 4)
    raise("too_few_valid",
          "split needs at least 4 valid samples, have " + std::to_string(nv));

  Rng rng(mix_seed(spec.seed, kSaltSplit));
  const auto perm = permutation(static_cast<std::uint32_t>(nv), rng);
  int n_test = static_cast<int>(
      std::floor(spec.test_fraction * nv + 0.5)); // round half-up
  n_test = std::clamp(n_test, 1, nv - 1);

  std::vector<std::size_t> test_pos, train_pos;
  for (int k = 0; k < nv; ++k)
    (k < n_test ? test_pos : train_pos)
        .push_back(valid_pos[perm[static_cast<std::size_t>(k)]]);
  const auto by_id = [&ds](std::size_t a, std::size_t b) {
    return ds.samples[a].id < ds.samples[b].id;
  };
  std::sort(test_pos.begin(), test_pos.end(), by_id);
  std::sort(train_pos.begin(), train_pos.end(), by_id);

  auto build = [&ds](const std::vector<std::size_t>& pos) {
    Dataset out;
    out.seed = ds.seed;
    out.space = ds.space;
    out.created = ds.created;
    for (std::size_t i : pos) out.samples.push_back(ds.samples[i]);
    return out;
  };
  *train = build(train_pos);
  *test = build(test_pos);
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::string out;
  {
    JsonWriter w;
    w.obj_begin();
    w.key("seed").integer(static_cast<long long>(ds.seed));
    detail::write_space(w, ds.space);
    w.key("created").str(ds.created);
    w.obj_end();
    out += w.text();
    out += '\n';
  }
  for (const auto& s : ds.samples) {
    JsonWriter w;
    w.obj_begin();
    w.key("id").integer(s.id);
    detail::write_x(w, s.x);
    detail::write_m(w, s.m);
    w.key("p");
    if (s.valid) {
      w.obj_begin();
      w.key("pout_kva").num(s.p.pout_kva).key("w_kg").num(s.p.w_kg);
      w.key("eta_pct").num(s.p.eta_pct).key("t_nm").num(s.p.t_nm);
      w.obj_end();
    } else {
      w.null();
    }
    w.key("valid").boolean(s.valid);
    w.key("reasons").arr_begin();
    for (const auto& issue : s.reasons) w.str(issue.rule);
    w.arr_end();
    w.obj_end();
    out += w.text();
    out += '\n';
  }
  write_file_atomic(path, out);
}

Dataset load_dataset(const std::string& path) {
  const auto lines = split_lines(read_file(path));
  if (lines.empty()) raise("corrupt_dataset", "empty dataset file: " + path);
  Dataset ds;
  try {
    const auto header = parse_json_line(lines[0], "corrupt_dataset");
    ds.seed = header.at("seed").get<std::uint64_t>();
    ds.space = detail::read_space(header.at("space"));
    ds.created = header.at("created").get<std::string>();
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto j = parse_json_line(lines[i], "corrupt_dataset");
      Sample s;
      s.id = j.at("id").get<int>();
      s.x = detail::read_x(j.at("x"));
      s.m = detail::read_m(j.at("m"));
      s.valid = j.at("valid").get<bool>();
      if (s.valid != !j.at("p").is_null())
        raise("corrupt_dataset", "valid flag contradicts performance presence");
      if (s.valid) {
        const auto& p = j.at("p");
        s.p.pout_kva = p.at("pout_kva").get<double>();
        s.p.w_kg = p.at("w_kg").get<double>();
        s.p.eta_pct = p.at("eta_pct").get<double>();
        s.p.t_nm = p.at("t_nm").get<double>();
      }
      for (const auto& r : j.at("reasons"))
        s.reasons.push_back({r.get<std::string>(), ""});
      if (s.id != static_cast<int>(ds.samples.size()))
        raise("corrupt_dataset", "sample ids are not contiguous");
      ds.samples.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    raise("corrupt_dataset", std::string("dataset field error: ") + e.what());
  }
  return ds;
}

} // namespace wrsg
