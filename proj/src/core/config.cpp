#include "core/config.h"

#include <cstdlib>
#include <sstream>

#include "core/jsonio.h"
#include "core/sampling.h"

namespace wrsg {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    raise("config_parse", "non-numeric value for '" + key + "': " + value);
  return v;
}

} // namespace

std::map<std::string, std::string> parse_flat_file(const std::string& path) {
  std::map<std::string, std::string> kv;
  const auto lines = split_lines(read_file(path));
  int lineno = 0;
  for (const auto& raw : lines) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      raise("config_parse", path + ":" + std::to_string(lineno) +
                                ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      raise("config_parse",
            path + ":" + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      raise("config_parse", "duplicate key '" + key + "' in " + path);
  }
  return kv;
}

OracleConstants load_constants(const std::string& path) {
  OracleConstants c;
  const auto kv = parse_flat_file(path);
  for (const auto& [key, value] : kv) {
    const double v = to_double(key, value);
    if (key == "bg") c.bg = v;
    else if (key == "kw") c.kw = v;
    else if (key == "g_air") c.g_air = v;
    else if (key == "j_arm_frac") c.j_arm_frac = v;
    else if (key == "j_fld_frac") c.j_fld_frac = v;
    else if (key == "pf") c.pf = v;
    else if (key == "rho_fe") c.rho_fe = v;
    else if (key == "rho_cu") c.rho_cu = v;
    else if (key == "rho_res") c.rho_res = v;
    else if (key == "k_fe") c.k_fe = v;
    else if (key == "end_turn_factor") c.end_turn_factor = v;
    else if (key == "rotor_fill") c.rotor_fill = v;
    else if (key == "field_coil_width_frac") c.field_coil_width_frac = v;
    else raise("unknown_constant", "unknown constant '" + key + "' in " + path);
  }
  if (!(c.bg > 0 && c.kw > 0 && c.g_air > 0 && c.rho_fe > 0 && c.rho_cu > 0 &&
        c.rho_res > 0 && c.k_fe > 0 && c.end_turn_factor > 0 &&
        c.rotor_fill > 0 && c.field_coil_width_frac > 0))
    raise("config_parse", "constants must be strictly positive: " + path);
  if (!(c.j_arm_frac > 0 && c.j_arm_frac <= 1) ||
      !(c.j_fld_frac > 0 && c.j_fld_frac <= 1) || !(c.pf > 0 && c.pf <= 1))
    raise("config_parse",
          "j_arm_frac, j_fld_frac, pf must lie in (0, 1]: " + path);
  return c;
}

DesignSpace load_space(const std::string& path) {
  DesignSpace s;
  auto kv = parse_flat_file(path);
  auto take = [&kv](const char* key, double& field) {
    if (auto it = kv.find(key); it != kv.end()) {
      field = to_double(key, it->second);
      kv.erase(it);
    }
  };
  take("d1_min", s.d1.lo);
  take("d1_max", s.d1.hi);
  take("d2_min", s.d2.lo);
  take("d2_max", s.d2.hi);
  take("l_min", s.l.lo);
  take("l_max", s.l.hi);
  take("pbh_min", s.pbh.lo);
  take("pbh_max", s.pbh.hi);
  take("pbw_min", s.pbw.lo);
  take("pbw_max", s.pbw.hi);
  if (auto it = kv.find("na_set"); it != kv.end()) {
    s.na_set.clear();
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ','))
      s.na_set.push_back(
          static_cast<int>(to_double("na_set", trim(tok))));
    kv.erase(it);
  }
  if (!kv.empty())
    raise("config_parse", "unknown space key '" + kv.begin()->first + "' in " + path);
  for (int dim = 0; dim < 5; ++dim)
    if (!(s.continuous(dim).lo < s.continuous(dim).hi))
      raise("config_parse", "space bounds must satisfy min < max: " + path);
  if (s.na_set.empty())
    raise("config_parse", "na_set must be non-empty: " + path);
  return s;
}

BaselineDesign load_baseline(const std::string& path) {
  const auto kv = parse_flat_file(path);
  auto get = [&kv](const char* key, double& out) {
    auto it = kv.find(key);
    if (it == kv.end()) return false;
    out = to_double(key, it->second);
    return true;
  };
  BaselineDesign b;
  std::string missing;
  double na = 0;
  for (const char* key : {"d1", "d2", "l", "pbh", "pbw", "na"}) {
    double v = 0;
    if (!get(key, v)) {
      missing += missing.empty() ? key : std::string(", ") + key;
      continue;
    }
    if (std::string(key) == "d1") b.x.d1 = v;
    else if (std::string(key) == "d2") b.x.d2 = v;
    else if (std::string(key) == "l") b.x.l = v;
    else if (std::string(key) == "pbh") b.x.pbh = v;
    else if (std::string(key) == "pbw") b.x.pbw = v;
    else na = v;
  }
  if (!missing.empty())
    raise("missing_field", "baseline file lacks: " + missing);
  b.x.na = static_cast<int>(na);
  const bool p = get("pout_kva", b.pout_kva);
  const bool w = get("w_kg", b.w_kg);
  const bool e = get("eta_pct", b.eta_pct);
  if (p != w || w != e)
    raise("missing_field",
          "baseline performance must give all of pout_kva, w_kg, eta_pct or none");
  b.has_perf = p;
  return b;
}

BaselineDesign default_baseline() {
  BaselineDesign b;
  b.x = GeometryVars{163.40, 204.95, 70.04, 22.12, 22.36, 7};
  return b;
}

} // namespace wrsg
