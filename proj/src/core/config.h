#pragma once

#include <map>
#include <string>

#include "core/machine.h"

namespace wrsg {

struct DesignSpace; // sampling.h

/// Parse a flat key=value document ('#' starts a comment, blank lines
/// ignored).  Values stay strings; callers convert.  Duplicate keys raise
/// `config_parse`.
std::map<std::string, std::string> parse_flat_file(const std::string& path);

/// Load OracleConstants overrides.  Keys mirror the field names exactly;
/// unknown keys raise `unknown_constant`, non-numeric values `config_parse`.
OracleConstants load_constants(const std::string& path);

/// Load a DesignSpace from keys `<var>_min`/`<var>_max` for the continuous
/// variables plus `na_set` as a comma list.  Missing keys keep defaults.
DesignSpace load_space(const std::string& path);

/// External reference design: full geometry, optionally with its own
/// claimed performance triple (otherwise the oracle fills it in).
struct BaselineDesign {
  GeometryVars x;
  bool has_perf = false;
  double pout_kva = 0, w_kg = 0, eta_pct = 0;
};

/// Load a baseline design from a flat file with keys d1,d2,l,pbh,pbw,na and
/// optional pout_kva,w_kg,eta_pct.  Missing geometry keys raise
/// `missing_field` listing every absent key.
BaselineDesign load_baseline(const std::string& path);

/// The built-in reference design used when no baseline file is supplied.
BaselineDesign default_baseline();

} // namespace wrsg
