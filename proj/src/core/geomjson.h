#pragma once

// Shared JSON encoding of the geometry domain types.  Datasets and design
// databases must serialize x / m / space identically so fixtures and
// fingerprints stay stable across file kinds; keep every change mirrored in
// the readers below.

#include "core/jsonio.h"
#include "core/machine.h"
#include "core/sampling.h"

namespace wrsg::detail {

inline void write_space(JsonWriter& w, const DesignSpace& space) {
  w.key("space").obj_begin();
  for (int dim = 0; dim < 5; ++dim) {
    const auto& r = space.continuous(dim);
    w.key(kVarNames[static_cast<std::size_t>(dim)])
        .arr_begin()
        .num(r.lo)
        .num(r.hi)
        .arr_end();
  }
  w.key("na").arr_begin();
  for (int na : space.na_set) w.integer(na);
  w.arr_end();
  w.obj_end();
}

inline DesignSpace read_space(const nlohmann::json& j) {
  DesignSpace s;
  s.na_set.clear();
  auto range = [&j](const char* name) {
    const auto& a = j.at(name);
    return VarRange{a.at(0).get<double>(), a.at(1).get<double>()};
  };
  s.d1 = range("d1");
  s.d2 = range("d2");
  s.l = range("l");
  s.pbh = range("pbh");
  s.pbw = range("pbw");
  for (const auto& v : j.at("na")) s.na_set.push_back(v.get<int>());
  return s;
}

inline void write_x(JsonWriter& w, const GeometryVars& x) {
  w.key("x").obj_begin();
  w.key("d1").num(x.d1).key("d2").num(x.d2).key("l").num(x.l);
  w.key("pbh").num(x.pbh).key("pbw").num(x.pbw).key("na").integer(x.na);
  w.obj_end();
}

inline GeometryVars read_x(const nlohmann::json& j) {
  GeometryVars x;
  x.d1 = j.at("d1").get<double>();
  x.d2 = j.at("d2").get<double>();
  x.l = j.at("l").get<double>();
  x.pbh = j.at("pbh").get<double>();
  x.pbw = j.at("pbw").get<double>();
  x.na = j.at("na").get<int>();
  return x;
}

inline void write_m(JsonWriter& w, const DependentParams& m) {
  w.key("m").obj_begin();
  w.key("np").integer(m.np).key("ns").integer(m.ns).key("nf").integer(m.nf);
  w.key("ws").num(m.ws).key("drc").num(m.drc).key("ds").num(m.ds);
  w.key("ptw").num(m.ptw).key("ptd").num(m.ptd).key("psr").num(m.psr);
  w.key("pso").num(m.pso).key("dsh").num(m.dsh).key("wac").num(m.wac);
  w.key("hac").num(m.hac);
  w.obj_end();
}

inline DependentParams read_m(const nlohmann::json& j) {
  DependentParams m;
  m.np = j.at("np").get<int>();
  m.ns = j.at("ns").get<int>();
  m.nf = j.at("nf").get<int>();
  m.ws = j.at("ws").get<double>();
  m.drc = j.at("drc").get<double>();
  m.ds = j.at("ds").get<double>();
  m.ptw = j.at("ptw").get<double>();
  m.ptd = j.at("ptd").get<double>();
  m.psr = j.at("psr").get<double>();
  m.pso = j.at("pso").get<double>();
  m.dsh = j.at("dsh").get<double>();
  m.wac = j.at("wac").get<double>();
  m.hac = j.at("hac").get<double>();
  return m;
}

} // namespace wrsg::detail
