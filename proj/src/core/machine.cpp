#include "core/machine.h"

#include <cmath>
#include <numbers>

namespace wrsg {

namespace {

constexpr double kPi = std::numbers::pi;

int checked_int(double v, const char* err_id, const char* what) {
  const double r = std::floor(v + 0.5);
  if (std::abs(v - r) > 1e-9)
    raise(err_id, std::string(what) + " is not integral: " + std::to_string(v));
  return static_cast<int>(r);
}

} // namespace

DependentParams derive_dependent(const GeometryVars& x, const Boundaries& b) {
  if (x.d1 <= 0 || x.d2 <= 0 || x.l <= 0 || x.pbh <= 0 || x.pbw <= 0)
    raise("invalid_argument", "geometry lengths must be positive");
  if (x.na < 1)
    raise("invalid_argument", "na must be >= 1");

  DependentParams m;
  m.np = checked_int(2.0 * 30.0 * b.f_rated / b.n_rated, "np_not_integer",
                     "pole pair count 2*30*f/n");
  // ns = na*3*np/2 must come out integral; half-integer slot counts are
  // rejected rather than rounded.
  m.ns = checked_int(static_cast<double>(x.na) * 3.0 * m.np / 2.0,
                     "ns_not_integer", "slot count na*3*np/2");
  m.drc = x.pbh - 0.1;
  m.nf = static_cast<int>(std::floor(m.drc / 0.6 + 0.5)); // round half-up
  m.ws = (static_cast<double>(x.na) / (x.na + 1.0)) * (2.2 / 3.8) *
         ((x.d1 + 1.0) * kPi / m.ns);
  m.ds = 0.25 * (x.d2 - x.d1) / 2.0;
  m.ptw = 0.30 * x.pbh;
  m.ptd = 0.10 * x.pbw;
  m.psr = (x.d1 - 1.4) * 0.8;
  m.pso = (x.d1 - 1.0) / 2.0 * 0.57;
  m.dsh = x.d1 / 2.075;
  m.wac = m.ws - 2.0 * 0.85;
  m.hac = (m.ds - 1.6) / 2.0;
  return m;
}

ValidityReport validate(const GeometryVars& x, const DependentParams& m,
                        const Boundaries& /*b*/, const OracleConstants& c) {
  ValidityReport rep;
  auto fail = [&rep](const char* rule, std::string msg) {
    rep.reasons.push_back({rule, std::move(msg)});
  };

  if (x.d2 <= x.d1)
    fail("diameter_order", "outer diameter must exceed inner diameter");
  if (x.d2 - x.d1 < 24.0)
    fail("slot_depth_floor", "d2-d1 < 24 mm leaves the slot shallower than 3 mm");
  if (m.wac < 1.0)
    fail("conductor_width_floor", "conductor copper width below 1 mm");
  if (m.hac < 0.5)
    fail("conductor_height_floor", "conductor copper height below 0.5 mm");
  if (2.0 * m.np * x.pbw > 0.85 * kPi * (x.d1 - 2.0 * c.g_air - 2.0 * x.pbh))
    fail("pole_fit", "pole bodies do not fit around the rotor circumference");
  if (!(m.dsh > 0.0) ||
      !(x.pbh + m.ptd < (x.d1 - 2.0 * c.g_air - m.dsh) / 2.0))
    fail("pole_shaft_clearance", "pole stack does not clear the shaft");
  return rep;
}

Performance evaluate_performance(const GeometryVars& x,
                                 const DependentParams& m,
                                 const Boundaries& b,
                                 const OracleConstants& c) {
  if (!validate(x, m, b, c).valid())
    raise("invalid_geometry", "performance requested for an invalid geometry");

  // All lengths mm -> m.
  const double d1 = x.d1 * 1e-3;
  const double d2 = x.d2 * 1e-3;
  const double l = x.l * 1e-3;
  const double pbw = x.pbw * 1e-3;
  const double ws = m.ws * 1e-3;
  const double ds = m.ds * 1e-3;
  const double drc = m.drc * 1e-3;
  const double g = c.g_air * 1e-3;

  // Electric loading from the slot copper section.
  const double a_cu_mm2 = 2.0 * m.wac * m.hac;                 // [mm^2]
  const double i_slot = (c.j_arm_frac * b.a_max) * a_cu_mm2;   // [A]
  const double ac = m.ns * i_slot / (kPi * d1);                // [A/m]

  // Classical sizing equation for apparent power.
  const double s_va = (kPi * kPi / std::sqrt(2.0)) * c.kw * c.bg * ac * d1 *
                      d1 * l * (b.n_rated / 60.0);
  const double p_act = c.pf * s_va;

  // Active masses.
  const double a_cu = a_cu_mm2 * 1e-6; // [m^2]
  const double v_fe_stator =
      (kPi / 4.0) * (d2 * d2 - d1 * d1) * l - m.ns * ws * ds * l;
  const double v_cu_arm =
      m.ns * a_cu * (l + c.end_turn_factor * kPi * d1 / (2.0 * m.np));
  const double v_fe_rotor =
      c.rotor_fill * (kPi / 4.0) * (d1 - 2.0 * g) * (d1 - 2.0 * g) * l;
  const double v_cu_fld = 2.0 * m.np * drc * (c.field_coil_width_frac * pbw) *
                          2.0 * (l + pbw);
  const double m_fe_stator = c.rho_fe * v_fe_stator;
  const double m_cu_arm = c.rho_cu * v_cu_arm;
  const double m_fe_rotor = c.rho_fe * v_fe_rotor;
  const double m_cu_fld = c.rho_cu * v_cu_fld;

  // Losses: copper J^2*rho*V plus a frequency/flux-scaled iron term.
  const double j_arm = c.j_arm_frac * b.a_max * 1e6;  // [A/m^2]
  const double j_fld = c.j_fld_frac * b.af_max * 1e6; // [A/m^2]
  const double p_cu_a = c.rho_res * j_arm * j_arm * v_cu_arm;
  const double p_cu_f = c.rho_res * j_fld * j_fld * v_cu_fld;
  const double p_fe = c.k_fe * m_fe_stator *
                      std::pow(b.f_rated / 50.0, 1.5) *
                      (c.bg / 1.5) * (c.bg / 1.5);

  Performance p;
  p.pout_kva = s_va / 1000.0;
  p.w_kg = m_fe_stator + m_cu_arm + m_fe_rotor + m_cu_fld;
  p.eta_pct = 100.0 * p_act / (p_act + p_cu_a + p_cu_f + p_fe);
  p.t_nm = p_act / (2.0 * kPi * b.n_rated / 60.0);

  if (!std::isfinite(p.pout_kva) || !std::isfinite(p.w_kg) ||
      !std::isfinite(p.eta_pct) || !std::isfinite(p.t_nm))
    raise("oracle_numeric", "non-finite intermediate in performance evaluation");
  return p;
}

double power_density(const Performance& p) {
  if (!(p.w_kg > 0))
    raise("invalid_argument", "power density requires positive mass");
  return p.pout_kva / p.w_kg;
}

} // namespace wrsg
