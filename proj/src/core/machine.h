#pragma once

#include <string>
#include <vector>

#include "core/common.h"

namespace wrsg {

/// Fixed machine ratings that frame every design.
struct Boundaries {
  double v_rated = 115.0;  ///< phase voltage [V]
  double n_rated = 6000.0; ///< rated speed [rpm]
  double f_rated = 400.0;  ///< electrical frequency [Hz]
  double a_max = 16.0;     ///< armature current-density cap [A/mm^2]
  double af_max = 12.0;    ///< field current-density cap [A/mm^2]
  double n_max = 7200.0;   ///< overspeed limit [rpm]
};

/// The six fundamental geometry variables swept during data generation.
struct GeometryVars {
  double d1 = 0;  ///< inner (armature) diameter [mm]
  double d2 = 0;  ///< outer diameter [mm]
  double l = 0;   ///< core length [mm]
  double pbh = 0; ///< pole body height [mm]
  double pbw = 0; ///< pole body width [mm]
  int na = 0;     ///< armature turns per phase per pole pair
};

/// Geometry quantities tied to the fundamentals by the correlation rules;
/// computed, never swept.
struct DependentParams {
  int np = 0;     ///< pole pairs
  int ns = 0;     ///< stator slot count
  int nf = 0;     ///< field turns per pole
  double ws = 0;  ///< slot width [mm]
  double drc = 0; ///< rotor coil depth [mm]
  double ds = 0;  ///< slot depth [mm]
  double ptw = 0; ///< pole tip width [mm]
  double ptd = 0; ///< pole tip depth [mm]
  double psr = 0; ///< pole surface radius [mm]
  double pso = 0; ///< pole surface offset [mm]
  double dsh = 0; ///< shaft diameter [mm]
  double wac = 0; ///< conductor copper width [mm]
  double hac = 0; ///< conductor copper height [mm]
};

/// One violated manufacturability rule: stable identifier plus prose.
struct ValidityIssue {
  std::string rule;
  std::string message;
};

/// Outcome of the manufacturability gate; a design is valid iff no rule
/// fired.  Violations are reported, never thrown.
struct ValidityReport {
  std::vector<ValidityIssue> reasons;
  bool valid() const { return reasons.empty(); }
};

/// Performance figures produced by the analytical evaluator.
struct Performance {
  double pout_kva = 0; ///< apparent output power [kVA]
  double w_kg = 0;     ///< total active mass [kg]
  double eta_pct = 0;  ///< electromagnetic efficiency [%]
  double t_nm = 0;     ///< shaft torque [N*m]
};

/// Tunable constants of the analytical performance evaluator.  The values
/// are plausibility defaults, not measured data; every field can be
/// overridden from a flat key=value configuration file.
struct OracleConstants {
  double bg = 0.8;          ///< air-gap flux density [T]
  double kw = 0.92;         ///< winding factor
  double g_air = 0.7;       ///< air gap [mm]
  double j_arm_frac = 0.9;  ///< operating fraction of a_max
  double j_fld_frac = 0.8;  ///< operating fraction of af_max
  double pf = 0.9;          ///< power factor for active power
  double rho_fe = 7650.0;   ///< iron density [kg/m^3]
  double rho_cu = 8960.0;   ///< copper density [kg/m^3]
  double rho_res = 2.1e-8;  ///< copper resistivity [ohm*m]
  double k_fe = 2.5;        ///< specific iron loss at 50 Hz, 1.5 T [W/kg]
  double end_turn_factor = 1.3;       ///< end-winding length multiplier
  double rotor_fill = 0.7;            ///< rotor iron fill fraction
  double field_coil_width_frac = 0.3; ///< field coil width / pole body width
};

/// Compute the dependent geometry from the fundamentals.  Pure: identical
/// inputs give bit-identical outputs.  Throws `ns_not_integer` (or
/// `np_not_integer`) when the ratings make a turn/slot count non-integral,
/// and `invalid_argument` on non-positive lengths or na < 1.
DependentParams derive_dependent(const GeometryVars& x, const Boundaries& b);

/// Manufacturability gate: evaluates every rule and reports all violations.
ValidityReport validate(const GeometryVars& x, const DependentParams& m,
                        const Boundaries& b, const OracleConstants& c);

/// Analytical sizing evaluation standing in for a field solver.  Requires a
/// valid geometry (`invalid_geometry` otherwise); any non-finite
/// intermediate raises `oracle_numeric`.
Performance evaluate_performance(const GeometryVars& x,
                                 const DependentParams& m,
                                 const Boundaries& b,
                                 const OracleConstants& c);

/// Apparent power over active mass [kVA/kg]; the retrieval ranking key.
double power_density(const Performance& p);

} // namespace wrsg
