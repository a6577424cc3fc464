"""Independent transcription of the geometry scaling rules, validity gate and
analytical performance oracle. Used to freeze fixtures and to cross-check the
C++ implementation; shares no code with it."""

import math

# Boundaries defaults
V_RATED = 115.0
N_RATED = 6000.0
F_RATED = 400.0
A_MAX = 16.0
AF_MAX = 12.0
N_MAX = 7200.0

# Oracle constants defaults
BG = 0.8
KW = 0.92
G_AIR = 0.7
J_ARM_FRAC = 0.9
J_FLD_FRAC = 0.8
PF = 0.9
RHO_FE = 7650.0
RHO_CU = 8960.0
RHO_RES = 2.1e-8
K_FE = 2.5
END_TURN_FACTOR = 1.3
ROTOR_FILL = 0.7
FIELD_COIL_WIDTH_FRAC = 0.3


def derive_dependent(d1, d2, l, pbh, pbw, na, f_rated=F_RATED, n_rated=N_RATED):
    npf = 2.0 * 30.0 * f_rated / n_rated
    np_ = round(npf)
    if abs(npf - np_) > 1e-9:
        raise ValueError("np_not_integer")
    nsf = na * 3.0 * np_ / 2.0
    ns = round(nsf)
    if abs(nsf - ns) > 1e-9:
        raise ValueError("ns_not_integer")
    drc = pbh - 0.1
    nf = math.floor(drc / 0.6 + 0.5)  # round half-up
    ws = na / (na + 1.0) * (2.2 / 3.8) * ((d1 + 1.0) * math.pi / ns)
    ds = 0.25 * (d2 - d1) / 2.0
    ptw = 0.30 * pbh
    ptd = 0.10 * pbw
    psr = (d1 - 1.4) * 0.8
    pso = (d1 - 1.0) / 2.0 * 0.57
    dsh = d1 / 2.075
    wac = ws - 2.0 * 0.85
    hac = (ds - 1.6) / 2.0
    return dict(np=np_, ns=ns, nf=nf, ws=ws, drc=drc, ds=ds, ptw=ptw, ptd=ptd,
                psr=psr, pso=pso, dsh=dsh, wac=wac, hac=hac)


def validate(d1, d2, l, pbh, pbw, na, m, g_air=G_AIR):
    reasons = []
    if not (d2 > d1):
        reasons.append("diameter_order")
    if not (d2 - d1 >= 24.0):
        reasons.append("slot_depth_floor")
    if not (m["wac"] >= 1.0):
        reasons.append("conductor_width_floor")
    if not (m["hac"] >= 0.5):
        reasons.append("conductor_height_floor")
    if not (2.0 * m["np"] * pbw <= 0.85 * math.pi * (d1 - 2.0 * g_air - 2.0 * pbh)):
        reasons.append("pole_fit")
    if not (m["dsh"] > 0.0 and pbh + m["ptd"] < (d1 - 2.0 * g_air - m["dsh"]) / 2.0):
        reasons.append("pole_shaft_clearance")
    return reasons


def evaluate_performance(d1, d2, l, pbh, pbw, na, m):
    # mm -> m
    d1m = d1 *  1e-3
    d2m = d2 * 1e-3
    lm = l * 1e-3
    pbwm = pbw * 1e-3
    wsm = m["ws"] * 1e-3
    dsm = m["ds"] * 1e-3
    drcm = m["drc"] * 1e-3
    gm = G_AIR * 1e-3
    ns = m["ns"]
    np_ = m["np"]

    a_cu_mm2 = 2.0 * m["wac"] * m["hac"]
    i_slot = (J_ARM_FRAC * A_MAX) * a_cu_mm2
    ac = ns * i_slot / (math.pi * d1m)
    s_va = (math.pi ** 2 / math.sqrt(2.0)) * KW * BG * ac * d1m * d1m * lm * (N_RATED / 60.0)
    pout_kva = s_va / 1000.0
    p_act = PF * s_va
    t_nm = p_act / (2.0 * math.pi * N_RATED / 60.0)

    a_cu_m2 = a_cu_mm2 * 1e-6
    v_fe_stator = (math.pi / 4.0) * (d2m * d2m - d1m * d1m) * lm - ns * wsm * dsm * lm
    m_fe_stator = RHO_FE * v_fe_stator
    arm_len = lm + END_TURN_FACTOR * math.pi * d1m / (2.0 * np_)
    v_cu_a = ns * a_cu_m2 * arm_len
    m_cu_a = RHO_CU * v_cu_a
    m_fe_rotor = RHO_FE * ROTOR_FILL * (math.pi / 4.0) * (d1m - 2.0 * gm) ** 2 * lm
    v_cu_f = 2.0 * np_ * drcm * (FIELD_COIL_WIDTH_FRAC * pbwm) * 2.0 * (lm + pbwm)
    m_cu_f = RHO_CU * v_cu_f
    w_kg = m_fe_stator + m_cu_a + m_fe_rotor + m_cu_f

    p_cu_a = RHO_RES * (J_ARM_FRAC * A_MAX * 1e6) ** 2 * v_cu_a
    p_cu_f = RHO_RES * (J_FLD_FRAC * AF_MAX * 1e6) ** 2 * v_cu_f
    p_fe = K_FE * m_fe_stator * (F_RATED / 50.0) ** 1.5 * (BG / 1.5) ** 2
    eta_pct = 100.0 * p_act / (p_act + p_cu_a + p_cu_f + p_fe)
    return dict(pout_kva=pout_kva, w_kg=w_kg, eta_pct=eta_pct, t_nm=t_nm)


BASELINE = dict(d1=163.40, d2=204.95, l=70.04, pbh=22.12, pbw=22.36, na=7)

if __name__ == "__main__":
    m = derive_dependent(**BASELINE)
    print("M fixture:")
    for k, v in m.items():
        print(f"  {k} = {v!r}")
    reasons = validate(**BASELINE, m=m)
    print("validity reasons:", reasons)
    p = evaluate_performance(**BASELINE, m=m)
    print("Performance fixture:")
    for k, v in p.items():
        print(f"  {k} = {v!r}")
    print("power_density =", p["pout_kva"] / p["w_kg"])
