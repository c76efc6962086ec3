#include "comet/lkh.hpp"

#include <cmath>
#include <stdexcept>

#include "comet/errors.hpp"

namespace comet {

LandauCoefficients LandauCoefficients::from_targets(double p_remnant, double e_coercive) {
    if (!(p_remnant > 0) || !(e_coercive > 0))
        throw std::invalid_argument("landau: p_remnant and e_coercive must be positive");
    LandauCoefficients c;
    c.p_remnant = p_remnant;
    c.e_coercive = e_coercive;
    // Spinodal of the double well: |E_c| = 2/(3*sqrt(3)) * |a2| * P_r.
    const double mag_a2 = 3.0 * std::sqrt(3.0) / 2.0 * e_coercive / p_remnant;
    c.a2 = -mag_a2;
    c.a4 = mag_a2 / (p_remnant * p_remnant);
    return c;
}

double LandauCoefficients::equilibrium(double e_applied) const {
    if (e_applied == 0.0) return p_remnant;
    // Largest real root of a4 p^3 + a2 p = e on the branch with sign(e).
    const double s = e_applied > 0 ? 1.0 : -1.0;
    const double e = std::fabs(e_applied);
    double lo = p_remnant, hi = p_remnant;
    while (dfdp(hi, e) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (dfdp(mid, e) < 0.0 ? lo : hi) = mid;
    }
    return s * 0.5 * (lo + hi);
}

double LandauCoefficients::p_saturation() const {
    // Upper bound of reachable |P| for drives up to ~10x the coercive field;
    // used only for the state invariant.
    return std::max(p_remnant, equilibrium(10.0 * e_coercive)) * 4.0;
}

namespace {

Vec3 lkh_rhs(const Vec3& p, const Vec3& e, const LandauCoefficients& c, double gamma_v) {
    return {-c.dfdp(p.x, e.x) / gamma_v,
            -c.dfdp(p.y, e.y) / gamma_v,
            -c.dfdp(p.z, e.z) / gamma_v};
}

} // namespace

FeState lkh_step(const FeState& state, const Vec3& e_applied,
                 const LandauCoefficients& coeffs, double gamma_v,
                 double /*fe_volume*/, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("lkh_step: dt must be positive");
    if (!finite(state.p_vec)) throw NumericFailure("lkh_step: non-finite polarization state");

    // Explicit stability bound: the stiffest local rate is f''(P)/gamma_v.
    const double p_scale = std::max({std::fabs(state.p_vec.x), std::fabs(state.p_vec.y),
                                     std::fabs(state.p_vec.z), coeffs.p_remnant});
    const double stiffness = (std::fabs(coeffs.a2) + 3.0 * coeffs.a4 * p_scale * p_scale) / gamma_v;
    if (dt * stiffness > 2.5)
        throw TimestepTooLarge("lkh_step: dt exceeds the explicit stability bound");

    const Vec3& p = state.p_vec;
    const Vec3 k1 = lkh_rhs(p, e_applied, coeffs, gamma_v);
    const Vec3 k2 = lkh_rhs(p + 0.5 * dt * k1, e_applied, coeffs, gamma_v);
    const Vec3 k3 = lkh_rhs(p + 0.5 * dt * k2, e_applied, coeffs, gamma_v);
    const Vec3 k4 = lkh_rhs(p + dt * k3, e_applied, coeffs, gamma_v);

    FeState out;
    out.p_vec = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.t_now = state.t_now + dt;
    if (!finite(out.p_vec)) throw NumericFailure("lkh_step: step produced non-finite values");
    return out;
}

Vec3 me_field(const Vec3& p_vec, double kappa_me, double h_int, double h_fe_in,
              double eps0) {
    if (!(h_fe_in > 0)) throw std::invalid_argument("me_field: zero FE thickness");
    const double factor = kappa_me / eps0 * (h_int / h_fe_in);
    return factor * p_vec;
}

double voltage_to_field(double v_fe, double h_fe_in) {
    if (!(h_fe_in > 0)) throw std::invalid_argument("voltage_to_field: zero FE thickness");
    return v_fe / h_fe_in;
}

MeFieldTrace me_drive_trace(double v_fe, const MaterialParams& mat,
                            const DeviceGeometry& geom,
                            const LandauCoefficients& coeffs,
                            const PhysicalConstants& pc, double horizon,
                            double dt) {
    MeFieldTrace tr;
    tr.dt = dt;
    const std::size_t n = static_cast<std::size_t>(horizon / dt) + 2;
    tr.h_z.resize(n);
    tr.p_z.resize(n);

    const double e_z = voltage_to_field(v_fe, geom.h_fe_in);
    const double fe_volume = geom.fe_in_area * geom.h_fe_in;
    // Positive drive pushes the channel toward -z (down-up configuration).
    const double orientation = -1.0;

    // The capacitor's polarization is the switching (LKh) part plus the
    // linear dielectric background of the FE permittivity.
    const double p_diel = pc.eps0 * (mat.eps_fe - 1.0) * e_z;

    // Substep below the stiffness bound of the relaxation equation.
    const double p_ref = std::max(coeffs.equilibrium(std::fabs(e_z)), coeffs.p_remnant);
    const double stiffness =
        (std::fabs(coeffs.a2) + 3.0 * coeffs.a4 * p_ref * p_ref) / mat.gamma_v;
    const int n_sub = std::max(1, static_cast<int>(std::ceil(dt * stiffness / 0.5)));
    const double dt_sub = dt / n_sub;

    FeState fe; // discharged capacitor, P = 0
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 p_total = fe.p_vec + Vec3{0, 0, p_diel};
        const Vec3 h = me_field(p_total, mat.kappa_me, mat.h_int, geom.h_fe_in, pc.eps0);
        tr.h_z[i] = orientation * mat.me_scale * h.z;
        tr.p_z[i] = p_total.z;
        if (e_z != 0.0)
            for (int s = 0; s < n_sub; ++s)
                fe = lkh_step(fe, Vec3{0, 0, e_z}, coeffs, mat.gamma_v, fe_volume, dt_sub);
        else
            fe.t_now += dt;
    }
    return tr;
}

} // namespace comet
