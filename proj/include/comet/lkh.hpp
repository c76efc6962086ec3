#ifndef COMET_LKH_HPP
#define COMET_LKH_HPP

#include <vector>

#include "comet/constants.hpp"
#include "comet/params.hpp"
#include "comet/vec.hpp"

namespace comet {

// Polarization state of one FE capacitor, treated as spatially uniform.
struct FeState {
    Vec3 p_vec;       // polarization [C/m^2]
    double t_now = 0; // simulation time [s]
};

// Double-well Landau free energy f(P) = a2/2 P^2 + a4/4 P^4 - E·P per unit
// volume. The reference cites the relaxation model without printing the
// functional form, so the coefficients are calibrated from two targets.
struct LandauCoefficients {
    double a2 = 0.0;        // quadratic coefficient, negative [V·m/C]
    double a4 = 0.0;        // quartic coefficient, positive
    double p_remnant = 0.0; // zero-field well position [C/m^2]
    double e_coercive = 0.0; // field closing the metastable well [V/m]

    // Calibrates (a2, a4) so the zero-field wells sit at ±p_remnant and the
    // spinodal field equals e_coercive.
    static LandauCoefficients from_targets(double p_remnant, double e_coercive);

    // dF/dP for one component.
    double dfdp(double p, double e_applied) const {
        return a2 * p + a4 * p * p * p - e_applied;
    }

    // Free energy density at polarization p under field e.
    double energy(double p, double e_applied) const {
        return 0.5 * a2 * p * p + 0.25 * a4 * p * p * p * p - e_applied * p;
    }

    // Stable equilibrium polarization on the branch selected by sign(e).
    double equilibrium(double e_applied) const;

    double p_saturation() const;
};

// Advances the polarization by one explicit RK4 step of
// gamma_v dP_i/dt = -(1/a_FEin) dF_T/dP_i with F_T = a_FEin * f(P).
// The capacitor volume cancels for a uniform P; it is kept in the signature
// for fidelity to the stated per-capacitor form.
FeState lkh_step(const FeState& state, const Vec3& e_applied,
                 const LandauCoefficients& coeffs, double gamma_v,
                 double fe_volume, double dt);

// Effective ME field from polarization, evaluated literally:
// H_ME = (kappa_me / eps0) * (h_int / h_fe_in) * P, componentwise.
Vec3 me_field(const Vec3& p_vec, double kappa_me, double h_int, double h_fe_in,
              double eps0);

// Electric field across the input capacitor, E = V / h.
double voltage_to_field(double v_fe, double h_fe_in);

// Precomputed H_ME(t) trajectory of the input chain: polarization integrated
// from P = 0 under the constant field V/h, converted through the ME formula
// and the convention scale. Sample k corresponds to time k*dt.
struct MeFieldTrace {
    double dt = 0.0;
    std::vector<double> h_z; // signed Zeeman amplitude along z [A/m]
    std::vector<double> p_z; // polarization samples [C/m^2]

    double at(double t) const {
        if (h_z.empty()) return 0.0;
        const double idx = t / dt;
        if (idx <= 0) return h_z.front();
        std::size_t i = static_cast<std::size_t>(idx);
        if (i + 1 >= h_z.size()) return h_z.back();
        const double w = idx - static_cast<double>(i);
        return h_z[i] * (1.0 - w) + h_z[i + 1] * w;
    }
};

// Runs the LKh + ME chain for a constant applied voltage. Positive v_fe
// yields a negative-z Zeeman field on the +z-initialized channel (down-up
// nucleation); negative voltage mirrors it.
MeFieldTrace me_drive_trace(double v_fe, const MaterialParams& mat,
                            const DeviceGeometry& geom,
                            const LandauCoefficients& coeffs,
                            const PhysicalConstants& pc, double horizon,
                            double dt);

} // namespace comet

#endif
