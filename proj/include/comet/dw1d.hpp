#ifndef COMET_DW1D_HPP
#define COMET_DW1D_HPP

#include <optional>
#include <vector>

#include "comet/constants.hpp"
#include "comet/params.hpp"

namespace comet {

// Collective coordinates of the wall: position Q, in-plane phase phi and
// width Delta (always the self-consistent solution of the width equation).
struct DwState {
    double q_pos = 0.0;  // [m]
    double phi = 0.0;    // [rad]
    double delta = 0.0;  // [m]
    double t_now = 0.0;  // [s]
};

// Effective drive fields in the printed convention (tesla-labelled):
// h_k = 2Ku/Ms, h_she = hbar*theta*Jc/(2*mu0*e*Ms), h_dmi = D/(mu0*Ms*Delta),
// b_stt = mu_B*P*Jc/(e*Ms). These are the reported quantities; the stepping
// kernel derives its tesla-consistent fields from the same inputs (see
// DwFields in dw1d.cpp).
struct DriveFields {
    double h_k = 0.0;
    double h_she = 0.0;
    double h_dmi = 0.0;
    double b_stt = 0.0;
};

struct DwOptions {
    double dt = 0.1e-12;      // integrator step [s]
    double horizon = 50e-9;   // propagation time limit [s]
    double phi_relax = 1e-9;  // zero-drive phase relaxation window [s]
    bool include_stt = true;  // STT field-like term toggle (regression knob)
};

// Solves the implicit width equation for the given phase by damped fixed
// point iteration with a bisection fallback; relative residual < 1e-12.
// `seed` reuses a previous width as the starting guess.
double dw_width(double phi, const MaterialParams& params, const DeviceGeometry& geometry,
                const PhysicalConstants& pc = PhysicalConstants::codata(),
                double seed = 0.0);

DriveFields drive_fields(const MaterialParams& params, double j_c, double delta,
                         const PhysicalConstants& pc = PhysicalConstants::codata());

// One RK4 step of the coupled (Q, phi) pair; Delta is re-solved at every
// stage evaluation.
DwState dw_step(const DwState& state, const MaterialParams& params,
                const DeviceGeometry& geometry, double j_c, double dt,
                const PhysicalConstants& pc = PhysicalConstants::codata(),
                bool include_stt = true);

// Zero-current equilibrium phase, obtained by relaxing the phi equation from
// a Bloch seed for opts.phi_relax.
double equilibrium_phase(const MaterialParams& params, const DeviceGeometry& geometry,
                         const DwOptions& opts = {},
                         const PhysicalConstants& pc = PhysicalConstants::codata());

struct PropagateResult {
    double t_propagate = 0.0; // first crossing of the target distance [s]
    double v_avg = 0.0;       // distance / t_propagate [m/s]
    std::vector<DwState> trace; // sampled states (empty unless requested)
};

// Integrates from Q = 0 at the zero-drive equilibrium phase until Q crosses
// `distance`. Throws PropagationStall if the horizon is exceeded.
PropagateResult propagate(double distance, const MaterialParams& params,
                          const DeviceGeometry& geometry, double j_c,
                          const DwOptions& opts = {},
                          const PhysicalConstants& pc = PhysicalConstants::codata(),
                          bool keep_trace = false);

// Average velocity over the MAJ3 propagation distance for each current
// density in ascending order.
std::vector<std::pair<double, double>> velocity_vs_jc(
    const std::vector<double>& jc_list, const MaterialParams& params,
    const DeviceGeometry& geometry, const DwOptions& opts = {},
    const PhysicalConstants& pc = PhysicalConstants::codata());

} // namespace comet

#endif
