#ifndef COMET_PERF_HPP
#define COMET_PERF_HPP

#include <string>
#include <vector>

#include "comet/constants.hpp"
#include "comet/params.hpp"

namespace comet {

struct StageDelays {
    double t_nucleate = 0.0;
    double t_propagate = 0.0;
    double t_qtransfer = 0.0;
};

struct EnergyBreakdown {
    double e_fe = 0.0;
    double e_tx = 0.0;
    double e_joule = 0.0;
    double e_leakage = 0.0;
};

// Gate-level figures. The totals satisfy
//   t_comet = 2 (t_nucleate + t_propagate + t_qtransfer)
//   e_comet = 2 (e_fe + e_tx + e_joule + e_leakage)
// exactly; the factor of two covers the magnetization initialization pass.
struct GateReport {
    GateKind gate_kind = GateKind::MAJ3;
    int k_inputs = 3;
    StageDelays delays;
    EnergyBreakdown energies;
    double t_comet = 0.0;
    double e_comet = 0.0;
    double v_out = 0.0;
    DriveParams drive;
};

// Inverse-ME output voltage: V_OUT = kappa_ime * h_int * M (the output FE
// thickness cancels). Literal value scaled by the convention factor where
// it feeds the transistor stage.
double ime_output_voltage(double m_z, const MaterialParams& params,
                          const DeviceGeometry& geometry);

// Parallel-plate input capacitance, eps0 * eps_fe * area / thickness.
double fe_capacitance(const MaterialParams& params, const DeviceGeometry& geometry,
                      const PhysicalConstants& pc = PhysicalConstants::codata());

// Charging energy of the K input capacitors, (K/2) C V^2.
double fe_charge_energy(int k_inputs, double v_fe, const MaterialParams& params,
                        const DeviceGeometry& geometry,
                        const PhysicalConstants& pc = PhysicalConstants::codata());

// SHM path resistance, rho l / (w t).
double shm_resistance(const DeviceGeometry& geometry, const MaterialParams& params);

// Joule heating, (Jc w t)^2 (R_on + R_SHM) t_propagate.
double joule_energy(double j_c, const DeviceGeometry& geometry,
                    const MaterialParams& params, const TransistorParams& transistor,
                    double t_propagate);

// Transistor switching energy, (C_g/2) ((K+1) V_RST^2 + V_PROP^2 + 2 V_OUT^2).
double tx_energy(int k_inputs, double v_rst, double v_prop, double v_out, double c_g);

// Charge-transfer delay: k_inv R_on C_load + 0.69 R_wire C_wire.
double qtransfer_delay(const TransistorParams& transistor, double load_capacitance,
                       double r_wire, double c_wire);

// Assembles the full gate report from stage delays computed elsewhere
// (decoupled mode) or from the solvers upstream.
GateReport gate_report(GateKind kind, const MaterialParams& params,
                       const DeviceGeometry& geometry, const TransistorParams& transistor,
                       const DriveParams& drive, double t_nucleate, double t_propagate,
                       const PhysicalConstants& pc = PhysicalConstants::codata());

// Table-style CSV with MAJ3/INV column pairs. Display variant rounds to one
// decimal in ps/aJ; the machine variant keeps shortest-round-trip doubles.
std::string emit_table2(const std::vector<std::pair<GateReport, GateReport>>& rows,
                        bool display);

// JSON serialization of one report.
std::string report_to_json(const GateReport& r);

} // namespace comet

#endif
