#include "comet/perf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "comet/csvio.hpp"

namespace comet {

double ime_output_voltage(double m_z, const MaterialParams& params,
                          const DeviceGeometry& geometry) {
    if (!(geometry.h_fe_out > 0))
        throw std::invalid_argument("ime_output_voltage: zero output FE thickness");
    // E_IME = kappa_ime (h_int / h_fe_out) M ; V_OUT = E_IME h_fe_out.
    return params.kappa_ime * params.h_int * m_z;
}

double fe_capacitance(const MaterialParams& params, const DeviceGeometry& geometry,
                      const PhysicalConstants& pc) {
    if (!(geometry.h_fe_in > 0))
        throw std::invalid_argument("fe_capacitance: zero input FE thickness");
    return pc.eps0 * params.eps_fe * geometry.fe_in_area / geometry.h_fe_in;
}

double fe_charge_energy(int k_inputs, double v_fe, const MaterialParams& params,
                        const DeviceGeometry& geometry, const PhysicalConstants& pc) {
    if (k_inputs < 1) throw std::invalid_argument("fe_charge_energy: k_inputs must be >= 1");
    const double c = fe_capacitance(params, geometry, pc);
    return 0.5 * k_inputs * c * v_fe * v_fe;
}

double shm_resistance(const DeviceGeometry& geometry, const MaterialParams& params) {
    if (!(geometry.w_shm > 0) || !(geometry.h_shm > 0))
        throw std::invalid_argument("shm_resistance: zero cross-section");
    return params.rho_shm * geometry.l_shm / (geometry.w_shm * geometry.h_shm);
}

double joule_energy(double j_c, const DeviceGeometry& geometry,
                    const MaterialParams& params, const TransistorParams& transistor,
                    double t_propagate) {
    if (t_propagate < 0) throw std::invalid_argument("joule_energy: negative t_propagate");
    const double current = j_c * geometry.w_shm * geometry.h_shm;
    return current * current * (transistor.r_on + shm_resistance(geometry, params)) *
           t_propagate;
}

double tx_energy(int k_inputs, double v_rst, double v_prop, double v_out, double c_g) {
    if (k_inputs < 1) throw std::invalid_argument("tx_energy: k_inputs must be >= 1");
    return 0.5 * c_g *
           ((k_inputs + 1) * v_rst * v_rst + v_prop * v_prop + 2.0 * v_out * v_out);
}

double qtransfer_delay(const TransistorParams& transistor, double load_capacitance,
                       double r_wire, double c_wire) {
    if (load_capacitance < 0 || r_wire < 0 || c_wire < 0)
        throw std::invalid_argument("qtransfer_delay: RC values must be non-negative");
    return transistor.k_inv * transistor.r_on * load_capacitance +
           0.69 * r_wire * c_wire;
}

GateReport gate_report(GateKind kind, const MaterialParams& params,
                       const DeviceGeometry& geometry, const TransistorParams& transistor,
                       const DriveParams& drive, double t_nucleate, double t_propagate,
                       const PhysicalConstants& pc) {
    GateReport r;
    r.gate_kind = kind;
    r.k_inputs = default_inputs(kind);
    r.drive = drive;

    r.delays.t_nucleate = t_nucleate;
    r.delays.t_propagate = t_propagate;
    const double c_load = fe_capacitance(params, geometry, pc) + transistor.c_g;
    r.delays.t_qtransfer =
        qtransfer_delay(transistor, c_load, transistor.r_wire, transistor.c_wire);

    // Convention-scaled inverse-ME output, clamped to the supply rail.
    const double supply = std::max(drive.v_prop, drive.v_rst);
    const double v_raw =
        params.ime_scale * ime_output_voltage(params.ms_pma, params, geometry);
    r.v_out = std::clamp(v_raw, -supply, supply);

    r.energies.e_fe = fe_charge_energy(r.k_inputs, drive.v_fe, params, geometry, pc);
    r.energies.e_tx = tx_energy(r.k_inputs, drive.v_rst, drive.v_prop, r.v_out,
                                transistor.c_g);
    r.energies.e_joule = joule_energy(drive.j_c, geometry, params, transistor, t_propagate);
    r.energies.e_leakage = transistor.leak_energy_per_gate;

    r.t_comet = 2.0 * (r.delays.t_nucleate + r.delays.t_propagate + r.delays.t_qtransfer);
    r.e_comet = 2.0 * (r.energies.e_fe + r.energies.e_tx + r.energies.e_joule +
                       r.energies.e_leakage);
    return r;
}

namespace {

std::string fmt_ps(double seconds, bool display) {
    return display ? csv::fixed1(seconds * 1e12) : csv::num(seconds);
}
std::string fmt_aj(double joules, bool display) {
    return display ? csv::fixed1(joules * 1e18) : csv::num(joules);
}

} // namespace

std::string emit_table2(const std::vector<std::pair<GateReport, GateReport>>& rows,
                        bool display) {
    std::ostringstream out;
    out << "v_fe_mV,t_nucleate_maj3,t_nucleate_inv,t_propagate_maj3,t_propagate_inv,"
           "t_qtransfer_maj3,t_qtransfer_inv,t_comet_maj3,t_comet_inv,"
           "e_fe_maj3,e_fe_inv,e_tx_maj3,e_tx_inv,e_joule_maj3,e_joule_inv,"
           "e_leakage_maj3,e_leakage_inv,e_comet_maj3,e_comet_inv\n";
    for (const auto& [maj, inv] : rows) {
        out << (display ? csv::fixed1(maj.drive.v_fe * 1e3)
                        : csv::num(maj.drive.v_fe)) << ','
            << fmt_ps(maj.delays.t_nucleate, display) << ','
            << fmt_ps(inv.delays.t_nucleate, display) << ','
            << fmt_ps(maj.delays.t_propagate, display) << ','
            << fmt_ps(inv.delays.t_propagate, display) << ','
            << fmt_ps(maj.delays.t_qtransfer, display) << ','
            << fmt_ps(inv.delays.t_qtransfer, display) << ','
            << fmt_ps(maj.t_comet, display) << ',' << fmt_ps(inv.t_comet, display) << ','
            << fmt_aj(maj.energies.e_fe, display) << ','
            << fmt_aj(inv.energies.e_fe, display) << ','
            << fmt_aj(maj.energies.e_tx, display) << ','
            << fmt_aj(inv.energies.e_tx, display) << ','
            << fmt_aj(maj.energies.e_joule, display) << ','
            << fmt_aj(inv.energies.e_joule, display) << ','
            << fmt_aj(maj.energies.e_leakage, display) << ','
            << fmt_aj(inv.energies.e_leakage, display) << ','
            << fmt_aj(maj.e_comet, display) << ',' << fmt_aj(inv.e_comet, display)
            << '\n';
    }
    return out.str();
}

std::string report_to_json(const GateReport& r) {
    std::ostringstream out;
    const char* kind = r.gate_kind == GateKind::INV    ? "INV"
                       : r.gate_kind == GateKind::MAJ3 ? "MAJ3"
                                                       : "MAJ-K";
    out << "{\n"
        << "  \"gate\": \"" << kind << "\",\n"
        << "  \"k_inputs\": " << r.k_inputs << ",\n"
        << "  \"drive\": {\"v_fe\": " << csv::num(r.drive.v_fe)
        << ", \"j_c\": " << csv::num(r.drive.j_c)
        << ", \"v_prop\": " << csv::num(r.drive.v_prop)
        << ", \"v_rst\": " << csv::num(r.drive.v_rst) << "},\n"
        << "  \"delays\": {\"t_nucleate\": " << csv::num(r.delays.t_nucleate)
        << ", \"t_propagate\": " << csv::num(r.delays.t_propagate)
        << ", \"t_qtransfer\": " << csv::num(r.delays.t_qtransfer) << "},\n"
        << "  \"energies\": {\"e_fe\": " << csv::num(r.energies.e_fe)
        << ", \"e_tx\": " << csv::num(r.energies.e_tx)
        << ", \"e_joule\": " << csv::num(r.energies.e_joule)
        << ", \"e_leakage\": " << csv::num(r.energies.e_leakage) << "},\n"
        << "  \"t_comet\": " << csv::num(r.t_comet) << ",\n"
        << "  \"e_comet\": " << csv::num(r.e_comet) << ",\n"
        << "  \"v_out\": " << csv::num(r.v_out) << "\n"
        << "}\n";
    return out.str();
}

} // namespace comet
