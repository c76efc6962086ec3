#include "comet/params.hpp"

#include <cmath>

namespace comet {

TechnologyPreset preset_technology(const std::string& node) {
    TechnologyPreset p;
    p.material = MaterialParams{};
    if (node == "15nm") {
        p.geometry = DeviceGeometry::from_feature(15e-9);
        p.transistor.r_on = 3480.0;
        p.transistor.leak_energy_per_gate = 16.3e-18;
        p.transistor.r_wire = 0.0;
        p.transistor.c_wire = 0.0;
    } else if (node == "7nm") {
        p.geometry = DeviceGeometry::from_feature(7e-9);
        p.transistor.r_on = 4109.0;
        p.transistor.leak_energy_per_gate = 13.7e-18;
        // Fitted so the 7nm preset lands the published 6.2 ps transfer delay
        // with the shared k_inv anchor.
        p.transistor.r_wire = 6000.0;
        p.transistor.c_wire = 1.0e-16;
    } else {
        throw std::invalid_argument("unsupported technology preset: " + node);
    }
    return p;
}

namespace {

// One symmetric term bundle of the Aharoni expression.
double nz_term(double a, double b, double c) {
    const double r_abc = std::sqrt(a * a + b * b + c * c);
    const double r_ab = std::sqrt(a * a + b * b);
    const double r_bc = std::sqrt(b * b + c * c);
    const double r_ac = std::sqrt(a * a + c * c);

    double s = 0.0;
    s += (b * b - c * c) / (2.0 * b * c) * std::log((r_abc - a) / (r_abc + a));
    s += (a * a - c * c) / (2.0 * a * c) * std::log((r_abc - b) / (r_abc + b));
    s += b / (2.0 * c) * std::log((r_ab + a) / (r_ab - a));
    s += a / (2.0 * c) * std::log((r_ab + b) / (r_ab - b));
    s += c / (2.0 * a) * std::log((r_bc - b) / (r_bc + b));
    s += c / (2.0 * b) * std::log((r_ac - a) / (r_ac + a));
    s += 2.0 * std::atan2(a * b, c * r_abc);
    s += (a * a * a + b * b * b - 2.0 * c * c * c) / (3.0 * a * b * c);
    s += (a * a + b * b - 2.0 * c * c) / (3.0 * a * b * c) * r_abc;
    s += c / (a * b) * (r_ac + r_bc);
    s -= (std::pow(r_ab, 3) + std::pow(r_bc, 3) + std::pow(r_ac, 3)) / (3.0 * a * b * c);
    return s;
}

} // namespace

double prism_demag_nz(double lx, double ly, double lz) {
    if (!(lx > 0 && ly > 0 && lz > 0))
        throw std::invalid_argument("prism_demag_nz: edge lengths must be positive");
    // Semi-axes.
    const double a = lx / 2.0, b = ly / 2.0, c = lz / 2.0;
    return nz_term(a, b, c) / M_PI;
}

} // namespace comet
