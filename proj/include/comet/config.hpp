#ifndef COMET_CONFIG_HPP
#define COMET_CONFIG_HPP

#include <string>
#include <vector>

#include "comet/dw1d.hpp"
#include "comet/llg.hpp"
#include "comet/params.hpp"

namespace comet {

// Ferroelectric calibration targets for the double-well coefficients.
struct FeTargets {
    double p_remnant = 2e-3;   // [C/m^2]
    double e_coercive = 1e5;   // [V/m]
};

// Parameter-space declaration for sweeps (section [space]).
struct ParameterSpace {
    std::vector<double> ms_values = {0.3e6, 0.4e6, 0.5e6};
    std::vector<double> ku_values = {0.5e6, 0.6e6, 1.0e6};
    std::vector<double> a_values = {10e-12, 20e-12, 30e-12, 40e-12};
    std::vector<double> alpha_values = {0.01, 0.05, 0.08, 0.1};
    std::vector<double> jc_values;          // default: 13 log-spaced over [1e10, 1e12]
    std::vector<double> vfe_values = {0.110, 0.150};

    static std::vector<double> default_jc_grid();
    ParameterSpace() { jc_values = default_jc_grid(); }
};

// Full run scenario: everything a solver invocation needs, as parsed from
// one configuration file plus overrides.
struct Scenario {
    std::string node = "15nm";
    bool paper_constants = false;
    MaterialParams material;
    TransistorParams transistor;
    DeviceGeometry geometry;
    DriveParams drive;
    FeTargets fe;
    GridBuildOptions llg_build;
    NucleateOptions llg_run;
    DwOptions dw;
    ParameterSpace space;

    PhysicalConstants constants() const {
        return paper_constants ? PhysicalConstants::paper() : PhysicalConstants::codata();
    }
    LandauCoefficients landau() const {
        return LandauCoefficients::from_targets(fe.p_remnant, fe.e_coercive);
    }

    static Scenario from_preset(const std::string& node);
};

// Parses the structured-text configuration. Unknown keys are rejected with
// the nearest known key named; unit suffixes are converted to SI. An empty
// document yields the defaults.
Scenario parse_config(const std::string& text);

// Reads a file and parses it.
Scenario load_config(const std::string& path);

// Applies one "section.key=value" override.
void apply_override(Scenario& s, const std::string& spec);

// Canonical serialization in SI units; reparsing reproduces the scenario
// bit for bit.
std::string serialize_config(const Scenario& s);

} // namespace comet

#endif
