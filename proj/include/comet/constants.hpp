#ifndef COMET_CONSTANTS_HPP
#define COMET_CONSTANTS_HPP

namespace comet {

// Fundamental constants in SI units. Two precision modes are provided:
// full CODATA values (default for all computation) and a truncated set
// used for regressions against published tables.
struct PhysicalConstants {
    double eps0;     // vacuum permittivity [F/m]
    double mu0;      // vacuum permeability [T·m/A]
    double e_charge; // elementary charge [C]
    double gamma_g;  // electron gyromagnetic ratio [rad/(s·T)]
    double hbar;     // reduced Planck constant [J·s]
    double mu_B;     // Bohr magneton [J/T]
    double c_light;  // speed of light [m/s]

    static constexpr PhysicalConstants codata() {
        return {8.8541878128e-12,
                1.25663706212e-6,
                1.602176634e-19,
                1.76085963023e11,
                1.054571817e-34,
                9.2740100783e-24,
                2.99792458e8};
    }

    // Truncated values as printed in the reference table.
    static constexpr PhysicalConstants paper() {
        return {8.85e-12,
                1.25e-6,
                1.60e-19,
                1.76e11,
                1.054571817e-34, // not printed; CODATA
                9.274e-24,
                3.0e8};
    }
};

} // namespace comet

#endif
