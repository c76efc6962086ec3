#ifndef COMET_LLG_HPP
#define COMET_LLG_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "comet/constants.hpp"
#include "comet/lkh.hpp"
#include "comet/params.hpp"
#include "comet/vec.hpp"

namespace comet {

enum class CellLayer : std::uint8_t { PMA = 0, PMA_UNDER_IMA = 1 };

// Finite-difference grid over the PMA-FM channel (one cell through the
// 1 nm thickness). Cells under the IMA-FM cap carry an added in-plane
// shape-anisotropy term transmitted by the interlayer exchange.
struct MagnetizationGrid {
    int nx = 0, ny = 0;
    double dx = 1e-9, dy = 1e-9;
    double t_now = 0.0;
    std::vector<Vec3> cells;          // unit magnetization
    std::vector<CellLayer> layer_map;
    std::vector<double> ms_map;       // [A/m]
    std::vector<double> ku_map;       // [J/m^3]
    std::vector<double> kc_map;       // in-plane coupling anisotropy [J/m^3]
    std::vector<Vec3> easy_axis_map;  // z for PMA cells
    std::vector<double> zeeman_mask; // per-cell drive weight (capacitor fringe taper)
    std::vector<double> alpha_map;    // per-cell damping (absorber ramp at the far end)
    std::vector<double> nz_map;       // local thin-film demag factor (< 1 near edges)
    double a_ex = 0.0;
    double alpha = 0.0;
    // Largest |1 - |m|| observed before renormalization in the last step.
    double last_drift = 0.0;

    int index(int i, int j) const { return j * nx + i; }
    bool in_bounds(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
};

struct GridBuildOptions {
    double cell = 1e-9;       // <= 1 nm per the solver contract
    double cant_deg = 1.0;    // initial tilt of m toward +x (symmetry seed)
    bool with_ima = true;     // place the IMA cap over the first 2F
    double ima_coupling = 1.8; // transfer efficiency of the IMA shape term
    // Absorbing layer at the far (output) end: the channel continues beyond
    // the simulated 6F, so spin waves leaving the nucleation region must not
    // bounce back. Damping ramps quadratically to absorber_alpha over the
    // last absorber_len of the channel; negative length means 2F.
    double absorber_len = -1.0;
    double absorber_alpha = 0.5;
    // Multiplier on the edge deficit of the local demag factor. The midplane
    // profile underestimates the magnetostatic stiffening of patterned film
    // ends; values > 1 deepen it over the few edge columns.
    double edge_hardening = 6.0;
};

// Builds the 6F x 1F channel grid with the composite cap over [0, 2F).
MagnetizationGrid build_grid(const MaterialParams& mat, const DeviceGeometry& geom,
                             const GridBuildOptions& opts = {},
                             const PhysicalConstants& pc = PhysicalConstants::codata());

// Effective field at one cell: Zeeman + uniaxial anisotropy + thin-film
// local demagnetization + 5-point exchange Laplacian (free boundaries),
// plus the in-plane coupling term on composite cells. Fields in A/m.
Vec3 effective_field(const MagnetizationGrid& grid, int i, int j, const Vec3& h_zeeman,
                     const MaterialParams& params,
                     const PhysicalConstants& pc = PhysicalConstants::codata());

// One RK4 step over the whole grid under the time-dependent Zeeman field
// (applied through the grid's zeeman mask). Renormalizes every cell and
// rejects/halves internally if the pre-renormalization drift exceeds 1e-3.
MagnetizationGrid llg_step(const MagnetizationGrid& grid,
                           const std::function<Vec3(double)>& h_zeeman_fn,
                           const MaterialParams& params, double dt,
                           const PhysicalConstants& pc = PhysicalConstants::codata());

// Total micromagnetic energy (exchange + anisotropies + local demag +
// Zeeman) [J]; used by the descent/conservation checks.
double total_energy(const MagnetizationGrid& grid, const Vec3& h_zeeman,
                    const MaterialParams& params,
                    const PhysicalConstants& pc = PhysicalConstants::codata());

// Integrates with zero Zeeman field for `duration`.
MagnetizationGrid relax(const MagnetizationGrid& grid, const MaterialParams& params,
                        double duration = 200e-12, double dt = 50e-15,
                        const PhysicalConstants& pc = PhysicalConstants::codata());

// Mean polar angle (from +z, degrees) over the composite region.
double composite_tilt_deg(const MagnetizationGrid& grid);

struct LlgRunResult {
    std::optional<double> t_nucleate;
    bool nucleated = false;
    MagnetizationGrid final_grid;
    std::vector<std::pair<double, double>> trace; // (time, strip mean m_z)
};

struct NucleateOptions {
    double horizon = 200e-12;
    double dt = 50e-15;
    double sample_dt = 1e-12;
    double window_len = 0.0;  // Zeeman window length; 0 -> 2F
    double strip_center = 0.0; // detector strip center; 0 -> window_len
    bool keep_trace = false;
};

// Drives the LKh+ME chain from the applied voltage, applies the resulting
// field over the input window and watches the 1F strip at the window edge
// for a persistent m_z sign flip (three consecutive 1 ps samples).
LlgRunResult nucleate(const MagnetizationGrid& relaxed, double v_fe,
                      const MaterialParams& params, const DeviceGeometry& geometry,
                      const LandauCoefficients& coeffs, const NucleateOptions& opts = {},
                      const PhysicalConstants& pc = PhysicalConstants::codata());

// t_nucleate as a function of the IMA cap thickness at fixed drive.
std::vector<std::pair<double, std::optional<double>>> ima_thickness_sweep(
    const std::vector<double>& thicknesses, const MaterialParams& params,
    const DeviceGeometry& geometry, const LandauCoefficients& coeffs, double v_fe,
    const GridBuildOptions& gopts = {}, const NucleateOptions& nopts = {},
    const PhysicalConstants& pc = PhysicalConstants::codata());

enum class NucleationCase { Composite2F, NoIma2F, NoIma1F };

// Minimum nucleating voltage at the given horizon, by bisection over v_fe.
// Returns nullopt when even v_hi fails to nucleate.
std::optional<double> find_nucleation_threshold(
    NucleationCase kind, const MaterialParams& params, const DeviceGeometry& geometry,
    const LandauCoefficients& coeffs, const GridBuildOptions& gopts = {},
    const NucleateOptions& nopts = {}, double v_lo = 5e-3, double v_hi = 2.56,
    double rel_tol = 0.02, const PhysicalConstants& pc = PhysicalConstants::codata());

// Grid snapshot as CSV rows (x, y, mx, my, mz).
void write_grid_csv(const MagnetizationGrid& grid, const std::string& path);

} // namespace comet

#endif
