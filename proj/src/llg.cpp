#include "comet/llg.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "comet/csvio.hpp"
#include "comet/errors.hpp"

namespace comet {

MagnetizationGrid build_grid(const MaterialParams& mat, const DeviceGeometry& geom,
                             const GridBuildOptions& opts, const PhysicalConstants& pc) {
    mat.validate();
    if (!(opts.cell > 0) || opts.cell > 1.0000001e-9)
        throw std::invalid_argument("build_grid: cell size must be positive and <= 1 nm");

    MagnetizationGrid g;
    g.dx = g.dy = opts.cell;
    g.nx = static_cast<int>(std::lround(6.0 * geom.f_feat / opts.cell));
    g.ny = static_cast<int>(std::lround(geom.f_feat / opts.cell));
    const int n = g.nx * g.ny;

    const double cant = opts.cant_deg * M_PI / 180.0;
    const Vec3 m0{std::sin(cant), 0.0, std::cos(cant)};

    // In-plane shape anisotropy of the 2F x 1F x h_ima cap, transmitted to
    // the cells beneath it; scales with the cap thickness.
    double kc = 0.0;
    if (opts.with_ima && geom.h_ima > 0.0) {
        const double nz = prism_demag_nz(2.0 * geom.f_feat, geom.f_feat, geom.h_ima);
        const double nx = prism_demag_nx(2.0 * geom.f_feat, geom.f_feat, geom.h_ima);
        kc = opts.ima_coupling * 0.5 * pc.mu0 * mat.ms_ima * mat.ms_ima * (nz - nx) *
             (geom.h_ima / geom.h_pma);
    }

    const double alpha_grid = mat.alpha + mat.alpha_sp;
    g.cells.assign(n, m0);
    g.layer_map.assign(n, CellLayer::PMA);
    g.ms_map.assign(n, mat.ms_pma);
    g.ku_map.assign(n, mat.ku_pma);
    g.kc_map.assign(n, 0.0);
    g.easy_axis_map.assign(n, Vec3{0, 0, 1});
    g.zeeman_mask.assign(n, 0.0);
    g.alpha_map.assign(n, alpha_grid);
    g.a_ex = mat.a_ex;
    g.alpha = alpha_grid;

    // Local demag factor of the finite film: the midplane field of a
    // uniformly magnetized slab drops from Ms inside to ~Ms/2 at the faces,
    // so edge cells sit in a higher effective barrier. The edge deficit is
    // scaled by edge_hardening (see GridBuildOptions).
    g.nz_map.assign(n, 1.0);
    const double lx = g.nx * g.dx, ly = g.ny * g.dy, h = geom.h_pma;
    auto axis_profile = [h](double d_lo, double d_hi) {
        return (std::atan(2.0 * d_lo / h) + std::atan(2.0 * d_hi / h)) / M_PI;
    };
    for (int j = 0; j < g.ny; ++j) {
        const double y = (j + 0.5) * g.dy;
        const double py = axis_profile(y, ly - y);
        for (int i = 0; i < g.nx; ++i) {
            const double x = (i + 0.5) * g.dx;
            const double px = axis_profile(x, lx - x);
            const double deficit = opts.edge_hardening * (1.0 - px) + (1.0 - py);
            g.nz_map[g.index(i, j)] = std::max(0.0, 1.0 - deficit);
        }
    }

    if (kc > 0.0) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if ((i + 0.5) * g.dx < 2.0 * geom.f_feat) {
                    const int c = g.index(i, j);
                    g.layer_map[c] = CellLayer::PMA_UNDER_IMA;
                    g.kc_map[c] = kc;
                }
    }

    const double len = g.nx * g.dx;
    const double ab_len = opts.absorber_len < 0 ? 2.0 * geom.f_feat : opts.absorber_len;
    if (ab_len > 0.0) {
        const double x0 = len - ab_len;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double x = (i + 0.5) * g.dx;
                if (x > x0) {
                    const double w = (x - x0) / ab_len;
                    const int c = g.index(i, j);
                    g.alpha_map[c] =
                        alpha_grid + (opts.absorber_alpha - alpha_grid) * w * w;
                }
            }
    }
    return g;
}

Vec3 effective_field(const MagnetizationGrid& g, int i, int j, const Vec3& h_zeeman,
                     [[maybe_unused]] const MaterialParams& params,
                     const PhysicalConstants& pc) {
    if (!g.in_bounds(i, j)) throw std::invalid_argument("effective_field: cell out of bounds");
    const int c = g.index(i, j);
    const Vec3& m = g.cells[c];
    const double ms = g.ms_map[c];

    Vec3 h = h_zeeman;

    // Uniaxial (easy-axis) anisotropy.
    const Vec3& e = g.easy_axis_map[c];
    h += (2.0 * g.ku_map[c] / (pc.mu0 * ms) * dot(m, e)) * e;

    // In-plane coupling term on composite cells (easy x axis).
    if (g.kc_map[c] != 0.0)
        h += Vec3{2.0 * g.kc_map[c] / (pc.mu0 * ms) * m.x, 0.0, 0.0};

    // Thin-film local demagnetization with the finite-film edge profile.
    h += Vec3{0.0, 0.0, -g.nz_map[c] * ms * m.z};

    // 5-point Laplacian exchange, free (Neumann) boundaries.
    const double cex = 2.0 * g.a_ex / (pc.mu0 * ms);
    Vec3 lap{0, 0, 0};
    const double ix2 = 1.0 / (g.dx * g.dx), iy2 = 1.0 / (g.dy * g.dy);
    if (i > 0) lap += ix2 * (g.cells[g.index(i - 1, j)] - m);
    if (i + 1 < g.nx) lap += ix2 * (g.cells[g.index(i + 1, j)] - m);
    if (j > 0) lap += iy2 * (g.cells[g.index(i, j - 1)] - m);
    if (j + 1 < g.ny) lap += iy2 * (g.cells[g.index(i, j + 1)] - m);
    h += cex * lap;

    return h;
}

namespace {

// dm/dt for every cell from the current grid state.
void llg_rhs(const MagnetizationGrid& g, const Vec3& h_zee, const MaterialParams& params,
             const PhysicalConstants& pc, std::vector<Vec3>& out) {
    const double geff = pc.gamma_g * pc.mu0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c = g.index(i, j);
            const Vec3 h =
                effective_field(g, i, j, g.zeeman_mask[c] * h_zee, params, pc);
            if (!finite(h)) throw NumericFailure("llg_step: non-finite effective field");
            const double a = g.alpha_map[c];
            const Vec3& m = g.cells[c];
            const Vec3 mxh = cross(m, h);
            out[c] = -geff / (1.0 + a * a) * (mxh + a * cross(m, mxh));
        }
    }
}

// Single RK4 attempt; returns the max pre-renormalization norm drift.
double rk4_attempt(MagnetizationGrid& g, const std::function<Vec3(double)>& h_fn,
                   const MaterialParams& params, double dt, const PhysicalConstants& pc) {
    const int n = g.nx * g.ny;
    static thread_local std::vector<Vec3> k1, k2, k3, k4;
    k1.resize(n); k2.resize(n); k3.resize(n); k4.resize(n);

    const double t0 = g.t_now;
    MagnetizationGrid stage = g;

    llg_rhs(g, h_fn(t0), params, pc, k1);
    for (int c = 0; c < n; ++c) stage.cells[c] = g.cells[c] + 0.5 * dt * k1[c];
    llg_rhs(stage, h_fn(t0 + 0.5 * dt), params, pc, k2);
    for (int c = 0; c < n; ++c) stage.cells[c] = g.cells[c] + 0.5 * dt * k2[c];
    llg_rhs(stage, h_fn(t0 + 0.5 * dt), params, pc, k3);
    for (int c = 0; c < n; ++c) stage.cells[c] = g.cells[c] + dt * k3[c];
    llg_rhs(stage, h_fn(t0 + dt), params, pc, k4);

    double drift = 0.0;
    for (int c = 0; c < n; ++c) {
        Vec3 m = g.cells[c] + (dt / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        drift = std::max(drift, std::fabs(m.norm() - 1.0));
        g.cells[c] = m.normalized();
    }
    g.t_now = t0 + dt;
    return drift;
}

} // namespace

MagnetizationGrid llg_step(const MagnetizationGrid& grid,
                           const std::function<Vec3(double)>& h_zeeman_fn,
                           const MaterialParams& params, double dt,
                           const PhysicalConstants& pc) {
    if (!(dt > 0)) throw std::invalid_argument("llg_step: dt must be positive");

    MagnetizationGrid out = grid;
    // Reject-and-halve: redo the interval with smaller substeps whenever the
    // pre-renormalization drift exceeds 1e-3.
    int halvings = 0;
    for (;;) {
        MagnetizationGrid trial = grid;
        const long nsub = 1L << halvings;
        const double sub = dt / static_cast<double>(nsub);
        double drift = 0.0;
        for (long s = 0; s < nsub; ++s)
            drift = std::max(drift, rk4_attempt(trial, h_zeeman_fn, params, sub, pc));
        if (drift < 1e-3) {
            trial.last_drift = drift;
            out = std::move(trial);
            break;
        }
        if (++halvings > 6)
            throw TimestepTooLarge("llg_step: drift persists after repeated halving");
    }
    return out;
}

double total_energy(const MagnetizationGrid& g, const Vec3& h_zeeman,
                    [[maybe_unused]] const MaterialParams& params,
                    const PhysicalConstants& pc) {
    const double vol = g.dx * g.dy * 1e-9; // cell volume with the 1 nm film (scale only)
    double e = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c = g.index(i, j);
            const Vec3& m = g.cells[c];
            const double ms = g.ms_map[c];
            const double mz_e = dot(m, g.easy_axis_map[c]);
            e += vol * g.ku_map[c] * (1.0 - mz_e * mz_e);
            if (g.kc_map[c] != 0.0) e += vol * g.kc_map[c] * (1.0 - m.x * m.x);
            e += vol * 0.5 * pc.mu0 * g.nz_map[c] * ms * ms * m.z * m.z;
            e -= vol * pc.mu0 * ms * g.zeeman_mask[c] * dot(m, h_zeeman);
            // Exchange over right/up pairs so each bond counts once.
            if (i + 1 < g.nx)
                e += vol * g.a_ex * (m - g.cells[g.index(i + 1, j)]).norm2() / (g.dx * g.dx);
            if (j + 1 < g.ny)
                e += vol * g.a_ex * (m - g.cells[g.index(i, j + 1)]).norm2() / (g.dy * g.dy);
        }
    }
    return e;
}

MagnetizationGrid relax(const MagnetizationGrid& grid, const MaterialParams& params,
                        double duration, double dt, const PhysicalConstants& pc) {
    MagnetizationGrid g = grid;
    if (duration <= 0.0) return g;
    auto zero = [](double) { return Vec3{}; };
    const long steps = static_cast<long>(std::llround(duration / dt));
    for (long s = 0; s < steps; ++s) g = llg_step(g, zero, params, dt, pc);
    return g;
}

double composite_tilt_deg(const MagnetizationGrid& g) {
    double acc = 0.0;
    long count = 0;
    for (std::size_t c = 0; c < g.cells.size(); ++c) {
        if (g.layer_map[c] == CellLayer::PMA_UNDER_IMA) {
            const double mz = std::clamp(g.cells[c].z, -1.0, 1.0);
            acc += std::acos(mz) * 180.0 / M_PI;
            ++count;
        }
    }
    return count > 0 ? acc / static_cast<double>(count) : 0.0;
}

namespace {

double strip_mean_mz(const MagnetizationGrid& g, double x_lo, double x_hi) {
    double acc = 0.0;
    long count = 0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = (i + 0.5) * g.dx;
            if (x >= x_lo && x < x_hi) {
                acc += g.cells[g.index(i, j)].z;
                ++count;
            }
        }
    }
    return count > 0 ? acc / static_cast<double>(count) : 0.0;
}

} // namespace

LlgRunResult nucleate(const MagnetizationGrid& relaxed, double v_fe,
                      const MaterialParams& params, const DeviceGeometry& geometry,
                      const LandauCoefficients& coeffs, const NucleateOptions& opts,
                      const PhysicalConstants& pc) {
    const double window = opts.window_len > 0 ? opts.window_len : 2.0 * geometry.f_feat;
    // The wall parks at the window edge, so a strip centered exactly there
    // averages to zero; watch the F-wide band whose downstream edge is the
    // nucleation point instead.
    const double strip_edge = opts.strip_center > 0 ? opts.strip_center : window;
    const double strip_lo = strip_edge - geometry.f_feat;
    const double strip_hi = strip_edge;

    MagnetizationGrid g = relaxed;
    g.t_now = 0.0;
    // Plate-edge fringing: the drive rolls off over the FE thickness scale
    // at both capacitor edges, so a 1F plate keeps only a small
    // full-strength core.
    const double fringe = 1.5 * geometry.h_fe_in;
    auto taper = [fringe](double d) {
        if (d >= fringe) return 1.0;
        if (d <= 0.0) return 0.0;
        return 0.5 * (1.0 - std::cos(M_PI * d / fringe));
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = (i + 0.5) * g.dx;
            const double w = (x < window) ? taper(x) * taper(window - x) : 0.0;
            g.zeeman_mask[g.index(i, j)] = w;
        }

    LlgRunResult res;

    const MeFieldTrace me = me_drive_trace(v_fe, params, geometry, coeffs, pc,
                                           opts.horizon, opts.dt);
    // The z amplitude from the chain is applied at the ME stack's polar
    // angle; the in-plane component follows the cant direction (+x).
    const double me_th = params.me_tilt_deg * M_PI / 180.0;
    const double sin_th = std::sin(me_th), cos_th = std::cos(me_th);
    auto h_fn = [&me, sin_th, cos_th](double t) {
        const double a = me.at(t); // negative for positive drive voltage
        return Vec3{-a * sin_th, 0.0, a * cos_th};
    };

    const double init_sign = strip_mean_mz(g, strip_lo, strip_hi) >= 0 ? 1.0 : -1.0;
    const long steps_per_sample = std::max(1L, std::lround(opts.sample_dt / opts.dt));
    const long total_samples = static_cast<long>(opts.horizon / opts.sample_dt);

    int flipped_run = 0;
    std::optional<double> first_flip;
    if (opts.keep_trace) res.trace.emplace_back(0.0, strip_mean_mz(g, strip_lo, strip_hi));

    for (long s = 1; s <= total_samples; ++s) {
        for (long k = 0; k < steps_per_sample; ++k)
            g = llg_step(g, h_fn, params, opts.dt, pc);
        const double mean = strip_mean_mz(g, strip_lo, strip_hi);
        if (opts.keep_trace) res.trace.emplace_back(g.t_now, mean);
        if (mean * init_sign < 0.0) {
            if (flipped_run == 0) first_flip = g.t_now;
            if (++flipped_run >= 3) {
                res.nucleated = true;
                res.t_nucleate = first_flip;
                res.final_grid = std::move(g);
                return res;
            }
        } else {
            flipped_run = 0;
            first_flip.reset();
        }
    }

    res.nucleated = false;
    res.final_grid = std::move(g);
    return res;
}

std::vector<std::pair<double, std::optional<double>>> ima_thickness_sweep(
    const std::vector<double>& thicknesses, const MaterialParams& params,
    const DeviceGeometry& geometry, const LandauCoefficients& coeffs, double v_fe,
    const GridBuildOptions& gopts, const NucleateOptions& nopts,
    const PhysicalConstants& pc) {
    for (double h : thicknesses)
        if (h < 0) throw std::invalid_argument("ima_thickness_sweep: thickness must be >= 0");

    std::vector<std::pair<double, std::optional<double>>> out;
    out.reserve(thicknesses.size());
    for (double h : thicknesses) {
        DeviceGeometry geom = geometry;
        geom.h_ima = h;
        GridBuildOptions go = gopts;
        go.with_ima = h > 0.0;
        MagnetizationGrid g = relax(build_grid(params, geom, go, pc), params, 200e-12,
                                    nopts.dt, pc);
        const LlgRunResult r = nucleate(g, v_fe, params, geom, coeffs, nopts, pc);
        out.emplace_back(h, r.t_nucleate);
    }
    return out;
}

std::optional<double> find_nucleation_threshold(
    NucleationCase kind, const MaterialParams& params, const DeviceGeometry& geometry,
    const LandauCoefficients& coeffs, const GridBuildOptions& gopts,
    const NucleateOptions& nopts, double v_lo, double v_hi, double rel_tol,
    const PhysicalConstants& pc) {
    GridBuildOptions go = gopts;
    NucleateOptions no = nopts;
    go.with_ima = (kind == NucleationCase::Composite2F);
    no.window_len = (kind == NucleationCase::NoIma1F) ? geometry.f_feat
                                                      : 2.0 * geometry.f_feat;
    no.strip_center = no.window_len;

    const MagnetizationGrid relaxed =
        relax(build_grid(params, geometry, go, pc), params, 200e-12, no.dt, pc);

    auto nucleates = [&](double v) {
        return nucleate(relaxed, v, params, geometry, coeffs, no, pc).nucleated;
    };

    if (!nucleates(v_hi)) return std::nullopt;
    if (nucleates(v_lo)) return v_lo;

    double lo = v_lo, hi = v_hi;
    while ((hi - lo) > rel_tol * hi) {
        const double mid = std::sqrt(lo * hi); // geometric bisection
        (nucleates(mid) ? hi : lo) = mid;
    }
    return hi;
}

void write_grid_csv(const MagnetizationGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_grid_csv: cannot open " + path);
    out << "x,y,mx,my,mz\n";
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const Vec3& m = grid.cells[grid.index(i, j)];
            out << csv::num((i + 0.5) * grid.dx) << ',' << csv::num((j + 0.5) * grid.dy)
                << ',' << csv::num(m.x) << ',' << csv::num(m.y) << ',' << csv::num(m.z)
                << '\n';
        }
}

} // namespace comet
