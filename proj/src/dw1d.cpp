#include "comet/dw1d.hpp"

#include <cmath>
#include <stdexcept>

#include "comet/errors.hpp"

namespace comet {

namespace {

// Magnetostatic bracket of the width equation, h/(h+Delta) - h/(h+w).
double width_bracket(double delta, double h, double w) {
    return h / (h + delta) - h / (h + w);
}

// Right-hand side of the fixed-point form of the width equation.
// Returns a negative value when the square root argument is not positive,
// which signals the caller to fall back to bisection.
double width_map(double delta, double phi, const MaterialParams& m,
                 const DeviceGeometry& g, const PhysicalConstants& pc) {
    const double delta0 = std::sqrt(m.a_ex / m.ku_pma);
    const double c = pc.mu0 * m.ms_pma * m.ms_pma / m.ku_pma;
    const double s2 = std::sin(phi) * std::sin(phi);
    const double arg = 1.0 + c * width_bracket(delta, g.h_pma, g.w_shm) * s2;
    if (!(arg > 0)) return -1.0;
    return delta0 / std::sqrt(arg);
}

} // namespace

double dw_width(double phi, const MaterialParams& params, const DeviceGeometry& geometry,
                const PhysicalConstants& pc, double seed) {
    params.validate();
    if (!(geometry.h_pma > 0) || !(geometry.w_shm > 0))
        throw std::invalid_argument("dw_width: geometry must have positive h_pma and width");

    const double delta0 = std::sqrt(params.a_ex / params.ku_pma);
    double delta = seed > 0 ? seed : delta0;

    // Damped fixed-point iteration.
    for (int i = 0; i < 200; ++i) {
        const double next = width_map(delta, phi, params, geometry, pc);
        if (next < 0) break; // unphysical region, use bisection
        const double mixed = 0.5 * (delta + next);
        if (std::fabs(mixed - delta) < 1e-13 * delta) {
            delta = mixed;
            const double res = width_map(delta, phi, params, geometry, pc);
            if (res > 0 && std::fabs(delta - res) < 1e-12 * delta) return delta;
        }
        delta = mixed;
    }

    // Bisection fallback on g(x) = x - F(x).
    double lo = 1e-15, hi = 1e-6;
    auto g = [&](double x) {
        const double f = width_map(x, phi, params, geometry, pc);
        return f < 0 ? 1.0 : x - f;
    };
    if (!(g(lo) < 0.0) || !(g(hi) > 0.0))
        throw WidthSolveFailure("dw_width: no root in (0, 1 um); unphysical parameters");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

DriveFields drive_fields(const MaterialParams& params, double j_c, double delta,
                         const PhysicalConstants& pc) {
    if (!(params.ms_pma > 0)) throw std::invalid_argument("drive_fields: zero Ms");
    if (!(delta > 0)) throw std::invalid_argument("drive_fields: delta must be positive");
    DriveFields f;
    f.h_k = 2.0 * params.ku_pma / params.ms_pma;
    f.h_she = pc.hbar * params.theta_she * j_c / (2.0 * pc.mu0 * pc.e_charge * params.ms_pma);
    f.h_dmi = params.d_dmi / (pc.mu0 * params.ms_pma * delta);
    f.b_stt = pc.mu_B * params.p_pma * j_c / (pc.e_charge * params.ms_pma);
    return f;
}

namespace {

// Tesla-consistent fields entering the equations of motion. The anisotropy
// torque on the phase comes from the same magnetostatic term that widens the
// wall (the bracket of the width equation); the SHE field carries the
// 1/thickness factor of the underlying spin-current absorption.
struct DwFields {
    double b_kperp; // transverse wall anisotropy [T]
    double b_she;   // spin-Hall field [T]
    double b_dmi;   // DMI field [T]
    double u_stt;   // STT drift velocity [m/s]
};

DwFields dynamic_fields(const MaterialParams& m, const DeviceGeometry& g, double j_c,
                        double delta, const PhysicalConstants& pc, bool include_stt) {
    DwFields f;
    f.b_kperp = 2.0 * pc.mu0 * m.ms_pma * width_bracket(delta, g.h_pma, g.w_shm);
    f.b_she = m.she_sign * pc.hbar * m.theta_she * j_c /
              (2.0 * pc.e_charge * m.ms_pma * g.h_pma);
    f.b_dmi = m.dmi_sign * m.d_dmi / (m.ms_pma * delta);
    f.u_stt = include_stt
                  ? m.stt_sign * m.stt_current_fraction * pc.mu_B * m.p_pma * j_c /
                        (pc.e_charge * m.ms_pma)
                  : 0.0;
    return f;
}

struct DwRates {
    double dq;
    double dphi;
};

DwRates dw_rates(double phi, double delta, const MaterialParams& m,
                 const DeviceGeometry& g, double j_c, const PhysicalConstants& pc,
                 bool include_stt) {
    const DwFields f = dynamic_fields(m, g, j_c, delta, pc, include_stt);
    const double a = m.alpha;
    const double inv = 1.0 / (1.0 + a * a);
    const double gamma = pc.gamma_g;
    const double s = std::sin(phi), c = std::cos(phi), s2 = std::sin(2.0 * phi);
    const double half_pi = M_PI / 2.0;

    DwRates r;
    r.dq = inv * (-gamma * delta * (f.b_kperp / 2.0) * s2 +
                  (1.0 + a * a * m.beta_stt) * f.u_stt +
                  gamma * delta * half_pi * (a * f.b_she * c + f.b_dmi * s));
    r.dphi = inv * (-gamma * a * (f.b_kperp / 2.0) * s2 +
                    (m.beta_stt - a) / delta * f.u_stt +
                    gamma * half_pi * (f.b_she * c + a * f.b_dmi * s));
    return r;
}

} // namespace

DwState dw_step(const DwState& state, const MaterialParams& params,
                const DeviceGeometry& geometry, double j_c, double dt,
                const PhysicalConstants& pc, bool include_stt) {
    if (!(dt > 0)) throw std::invalid_argument("dw_step: dt must be positive");

    double seed = state.delta;
    auto rates_at = [&](double phi) {
        const double delta = dw_width(phi, params, geometry, pc, seed);
        seed = delta;
        return dw_rates(phi, delta, params, geometry, j_c, pc, include_stt);
    };

    const DwRates k1 = rates_at(state.phi);
    const DwRates k2 = rates_at(state.phi + 0.5 * dt * k1.dphi);
    const DwRates k3 = rates_at(state.phi + 0.5 * dt * k2.dphi);
    const DwRates k4 = rates_at(state.phi + dt * k3.dphi);

    DwState out;
    out.phi = state.phi + dt / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    out.q_pos = state.q_pos + dt / 6.0 * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
    out.delta = dw_width(out.phi, params, geometry, pc, seed);
    out.t_now = state.t_now + dt;
    if (!std::isfinite(out.phi) || !std::isfinite(out.q_pos))
        throw NumericFailure("dw_step: non-finite state");
    return out;
}

double equilibrium_phase(const MaterialParams& params, const DeviceGeometry& geometry,
                         const DwOptions& opts, const PhysicalConstants& pc) {
    DwState s;
    s.phi = M_PI / 2.0; // Bloch seed; the DMI term selects the Neel branch
    s.delta = dw_width(s.phi, params, geometry, pc);
    const long steps = static_cast<long>(opts.phi_relax / opts.dt);
    for (long i = 0; i < steps; ++i)
        s = dw_step(s, params, geometry, 0.0, opts.dt, pc, opts.include_stt);
    return s.phi;
}

PropagateResult propagate(double distance, const MaterialParams& params,
                          const DeviceGeometry& geometry, double j_c,
                          const DwOptions& opts, const PhysicalConstants& pc,
                          bool keep_trace) {
    if (!(distance > 0)) throw std::invalid_argument("propagate: distance must be positive");

    DwState s;
    s.phi = equilibrium_phase(params, geometry, opts, pc);
    s.delta = dw_width(s.phi, params, geometry, pc);

    PropagateResult res;
    if (keep_trace) res.trace.push_back(s);

    const long max_steps = static_cast<long>(opts.horizon / opts.dt) + 1;
    for (long i = 0; i < max_steps; ++i) {
        const DwState next = dw_step(s, params, geometry, j_c, opts.dt, pc, opts.include_stt);
        if (keep_trace && (i % 10 == 0)) res.trace.push_back(next);
        if (next.q_pos >= distance) {
            // Linear interpolation of the crossing instant inside the step.
            const double frac = (distance - s.q_pos) / (next.q_pos - s.q_pos);
            res.t_propagate = s.t_now + frac * opts.dt;
            res.v_avg = distance / res.t_propagate;
            if (keep_trace) res.trace.push_back(next);
            return res;
        }
        s = next;
    }
    throw PropagationStall("propagate: horizon exceeded before reaching the target distance");
}

std::vector<std::pair<double, double>> velocity_vs_jc(
    const std::vector<double>& jc_list, const MaterialParams& params,
    const DeviceGeometry& geometry, const DwOptions& opts,
    const PhysicalConstants& pc) {
    for (std::size_t i = 0; i < jc_list.size(); ++i) {
        if (!(jc_list[i] > 0))
            throw std::invalid_argument("velocity_vs_jc: current densities must be positive");
        if (i > 0 && !(jc_list[i] > jc_list[i - 1]))
            throw std::invalid_argument("velocity_vs_jc: current densities must ascend");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(jc_list.size());
    const double distance = propagation_distance_for(GateKind::MAJ3, geometry);
    for (double jc : jc_list) {
        const PropagateResult r = propagate(distance, params, geometry, jc, opts, pc);
        out.emplace_back(jc, r.v_avg);
    }
    return out;
}

} // namespace comet
