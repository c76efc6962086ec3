#include "comet/dse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "comet/csvio.hpp"
#include "comet/dw1d.hpp"
#include "comet/errors.hpp"
#include "comet/llg.hpp"

namespace fs = std::filesystem;

namespace comet {

SweepMode sweep_mode_from_string(const std::string& name) {
    if (name == "nucleation") return SweepMode::Nucleation;
    if (name == "propagation") return SweepMode::Propagation;
    if (name == "full-gate") return SweepMode::FullGate;
    throw ConfigError("unknown sweep mode: " + name);
}

std::string to_string(SweepMode m) {
    switch (m) {
        case SweepMode::Nucleation: return "nucleation";
        case SweepMode::Propagation: return "propagation";
        default: return "full-gate";
    }
}

std::vector<DesignPoint> enumerate_space(
    const ParameterSpace& space, const std::function<bool(const DesignPoint&)>& filter) {
    std::vector<DesignPoint> out;
    long idx = 0;
    for (double ms : space.ms_values)
        for (double ku : space.ku_values)
            for (double a : space.a_values)
                for (double al : space.alpha_values)
                    for (double jc : space.jc_values)
                        for (double vfe : space.vfe_values) {
                            DesignPoint p;
                            p.index = idx++;
                            p.ms = ms; p.ku = ku; p.a_ex = a; p.alpha = al;
                            p.j_c = jc; p.v_fe = vfe;
                            if (!filter || filter(p)) out.push_back(std::move(p));
                        }
    return out;
}

namespace {

MaterialParams point_material(const DesignPoint& p, const Scenario& base) {
    MaterialParams m = base.material;
    m.ms_pma = p.ms;
    m.ku_pma = p.ku;
    m.a_ex = p.a_ex;
    m.alpha = p.alpha;
    return m;
}

} // namespace

void run_point(DesignPoint& point, SweepMode mode, const Scenario& base) {
    const PhysicalConstants pc = base.constants();
    const MaterialParams mat = point_material(point, base);
    const LandauCoefficients lc = base.landau();

    try {
        if ((mode == SweepMode::Nucleation || mode == SweepMode::FullGate) &&
            !point.nucleation_done) {
            MagnetizationGrid grid =
                relax(build_grid(mat, base.geometry, base.llg_build, pc), mat, 200e-12,
                      base.llg_run.dt, pc);
            const LlgRunResult r =
                nucleate(grid, point.v_fe, mat, base.geometry, lc, base.llg_run, pc);
            point.nucleated = r.nucleated;
            point.t_nucleate = r.t_nucleate;
            point.nucleation_done = true;
        }
        if ((mode == SweepMode::Propagation || mode == SweepMode::FullGate) &&
            !point.propagation_done) {
            const double dist = propagation_distance_for(GateKind::MAJ3, base.geometry);
            const PropagateResult r =
                propagate(dist, mat, base.geometry, point.j_c, base.dw, pc);
            point.t_propagate = r.t_propagate;
            point.v_avg = r.v_avg;
            point.propagation_done = true;
        }
        if (mode == SweepMode::FullGate && !point.gate_done) {
            if (point.nucleated && point.t_propagate) {
                DriveParams drive = base.drive;
                drive.v_fe = point.v_fe;
                drive.j_c = point.j_c;
                point.report =
                    gate_report(GateKind::MAJ3, mat, base.geometry, base.transistor,
                                drive, *point.t_nucleate, *point.t_propagate, pc);
            }
            point.gate_done = true;
        }
        point.status = (mode != SweepMode::Propagation && !point.nucleated)
                           ? "no-nucleation"
                           : "ok";
    } catch (const PropagationStall&) {
        point.status = "stalled";
        point.propagation_done = true;
    } catch (const SolverError& e) {
        point.status = std::string("error:") + e.what();
    }
}

std::string results_header() {
    return "index,ms,ku,a_ex,alpha,j_c,v_fe,nucleated,t_nucleate,t_propagate,v_avg,"
           "t_comet,e_comet,status";
}

std::string result_row(const DesignPoint& p) {
    auto opt = [](const std::optional<double>& v) {
        return v ? csv::num(*v) : std::string("nan");
    };
    std::vector<std::string> f = {
        std::to_string(p.index), csv::num(p.ms), csv::num(p.ku), csv::num(p.a_ex),
        csv::num(p.alpha), csv::num(p.j_c), csv::num(p.v_fe),
        p.nucleated ? "1" : "0", opt(p.t_nucleate), opt(p.t_propagate), opt(p.v_avg),
        p.report ? csv::num(p.report->t_comet) : "nan",
        p.report ? csv::num(p.report->e_comet) : "nan", p.status};
    return csv::join(f);
}

DesignPoint parse_result_row(const std::vector<std::string>& fields) {
    if (fields.size() != 14) throw IncompleteSweep("results row has wrong arity");
    DesignPoint p;
    auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
    auto opt = [&](const std::string& s) -> std::optional<double> {
        if (s == "nan") return std::nullopt;
        return num(s);
    };
    p.index = std::strtol(fields[0].c_str(), nullptr, 10);
    p.ms = num(fields[1]); p.ku = num(fields[2]); p.a_ex = num(fields[3]);
    p.alpha = num(fields[4]); p.j_c = num(fields[5]); p.v_fe = num(fields[6]);
    p.nucleated = fields[7] == "1";
    p.t_nucleate = opt(fields[8]);
    p.t_propagate = opt(fields[9]);
    p.v_avg = opt(fields[10]);
    p.status = fields[13];
    p.nucleation_done = p.propagation_done = true;
    return p;
}

std::vector<DesignPoint> run_sweep(const SweepManifest& manifest) {
    fs::create_directories(manifest.out_dir);
    const std::string checkpoint_path = manifest.out_dir + "/checkpoint.csv";
    const std::string results_path = manifest.out_dir + "/results.csv";

    std::vector<DesignPoint> points = enumerate_space(manifest.scenario.space);

    // Resume: map completed indices from the checkpoint back onto points.
    std::set<long> done;
    if (manifest.resume && fs::exists(checkpoint_path)) {
        for (const auto& row : csv::read_file(checkpoint_path)) {
            if (row.empty() || row[0] == "index") continue;
            DesignPoint p = parse_result_row(row);
            for (auto& q : points)
                if (q.index == p.index) { q = p; done.insert(p.index); break; }
        }
    }

    std::ofstream ckpt(checkpoint_path, manifest.resume ? std::ios::app : std::ios::trunc);
    if (!ckpt) throw ConfigError("cannot open checkpoint file: " + checkpoint_path);
    if (!manifest.resume || done.empty()) ckpt << results_header() << "\n";

    std::mutex mtx;
    std::size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= points.size()) return;
                i = next++;
            }
            if (done.count(points[i].index)) continue;
            run_point(points[i], manifest.mode, manifest.scenario);
            {
                std::lock_guard<std::mutex> lock(mtx);
                ckpt << result_row(points[i]) << "\n";
                ckpt.flush();
            }
        }
    };

    const int jobs = std::max(1, manifest.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Final file in index order, independent of completion order.
    std::ofstream out(results_path, std::ios::trunc);
    out << results_header() << "\n";
    for (const auto& p : points) out << result_row(p) << "\n";
    return points;
}

ParetoFront pareto_front(const std::vector<DesignPoint>& points) {
    std::vector<DesignPoint> cand;
    for (const auto& p : points)
        if (p.report) cand.push_back(p);
    std::sort(cand.begin(), cand.end(), [](const DesignPoint& a, const DesignPoint& b) {
        if (a.report->t_comet != b.report->t_comet)
            return a.report->t_comet < b.report->t_comet;
        if (a.report->e_comet != b.report->e_comet)
            return a.report->e_comet < b.report->e_comet;
        return a.index < b.index;
    });
    ParetoFront front;
    double best_e = std::numeric_limits<double>::infinity();
    for (const auto& p : cand) {
        if (p.report->e_comet < best_e) {
            front.points.push_back(p);
            best_e = p.report->e_comet;
        }
    }
    return front;
}

MsClusters cluster_by_ms(
    const std::vector<std::pair<double, std::vector<std::pair<double, double>>>>& curves) {
    MsClusters out;
    if (curves.empty()) return out;
    for (std::size_t i = 0; i < curves.size(); ++i)
        out.groups[curves[i].first].push_back(i);
    if (out.groups.size() < 2) return out; // vacuously separated

    const std::size_t npts = curves.front().second.size();
    for (std::size_t k = 0; k < npts; ++k) {
        const double jc = curves.front().second[k].first;
        if (jc < 1e11) continue;
        // Cluster means and half-spreads at this current density.
        std::vector<std::pair<double, double>> stats; // (mean, half-spread)
        for (const auto& [ms, idxs] : out.groups) {
            double lo = 1e300, hi = -1e300, acc = 0;
            for (std::size_t i : idxs) {
                const double v = curves[i].second[k].second;
                lo = std::min(lo, v); hi = std::max(hi, v); acc += v;
            }
            stats.emplace_back(acc / idxs.size(), 0.5 * (hi - lo));
        }
        std::sort(stats.begin(), stats.end());
        for (std::size_t c = 1; c < stats.size(); ++c) {
            const double separation = stats[c].first - stats[c - 1].first;
            const double spread = std::max(stats[c].second, stats[c - 1].second);
            if (!(separation > spread)) out.separated = false;
        }
    }
    return out;
}

KneePick robust_point(const ParetoFront& front, double knee_threshold) {
    if (front.points.empty()) throw std::invalid_argument("robust_point: empty front");
    std::vector<DesignPoint> by_jc = front.points;
    std::sort(by_jc.begin(), by_jc.end(),
              [](const DesignPoint& a, const DesignPoint& b) { return a.j_c < b.j_c; });
    for (std::size_t i = 0; i + 1 < by_jc.size(); ++i) {
        const double t0 = by_jc[i].report->t_comet;
        const double t1 = by_jc[i + 1].report->t_comet;
        const double doublings = std::log2(by_jc[i + 1].j_c / by_jc[i].j_c);
        if (doublings <= 0) continue;
        const double gain = (t0 - t1) / t0 / doublings;
        if (gain < knee_threshold) return {by_jc[i + 1], true};
    }
    return {by_jc.back(), false};
}

} // namespace comet
