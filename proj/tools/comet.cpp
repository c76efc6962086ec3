// comet - simulator and design-space explorer for the magnetoelectric
// domain-wall logic device.
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure,
// 4 incomplete sweep data.

#include <CLI11.hpp>

#include <filesystem>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "comet/config.hpp"
#include "comet/csvio.hpp"
#include "comet/dse.hpp"
#include "comet/dw1d.hpp"
#include "comet/errors.hpp"
#include "comet/llg.hpp"
#include "comet/perf.hpp"

namespace fs = std::filesystem;
using namespace comet;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
};

Scenario build_scenario(const CommonOpts& c) {
    std::string path = c.config_path;
    // Relative config names resolve against COMET_CONFIG_DIR when not found
    // in the working directory.
    if (!path.empty() && !fs::exists(path)) {
        if (const char* dir = std::getenv("COMET_CONFIG_DIR")) {
            const fs::path candidate = fs::path(dir) / path;
            if (fs::exists(candidate)) path = candidate.string();
        }
    }
    Scenario s = path.empty() ? Scenario::from_preset("15nm") : load_config(path);
    for (const auto& ov : c.overrides) apply_override(s, ov);
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << content;
}

// Provenance sidecar; data files themselves stay timestamp-free so repeated
// runs are byte-identical.
void write_metadata(const std::string& dir, const std::string& command,
                    const Scenario& s) {
    std::ostringstream meta;
    meta << "command: " << command << "\n"
         << "node: " << s.node << "\n"
         << "config:\n" << serialize_config(s);
    write_file(dir + "/metadata.txt", meta.str());
}

NucleationCase case_from_string(const std::string& name) {
    if (name == "composite") return NucleationCase::Composite2F;
    if (name == "no-ima-2f") return NucleationCase::NoIma2F;
    if (name == "no-ima-1f") return NucleationCase::NoIma1F;
    throw ConfigError("unknown nucleation case: " + name);
}

int cmd_nucleate(const CommonOpts& common, const std::string& case_name, bool trace) {
    Scenario s = build_scenario(common);
    const PhysicalConstants pc = s.constants();
    fs::create_directories(common.out_dir);

    GridBuildOptions go = s.llg_build;
    NucleateOptions no = s.llg_run;
    const NucleationCase kind = case_from_string(case_name);
    go.with_ima = kind == NucleationCase::Composite2F;
    if (kind == NucleationCase::NoIma1F) {
        no.window_len = s.geometry.f_feat;
        no.strip_center = s.geometry.f_feat;
    }
    no.keep_trace = trace;

    MagnetizationGrid grid = build_grid(s.material, s.geometry, go, pc);
    grid = relax(grid, s.material, 200e-12, no.dt, pc);
    const LlgRunResult r = nucleate(grid, s.drive.v_fe, s.material, s.geometry,
                                    s.landau(), no, pc);

    std::ostringstream json;
    json << "{\n  \"case\": \"" << case_name << "\",\n"
         << "  \"v_fe\": " << csv::num(s.drive.v_fe) << ",\n"
         << "  \"nucleated\": " << (r.nucleated ? "true" : "false") << ",\n"
         << "  \"t_nucleate\": "
         << (r.t_nucleate ? csv::num(*r.t_nucleate) : std::string("null")) << "\n}\n";
    write_file(common.out_dir + "/nucleate.json", json.str());
    if (trace) {
        std::ostringstream tr;
        tr << "t,strip_mean_mz\n";
        for (const auto& [t, mz] : r.trace) tr << csv::num(t) << ',' << csv::num(mz) << '\n';
        write_file(common.out_dir + "/nucleate_trace.csv", tr.str());
        write_grid_csv(r.final_grid, common.out_dir + "/grid_final.csv");
        // FE chain trace: (time, polarization, applied field amplitude).
        const MeFieldTrace me = me_drive_trace(s.drive.v_fe, s.material, s.geometry,
                                               s.landau(), pc, no.horizon, no.dt);
        std::ostringstream fe;
        fe << "t,p_z,h_me\n";
        for (std::size_t i = 0; i < me.h_z.size(); i += 20)
            fe << csv::num(i * me.dt) << ',' << csv::num(me.p_z[i]) << ','
               << csv::num(me.h_z[i]) << '\n';
        write_file(common.out_dir + "/fe_trace.csv", fe.str());
    }
    write_metadata(common.out_dir, "nucleate", s);

    std::cout << "nucleated: " << (r.nucleated ? "yes" : "no");
    if (r.t_nucleate) std::cout << "  t_nucleate: " << *r.t_nucleate * 1e12 << " ps";
    std::cout << "\n";
    return 0;
}

int cmd_propagate(const CommonOpts& common, bool trace) {
    Scenario s = build_scenario(common);
    const PhysicalConstants pc = s.constants();
    fs::create_directories(common.out_dir);

    const double dist = s.geometry.propagation_distance;
    const PropagateResult r =
        propagate(dist, s.material, s.geometry, s.drive.j_c, s.dw, pc, trace);

    std::ostringstream json;
    json << "{\n  \"distance\": " << csv::num(dist) << ",\n"
         << "  \"j_c\": " << csv::num(s.drive.j_c) << ",\n"
         << "  \"t_propagate\": " << csv::num(r.t_propagate) << ",\n"
         << "  \"v_avg\": " << csv::num(r.v_avg) << "\n}\n";
    write_file(common.out_dir + "/propagate.json", json.str());
    if (trace) {
        std::ostringstream tr;
        tr << "t,q,phi,delta,v_inst\n";
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            const DwState& st = r.trace[i];
            double v_inst = 0.0;
            if (i + 1 < r.trace.size()) {
                const DwState& nx = r.trace[i + 1];
                v_inst = (nx.q_pos - st.q_pos) / (nx.t_now - st.t_now);
            }
            tr << csv::num(st.t_now) << ',' << csv::num(st.q_pos) << ','
               << csv::num(st.phi) << ',' << csv::num(st.delta) << ','
               << csv::num(v_inst) << '\n';
        }
        write_file(common.out_dir + "/propagate_trace.csv", tr.str());
    }
    write_metadata(common.out_dir, "propagate", s);

    std::cout << "t_propagate: " << r.t_propagate * 1e12 << " ps  v_avg: " << r.v_avg
              << " m/s\n";
    return 0;
}

int cmd_gate(const CommonOpts& common, double t_n_inject, double t_p_inject) {
    Scenario s = build_scenario(common);
    const PhysicalConstants pc = s.constants();
    fs::create_directories(common.out_dir);

    double t_n = t_n_inject;
    if (t_n < 0) {
        MagnetizationGrid grid = build_grid(s.material, s.geometry, s.llg_build, pc);
        grid = relax(grid, s.material, 200e-12, s.llg_run.dt, pc);
        const LlgRunResult r = nucleate(grid, s.drive.v_fe, s.material, s.geometry,
                                        s.landau(), s.llg_run, pc);
        if (!r.nucleated)
            throw SolverError("gate: no nucleation at v_fe within the horizon");
        t_n = *r.t_nucleate;
    }

    double t_p_maj = t_p_inject, t_p_inv = t_p_inject / 2.0;
    if (t_p_inject < 0) {
        t_p_maj = propagate(propagation_distance_for(GateKind::MAJ3, s.geometry),
                            s.material, s.geometry, s.drive.j_c, s.dw, pc).t_propagate;
        t_p_inv = propagate(propagation_distance_for(GateKind::INV, s.geometry),
                            s.material, s.geometry, s.drive.j_c, s.dw, pc).t_propagate;
    }

    const GateReport maj = gate_report(GateKind::MAJ3, s.material, s.geometry,
                                       s.transistor, s.drive, t_n, t_p_maj, pc);
    const GateReport inv = gate_report(GateKind::INV, s.material, s.geometry,
                                       s.transistor, s.drive, t_n, t_p_inv, pc);

    write_file(common.out_dir + "/gate_maj3.json", report_to_json(maj));
    write_file(common.out_dir + "/gate_inv.json", report_to_json(inv));
    const std::vector<std::pair<GateReport, GateReport>> rows = {{maj, inv}};
    write_file(common.out_dir + "/table2_display.csv", emit_table2(rows, true));
    write_file(common.out_dir + "/table2.csv", emit_table2(rows, false));
    write_metadata(common.out_dir, "gate", s);

    std::cout << "MAJ3: T = " << maj.t_comet * 1e12 << " ps, E = " << maj.e_comet * 1e18
              << " aJ\nINV:  T = " << inv.t_comet * 1e12 << " ps, E = "
              << inv.e_comet * 1e18 << " aJ\n";
    return 0;
}

int cmd_sweep(const CommonOpts& common, const std::string& mode, int jobs, bool resume) {
    SweepManifest m;
    m.scenario = build_scenario(common);
    m.mode = sweep_mode_from_string(mode);
    m.out_dir = common.out_dir;
    m.jobs = jobs;
    m.resume = resume;
    const auto points = run_sweep(m);
    write_metadata(common.out_dir, "sweep --mode " + mode, m.scenario);
    long ok = 0;
    for (const auto& p : points) if (p.status == "ok") ++ok;
    std::cout << "swept " << points.size() << " points (" << ok << " ok) -> "
              << common.out_dir << "/results.csv\n";
    return 0;
}

std::vector<DesignPoint> load_results(const std::string& path) {
    std::vector<DesignPoint> points;
    const auto rows = csv::read_file(path);
    for (const auto& row : rows) {
        if (row.empty() || row[0] == "index") continue;
        points.push_back(parse_result_row(row));
    }
    return points;
}

int cmd_pareto(const CommonOpts& common, const std::string& in_path, double knee) {
    Scenario s = build_scenario(common);
    fs::create_directories(common.out_dir);
    std::vector<DesignPoint> points = load_results(in_path);

    // Rebuild gate reports: delay/energy columns are not stored for
    // propagation-only sweeps, so compose them from stage results.
    std::vector<DesignPoint> evaluated;
    for (auto& p : points) {
        if (!p.t_propagate || !p.nucleated || !p.t_nucleate) continue;
        MaterialParams mat = s.material;
        mat.ms_pma = p.ms; mat.ku_pma = p.ku; mat.a_ex = p.a_ex; mat.alpha = p.alpha;
        DriveParams drive = s.drive;
        drive.v_fe = p.v_fe; drive.j_c = p.j_c;
        p.report = gate_report(GateKind::MAJ3, mat, s.geometry, s.transistor, drive,
                               *p.t_nucleate, *p.t_propagate, s.constants());
        evaluated.push_back(p);
    }
    if (evaluated.empty())
        throw IncompleteSweep("pareto: no fully evaluated gate points in " + in_path);

    const ParetoFront front = pareto_front(evaluated);
    std::ostringstream out;
    out << "index,j_c,v_fe,ms,t_comet,e_comet\n";
    for (const auto& p : front.points)
        out << p.index << ',' << csv::num(p.j_c) << ',' << csv::num(p.v_fe) << ','
            << csv::num(p.ms) << ',' << csv::num(p.report->t_comet) << ','
            << csv::num(p.report->e_comet) << '\n';
    write_file(common.out_dir + "/front.csv", out.str());

    const KneePick pick = robust_point(front, knee);
    std::ostringstream json;
    json << "{\n  \"knee_threshold\": " << csv::num(knee) << ",\n"
         << "  \"threshold_met\": " << (pick.threshold_met ? "true" : "false") << ",\n"
         << "  \"j_c\": " << csv::num(pick.point.j_c) << ",\n"
         << "  \"t_comet\": " << csv::num(pick.point.report->t_comet) << ",\n"
         << "  \"e_comet\": " << csv::num(pick.point.report->e_comet) << "\n}\n";
    write_file(common.out_dir + "/pareto.json", json.str());
    write_metadata(common.out_dir, "pareto", s);
    std::cout << "front: " << front.points.size() << " points, knee at j_c = "
              << pick.point.j_c << "\n";
    return 0;
}

int cmd_report(const CommonOpts& common, const std::string& figure,
               const std::string& in_path) {
    Scenario s = build_scenario(common);
    fs::create_directories(common.out_dir);
    // The thickness figure generates its own data; everything else reads a
    // sweep results table.
    std::vector<DesignPoint> points;
    if (figure != "fig-imafm") {
        if (in_path.empty())
            throw ConfigError("report --figure " + figure + " requires --in results.csv");
        points = load_results(in_path);
    }

    auto require = [&](bool cond, const std::string& what) {
        if (!cond) throw IncompleteSweep("report " + figure + ": sweep lacks " + what);
    };

    std::ostringstream out;
    if (figure == "fig-prop") {
        require(std::any_of(points.begin(), points.end(),
                            [](const DesignPoint& p) { return p.v_avg.has_value(); }),
                "propagation results");
        out << "ms,ku,a_ex,alpha,j_c,v_avg,t_propagate\n";
        for (const auto& p : points) {
            if (!p.v_avg) continue;
            out << csv::num(p.ms) << ',' << csv::num(p.ku) << ',' << csv::num(p.a_ex)
                << ',' << csv::num(p.alpha) << ',' << csv::num(p.j_c) << ','
                << csv::num(*p.v_avg) << ',' << csv::num(*p.t_propagate) << '\n';
        }
    } else if (figure == "fig-nuc") {
        require(std::any_of(points.begin(), points.end(),
                            [](const DesignPoint& p) { return p.nucleation_done; }),
                "nucleation results");
        out << "ms,ku,a_ex,alpha,v_fe,nucleated,t_nucleate\n";
        for (const auto& p : points)
            out << csv::num(p.ms) << ',' << csv::num(p.ku) << ',' << csv::num(p.a_ex)
                << ',' << csv::num(p.alpha) << ',' << csv::num(p.v_fe) << ','
                << (p.nucleated ? '1' : '0') << ','
                << (p.t_nucleate ? csv::num(*p.t_nucleate) : std::string("nan")) << '\n';
    } else if (figure == "fig-edp") {
        const bool any_gate =
            std::any_of(points.begin(), points.end(), [](const DesignPoint& p) {
                return p.nucleated && p.t_nucleate && p.t_propagate;
            });
        require(any_gate, "full-gate results");
        out << "ms,v_fe,j_c,t_comet,e_comet\n";
        for (auto& p : points) {
            if (!(p.nucleated && p.t_nucleate && p.t_propagate)) continue;
            MaterialParams mat = s.material;
            mat.ms_pma = p.ms; mat.ku_pma = p.ku; mat.a_ex = p.a_ex; mat.alpha = p.alpha;
            DriveParams drive = s.drive;
            drive.v_fe = p.v_fe; drive.j_c = p.j_c;
            const GateReport r = gate_report(GateKind::MAJ3, mat, s.geometry,
                                             s.transistor, drive, *p.t_nucleate,
                                             *p.t_propagate, s.constants());
            out << csv::num(p.ms) << ',' << csv::num(p.v_fe) << ',' << csv::num(p.j_c)
                << ',' << csv::num(r.t_comet) << ',' << csv::num(r.e_comet) << '\n';
        }
    } else if (figure == "fig-imafm") {
        // Thickness sweep is generated directly from the scenario.
        const PhysicalConstants pc = s.constants();
        const auto sweep = ima_thickness_sweep({1e-9, 2e-9, 3e-9}, s.material,
                                               s.geometry, s.landau(), s.drive.v_fe,
                                               s.llg_build, s.llg_run, pc);
        out << "h_ima,t_nucleate\n";
        for (const auto& [h, t] : sweep)
            out << csv::num(h) << ','
                << (t ? csv::num(*t) : std::string("nan")) << '\n';
    } else {
        throw ConfigError("unknown figure kind: " + figure);
    }
    write_file(common.out_dir + "/" + figure + ".csv", out.str());
    write_metadata(common.out_dir, "report --figure " + figure, s);
    std::cout << "wrote " << common.out_dir << "/" << figure << ".csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CoMET magnetoelectric domain-wall logic simulator"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--config", common.config_path, "configuration file");
    app.add_option("--set", common.overrides, "override, section.key=value (repeatable)");
    app.add_option("--out", common.out_dir, "output directory");

    std::string nuc_case = "composite";
    bool trace = false;
    auto* nucleate_cmd = app.add_subcommand("nucleate", "relax and drive the input window");
    nucleate_cmd->add_option("--case", nuc_case, "composite | no-ima-2f | no-ima-1f");
    nucleate_cmd->add_flag("--trace", trace, "emit per-sample traces");

    auto* propagate_cmd = app.add_subcommand("propagate", "run the 1D wall model");
    propagate_cmd->add_flag("--trace", trace, "emit the trajectory trace");

    double t_n_inject = -1.0, t_p_inject = -1.0;
    auto* gate_cmd = app.add_subcommand("gate", "compose gate-level delay and energy");
    gate_cmd->add_option("--t-nucleate", t_n_inject, "inject t_nucleate [s] (decoupled)");
    gate_cmd->add_option("--t-propagate", t_p_inject, "inject MAJ3 t_propagate [s]");

    std::string mode = "propagation";
    int jobs = 1;
    bool resume = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate the parameter space");
    sweep_cmd->add_option("--mode", mode, "nucleation | propagation | full-gate");
    sweep_cmd->add_option("--jobs", jobs, "worker threads");
    sweep_cmd->add_flag("--resume", resume, "resume from the checkpoint");

    std::string in_path;
    double knee = 0.10;
    auto* pareto_cmd = app.add_subcommand("pareto", "extract the energy-delay front");
    pareto_cmd->add_option("--in", in_path, "results.csv from a sweep")->required();
    pareto_cmd->add_option("--knee-threshold", knee, "relative delay gain per doubling");

    std::string figure;
    std::string report_in;
    auto* report_cmd = app.add_subcommand("report", "emit tidy figure data");
    report_cmd->add_option("--figure", figure, "fig-nuc | fig-prop | fig-edp | fig-imafm")
        ->required();
    report_cmd->add_option("--in", report_in, "results.csv from a sweep");

    CLI11_PARSE(app, argc, argv);

    try {
        if (nucleate_cmd->parsed()) return cmd_nucleate(common, nuc_case, trace);
        if (propagate_cmd->parsed()) return cmd_propagate(common, trace);
        if (gate_cmd->parsed()) return cmd_gate(common, t_n_inject, t_p_inject);
        if (sweep_cmd->parsed()) return cmd_sweep(common, mode, jobs, resume);
        if (pareto_cmd->parsed()) return cmd_pareto(common, in_path, knee);
        if (report_cmd->parsed()) return cmd_report(common, figure, report_in);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IncompleteSweep& e) {
        std::cerr << "incomplete sweep: " << e.what() << "\n";
        return 4;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
