#ifndef COMET_DSE_HPP
#define COMET_DSE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "comet/config.hpp"
#include "comet/perf.hpp"

namespace comet {

enum class SweepMode { Nucleation, Propagation, FullGate };

SweepMode sweep_mode_from_string(const std::string& name);
std::string to_string(SweepMode m);

// One evaluated (or pending) corner of the parameter grid.
struct DesignPoint {
    long index = -1;
    double ms = 0.0, ku = 0.0, a_ex = 0.0, alpha = 0.0;
    double j_c = 0.0, v_fe = 0.0;

    bool nucleation_done = false;
    bool nucleated = false;
    std::optional<double> t_nucleate;

    bool propagation_done = false;
    std::optional<double> t_propagate;
    std::optional<double> v_avg;

    bool gate_done = false;
    std::optional<GateReport> report;

    std::string status = "pending"; // "ok", "stalled", "error:<what>"
};

// Cartesian product of the space in lexicographic field order
// (ms, ku, a, alpha, jc, vfe). The optional filter keeps matching points;
// indices always refer to the unfiltered enumeration.
std::vector<DesignPoint> enumerate_space(
    const ParameterSpace& space,
    const std::function<bool(const DesignPoint&)>& filter = {});

// Evaluates one point in place. Solver failures are recorded in `status`;
// already-evaluated modes are left untouched.
void run_point(DesignPoint& point, SweepMode mode, const Scenario& base);

struct SweepManifest {
    Scenario scenario;
    SweepMode mode = SweepMode::Propagation;
    std::string out_dir;
    int jobs = 1;
    bool resume = false;
};

// Runs every point of the scenario's space, checkpointing each completed
// point; output ordering follows the point index regardless of worker
// scheduling. Returns the evaluated points.
std::vector<DesignPoint> run_sweep(const SweepManifest& manifest);

// Stable results table (shared by the checkpoint and the final file).
std::string results_header();
std::string result_row(const DesignPoint& p);
DesignPoint parse_result_row(const std::vector<std::string>& fields);

struct ParetoFront {
    // (t_comet, e_comet, point) sorted ascending by delay, energy strictly
    // descending along the list.
    std::vector<DesignPoint> points;
};

// Maximal non-dominated subset under (min delay, min energy); ties on both
// coordinates keep the earliest point in enumeration order.
ParetoFront pareto_front(const std::vector<DesignPoint>& points);

struct MsClusters {
    // ms value -> curve indices; verdict true when clusters are separated
    // beyond the intra-cluster spread at every shared j_c above 1e11.
    std::map<double, std::vector<std::size_t>> groups;
    bool separated = true;
};

// Groups velocity-vs-current curves by saturation magnetization and checks
// the separation criterion. Each curve is (ms, [(j_c, v_avg)...]) on a
// shared grid.
MsClusters cluster_by_ms(
    const std::vector<std::pair<double, std::vector<std::pair<double, double>>>>& curves);

struct KneePick {
    DesignPoint point;
    bool threshold_met = false; // false: constant-slope front, last point returned
};

// First point along ascending j_c where the relative delay gain per current
// doubling drops below the threshold.
KneePick robust_point(const ParetoFront& front, double knee_threshold = 0.10);

} // namespace comet

#endif
