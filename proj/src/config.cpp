#include "comet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "comet/csvio.hpp"
#include "comet/errors.hpp"

namespace comet {

std::vector<double> ParameterSpace::default_jc_grid() {
    // 13 log-spaced points over [1e10, 1e12], decade boundaries inclusive.
    std::vector<double> v;
    for (int k = 0; k <= 12; ++k) v.push_back(1e10 * std::pow(10.0, k / 6.0));
    v.front() = 1e10;
    v[6] = 1e11;
    v.back() = 1e12;
    return v;
}

Scenario Scenario::from_preset(const std::string& node) {
    Scenario s;
    TechnologyPreset p = preset_technology(node);
    s.node = node;
    s.material = p.material;
    s.transistor = p.transistor;
    s.geometry = p.geometry;
    return s;
}

namespace {

enum class Dim {
    None, Length, Area, Voltage, EField, CurrentDensity, HField, Energy,
    Capacitance, Resistance, Time, Resistivity, Exchange, Dmi, Anisotropy,
    MeCoeff, Polarization, Angle, Opaque
};

const std::map<std::string, std::pair<Dim, double>>& unit_table() {
    static const std::map<std::string, std::pair<Dim, double>> t = {
        {"m", {Dim::Length, 1.0}},        {"nm", {Dim::Length, 1e-9}},
        {"um", {Dim::Length, 1e-6}},      {"m2", {Dim::Area, 1.0}},
        {"nm2", {Dim::Area, 1e-18}},      {"V", {Dim::Voltage, 1.0}},
        {"mV", {Dim::Voltage, 1e-3}},     {"V/m", {Dim::EField, 1.0}},
        {"MV/m", {Dim::EField, 1e6}},     {"A/m2", {Dim::CurrentDensity, 1.0}},
        {"A/m", {Dim::HField, 1.0}},      {"kA/m", {Dim::HField, 1e3}},
        {"J", {Dim::Energy, 1.0}},        {"aJ", {Dim::Energy, 1e-18}},
        {"fJ", {Dim::Energy, 1e-15}},     {"pJ", {Dim::Energy, 1e-12}},
        {"F", {Dim::Capacitance, 1.0}},   {"fF", {Dim::Capacitance, 1e-15}},
        {"aF", {Dim::Capacitance, 1e-18}},{"ohm", {Dim::Resistance, 1.0}},
        {"kohm", {Dim::Resistance, 1e3}}, {"s", {Dim::Time, 1.0}},
        {"fs", {Dim::Time, 1e-15}},       {"ps", {Dim::Time, 1e-12}},
        {"ns", {Dim::Time, 1e-9}},        {"us", {Dim::Time, 1e-6}},
        {"ohm.m", {Dim::Resistivity, 1.0}},
        {"J/m", {Dim::Exchange, 1.0}},    {"pJ/m", {Dim::Exchange, 1e-12}},
        {"J/m2", {Dim::Dmi, 1.0}},        {"mJ/m2", {Dim::Dmi, 1e-3}},
        {"J/m3", {Dim::Anisotropy, 1.0}}, {"kJ/m3", {Dim::Anisotropy, 1e3}},
        {"MJ/m3", {Dim::Anisotropy, 1e6}},{"s/m", {Dim::MeCoeff, 1.0}},
        {"C/m2", {Dim::Polarization, 1.0}},
        {"deg", {Dim::Angle, 1.0}},       {"rad", {Dim::Angle, 180.0 / M_PI}},
    };
    return t;
}

struct KeySpec {
    Dim dim;
    std::function<double*(Scenario&)> ref;     // scalar target
    std::function<std::vector<double>*(Scenario&)> list; // list target
};

using KeyMap = std::map<std::string, KeySpec>;

KeySpec scalar(Dim d, std::function<double*(Scenario&)> f) { return {d, std::move(f), {}}; }
KeySpec list_of(Dim d, std::function<std::vector<double>*(Scenario&)> f) {
    return {d, {}, std::move(f)};
}

const KeyMap& key_map() {
    static const KeyMap m = {
        {"material.ms_pma", scalar(Dim::HField, [](Scenario& s) { return &s.material.ms_pma; })},
        {"material.ku_pma", scalar(Dim::Anisotropy, [](Scenario& s) { return &s.material.ku_pma; })},
        {"material.a_ex", scalar(Dim::Exchange, [](Scenario& s) { return &s.material.a_ex; })},
        {"material.alpha", scalar(Dim::None, [](Scenario& s) { return &s.material.alpha; })},
        {"material.ms_ima", scalar(Dim::HField, [](Scenario& s) { return &s.material.ms_ima; })},
        {"material.d_dmi", scalar(Dim::Dmi, [](Scenario& s) { return &s.material.d_dmi; })},
        {"material.theta_she", scalar(Dim::None, [](Scenario& s) { return &s.material.theta_she; })},
        {"material.beta_stt", scalar(Dim::None, [](Scenario& s) { return &s.material.beta_stt; })},
        {"material.p_pma", scalar(Dim::None, [](Scenario& s) { return &s.material.p_pma; })},
        {"material.rho_shm", scalar(Dim::Resistivity, [](Scenario& s) { return &s.material.rho_shm; })},
        {"material.eps_fe", scalar(Dim::None, [](Scenario& s) { return &s.material.eps_fe; })},
        {"material.kappa_me", scalar(Dim::MeCoeff, [](Scenario& s) { return &s.material.kappa_me; })},
        {"material.kappa_ime", scalar(Dim::MeCoeff, [](Scenario& s) { return &s.material.kappa_ime; })},
        {"material.gamma_v", scalar(Dim::Opaque, [](Scenario& s) { return &s.material.gamma_v; })},
        {"material.h_int", scalar(Dim::Length, [](Scenario& s) { return &s.material.h_int; })},
        {"material.me_scale", scalar(Dim::None, [](Scenario& s) { return &s.material.me_scale; })},
        {"material.ime_scale", scalar(Dim::None, [](Scenario& s) { return &s.material.ime_scale; })},
        {"material.me_tilt_deg", scalar(Dim::Angle, [](Scenario& s) { return &s.material.me_tilt_deg; })},
        {"material.alpha_sp", scalar(Dim::None, [](Scenario& s) { return &s.material.alpha_sp; })},
        {"material.she_sign", scalar(Dim::None, [](Scenario& s) { return &s.material.she_sign; })},
        {"material.dmi_sign", scalar(Dim::None, [](Scenario& s) { return &s.material.dmi_sign; })},
        {"material.stt_sign", scalar(Dim::None, [](Scenario& s) { return &s.material.stt_sign; })},
        {"material.stt_current_fraction", scalar(Dim::None, [](Scenario& s) { return &s.material.stt_current_fraction; })},
        {"fe.p_remnant", scalar(Dim::Polarization, [](Scenario& s) { return &s.fe.p_remnant; })},
        {"fe.e_coercive", scalar(Dim::EField, [](Scenario& s) { return &s.fe.e_coercive; })},
        {"geometry.f_feat", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.f_feat; })},
        {"geometry.h_pma", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.h_pma; })},
        {"geometry.h_ima", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.h_ima; })},
        {"geometry.h_fe_in", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.h_fe_in; })},
        {"geometry.h_fe_out", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.h_fe_out; })},
        {"geometry.fe_in_area", scalar(Dim::Area, [](Scenario& s) { return &s.geometry.fe_in_area; })},
        {"geometry.nucleation_offset", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.nucleation_offset; })},
        {"geometry.propagation_distance", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.propagation_distance; })},
        {"geometry.l_shm", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.l_shm; })},
        {"geometry.w_shm", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.w_shm; })},
        {"geometry.h_shm", scalar(Dim::Length, [](Scenario& s) { return &s.geometry.h_shm; })},
        {"transistor.r_on", scalar(Dim::Resistance, [](Scenario& s) { return &s.transistor.r_on; })},
        {"transistor.c_g", scalar(Dim::Capacitance, [](Scenario& s) { return &s.transistor.c_g; })},
        {"transistor.v_th", scalar(Dim::Voltage, [](Scenario& s) { return &s.transistor.v_th; })},
        {"transistor.leak_energy_per_gate", scalar(Dim::Energy, [](Scenario& s) { return &s.transistor.leak_energy_per_gate; })},
        {"transistor.k_inv", scalar(Dim::None, [](Scenario& s) { return &s.transistor.k_inv; })},
        {"transistor.r_wire", scalar(Dim::Resistance, [](Scenario& s) { return &s.transistor.r_wire; })},
        {"transistor.c_wire", scalar(Dim::Capacitance, [](Scenario& s) { return &s.transistor.c_wire; })},
        {"drive.v_fe", scalar(Dim::Voltage, [](Scenario& s) { return &s.drive.v_fe; })},
        {"drive.j_c", scalar(Dim::CurrentDensity, [](Scenario& s) { return &s.drive.j_c; })},
        {"drive.v_prop", scalar(Dim::Voltage, [](Scenario& s) { return &s.drive.v_prop; })},
        {"drive.v_rst", scalar(Dim::Voltage, [](Scenario& s) { return &s.drive.v_rst; })},
        {"llg.cell", scalar(Dim::Length, [](Scenario& s) { return &s.llg_build.cell; })},
        {"llg.cant_deg", scalar(Dim::Angle, [](Scenario& s) { return &s.llg_build.cant_deg; })},
        {"llg.ima_coupling", scalar(Dim::None, [](Scenario& s) { return &s.llg_build.ima_coupling; })},
        {"llg.edge_hardening", scalar(Dim::None, [](Scenario& s) { return &s.llg_build.edge_hardening; })},
        {"llg.absorber_len", scalar(Dim::Length, [](Scenario& s) { return &s.llg_build.absorber_len; })},
        {"llg.absorber_alpha", scalar(Dim::None, [](Scenario& s) { return &s.llg_build.absorber_alpha; })},
        {"llg.dt", scalar(Dim::Time, [](Scenario& s) { return &s.llg_run.dt; })},
        {"llg.horizon", scalar(Dim::Time, [](Scenario& s) { return &s.llg_run.horizon; })},
        {"llg.sample_dt", scalar(Dim::Time, [](Scenario& s) { return &s.llg_run.sample_dt; })},
        {"dw.dt", scalar(Dim::Time, [](Scenario& s) { return &s.dw.dt; })},
        {"dw.horizon", scalar(Dim::Time, [](Scenario& s) { return &s.dw.horizon; })},
        {"dw.phi_relax", scalar(Dim::Time, [](Scenario& s) { return &s.dw.phi_relax; })},
        {"space.ms_values", list_of(Dim::HField, [](Scenario& s) { return &s.space.ms_values; })},
        {"space.ku_values", list_of(Dim::Anisotropy, [](Scenario& s) { return &s.space.ku_values; })},
        {"space.a_values", list_of(Dim::Exchange, [](Scenario& s) { return &s.space.a_values; })},
        {"space.alpha_values", list_of(Dim::None, [](Scenario& s) { return &s.space.alpha_values; })},
        {"space.jc_values", list_of(Dim::CurrentDensity, [](Scenario& s) { return &s.space.jc_values; })},
        {"space.vfe_values", list_of(Dim::Voltage, [](Scenario& s) { return &s.space.vfe_values; })},
    };
    return m;
}

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string nearest_key(const std::string& path) {
    std::string best;
    int best_d = 1000;
    for (const auto& [k, _] : key_map()) {
        const int d = edit_distance(path, k);
        if (d < best_d) { best_d = d; best = k; }
    }
    return best_d <= 3 ? best : std::string{};
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line, const std::string& path) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw ConfigError("config line " + std::to_string(line) + ": '" + path +
                          "' has a malformed number '" + t + "'");
    return v;
}

// value text = number [unit]; returns SI value after dimension check.
double parse_value(const std::string& text, Dim expect, int line, const std::string& path) {
    const std::string t = trim(text);
    const auto sp = t.find_first_of(" \t");
    const std::string num_part = sp == std::string::npos ? t : t.substr(0, sp);
    const std::string unit_part = sp == std::string::npos ? "" : trim(t.substr(sp + 1));
    double v = parse_number(num_part, line, path);
    if (unit_part.empty() || expect == Dim::Opaque) return v;
    const auto it = unit_table().find(unit_part);
    if (it == unit_table().end())
        throw ConfigError("config line " + std::to_string(line) + ": unknown unit '" +
                          unit_part + "' for '" + path + "'");
    if (it->second.first != expect)
        throw ConfigError("config line " + std::to_string(line) + ": unit '" + unit_part +
                          "' does not match the dimension of '" + path + "'");
    // Angles are stored in degrees, everything else in SI base units.
    return v * it->second.second;
}

} // namespace

Scenario parse_config(const std::string& text) {
    Scenario preset = Scenario::from_preset("15nm");

    struct Entry { std::string path, value; int line; };
    std::vector<Entry> entries;
    std::string node_value;
    bool paper_mode = false;
    bool geometry_from_f = false;

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": key outside any [section]");
        const std::string path = section + "." + key;
        if (path == "geometry.node") { node_value = value; continue; }
        if (path == "constants.mode") {
            if (value == "paper") paper_mode = true;
            else if (value == "codata") paper_mode = false;
            else
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": constants.mode must be 'codata' or 'paper'");
            continue;
        }
        if (path == "geometry.f_feat") geometry_from_f = true;
        entries.push_back({path, value, lineno});
    }

    Scenario s = node_value.empty() ? preset : Scenario::from_preset(node_value);
    s.paper_constants = paper_mode;

    // An explicit feature size re-derives every dependent length first, so
    // later keys can still override individual fields.
    if (geometry_from_f) {
        for (const auto& e : entries)
            if (e.path == "geometry.f_feat") {
                const double f = parse_value(e.value, Dim::Length, e.line, e.path);
                DeviceGeometry g = DeviceGeometry::from_feature(f);
                g.h_pma = s.geometry.h_pma;
                g.h_ima = s.geometry.h_ima;
                g.h_fe_in = s.geometry.h_fe_in;
                g.h_fe_out = s.geometry.h_fe_out;
                g.h_shm = s.geometry.h_shm;
                s.geometry = g;
            }
    }

    const KeyMap& keys = key_map();
    for (const auto& e : entries) {
        const auto it = keys.find(e.path);
        if (it == keys.end()) {
            const std::string near = nearest_key(e.path);
            throw ConfigError("config line " + std::to_string(e.line) + ": unknown key '" +
                              e.path + "'" +
                              (near.empty() ? "" : " (did you mean '" + near + "'?)"));
        }
        if (it->second.ref) {
            *it->second.ref(s) = parse_value(e.value, it->second.dim, e.line, e.path);
        } else {
            std::vector<double> vals;
            std::stringstream ss(e.value);
            std::string item;
            // Unit suffix, when present, follows the last element.
            std::vector<std::string> items;
            while (std::getline(ss, item, ',')) items.push_back(trim(item));
            if (items.empty())
                throw ConfigError("config line " + std::to_string(e.line) +
                                  ": empty list for '" + e.path + "'");
            std::string unit;
            {
                const auto sp = items.back().find_first_of(" \t");
                if (sp != std::string::npos) {
                    unit = " " + trim(items.back().substr(sp + 1));
                    items.back() = trim(items.back().substr(0, sp));
                }
            }
            for (const auto& x : items)
                vals.push_back(parse_value(x + unit, it->second.dim, e.line, e.path));
            *it->second.list(s) = std::move(vals);
        }
    }
    s.material.validate();
    return s;
}

Scenario load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(Scenario& s, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be 'section.key=value': " + spec);
    const std::string path = trim(spec.substr(0, eq));
    const std::string value = trim(spec.substr(eq + 1));
    if (path == "geometry.node") {
        const Scenario fresh = Scenario::from_preset(value);
        s.node = fresh.node;
        s.material = fresh.material;
        s.transistor = fresh.transistor;
        s.geometry = fresh.geometry;
        return;
    }
    if (path == "constants.mode") {
        if (value == "paper") s.paper_constants = true;
        else if (value == "codata") s.paper_constants = false;
        else throw ConfigError("constants.mode must be 'codata' or 'paper'");
        return;
    }
    const auto it = key_map().find(path);
    if (it == key_map().end()) {
        const std::string near = nearest_key(path);
        throw ConfigError("unknown override key '" + path + "'" +
                          (near.empty() ? "" : " (did you mean '" + near + "'?)"));
    }
    if (path == "geometry.f_feat") {
        const double f = parse_value(value, Dim::Length, 0, path);
        DeviceGeometry g = DeviceGeometry::from_feature(f);
        g.h_pma = s.geometry.h_pma;
        g.h_ima = s.geometry.h_ima;
        g.h_fe_in = s.geometry.h_fe_in;
        g.h_fe_out = s.geometry.h_fe_out;
        g.h_shm = s.geometry.h_shm;
        s.geometry = g;
        return;
    }
    if (it->second.ref) {
        *it->second.ref(s) = parse_value(value, it->second.dim, 0, path);
    } else {
        std::vector<double> vals;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(parse_value(item, it->second.dim, 0, path));
        *it->second.list(s) = std::move(vals);
    }
}

std::string serialize_config(const Scenario& s) {
    std::ostringstream out;
    out << "[constants]\nmode = " << (s.paper_constants ? "paper" : "codata") << "\n\n";

    // Emit every key in SI with shortest-round-trip formatting. The node
    // label leads the geometry section; explicit keys then pin each field.
    Scenario copy = s; // non-const access for the accessor lambdas
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
    for (const auto& [path, spec] : key_map()) {
        const auto dot = path.find('.');
        const std::string sec = path.substr(0, dot), key = path.substr(dot + 1);
        if (spec.ref) {
            sections[sec].emplace_back(key, csv::num(*spec.ref(copy)));
        } else {
            const auto* lst = spec.list(copy);
            std::string joined;
            for (std::size_t i = 0; i < lst->size(); ++i) {
                if (i) joined += ", ";
                joined += csv::num((*lst)[i]);
            }
            sections[sec].emplace_back(key, joined);
        }
    }
    for (const auto& [sec, kvs] : sections) {
        out << "[" << sec << "]\n";
        if (sec == "geometry") out << "node = " << s.node << "\n";
        for (const auto& [k, v] : kvs) out << k << " = " << v << "\n";
        out << "\n";
    }
    return out.str();
}

} // namespace comet
