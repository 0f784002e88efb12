#include "vp/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vp {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& msg) {
    throw std::runtime_error(origin + ": " + path + ": " + msg);
}

double to_double(const std::string& origin, const std::string& path, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(origin, path, "expected a number, got '" + s + "'");
    }
}

int to_int(const std::string& origin, const std::string& path, const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(origin, path, "expected an integer, got '" + s + "'");
    }
}

} // namespace

int RunConfig::n_steps() const { return int(std::llround(T_final / tau)); }

InitialCondition RunConfig::ic() const {
    InitialCondition c;
    c.kind = scenario;
    c.eps = eps;
    c.k = k;
    c.v0 = v0;
    return c;
}

double RunConfig::box_length() const {
    return Lx > 0.0 ? Lx : 2.0 * std::numbers::pi / k;
}

StepperConfig RunConfig::stepper() const {
    StepperConfig sc{ic(),
                     PhaseGrid(box_length(), Lv, N_f, N_f),
                     PhaseGrid(box_length(), Lv, N_chi, N_chi),
                     tau,
                     policy,
                     field_scheme,
                     field_degree,
                     map_scheme,
                     map_degree};
    if (backend == Backend::nufi) sc.policy.kind = RemapPolicy::Kind::never;
    return sc;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::nufi: return "nufi";
        case Backend::hybrid: return "hybrid";
        case Backend::sl_cubic: return "sl_cubic";
        case Backend::sl_linear: return "sl_linear";
    }
    return "?";
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::linear: return "linear";
        case Scheme::lagrange: return "lagrange";
        case Scheme::cubic_spline: return "cubic_spline";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "linear") return Scheme::linear;
    if (name == "lagrange") return Scheme::lagrange;
    if (name == "cubic_spline") return Scheme::cubic_spline;
    throw std::runtime_error("unknown interpolation scheme '" + name + "'");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(origin, "line " + std::to_string(lineno), "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "grid" && section != "time" &&
                section != "remap" && section != "interp" && section != "run")
                fail(origin, section, "unknown section");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, "line " + std::to_string(lineno), "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string path = section + "." + key;
        if (section.empty()) fail(origin, key, "key outside any section");

        if (section == "scenario") {
            if (key == "kind") {
                if (val == "landau") cfg.scenario = Scenario::landau;
                else if (val == "two_stream") cfg.scenario = Scenario::two_stream;
                else if (val == "custom") cfg.scenario = Scenario::custom;
                else fail(origin, path, "unknown scenario '" + val + "'");
            } else if (key == "eps") cfg.eps = to_double(origin, path, val);
            else if (key == "k") cfg.k = to_double(origin, path, val);
            else if (key == "v0") cfg.v0 = to_double(origin, path, val);
            else fail(origin, path, "unknown key");
        } else if (section == "grid") {
            if (key == "N_f") cfg.N_f = to_int(origin, path, val);
            else if (key == "N_chi") cfg.N_chi = to_int(origin, path, val);
            else if (key == "Lv") cfg.Lv = to_double(origin, path, val);
            else if (key == "Lx") cfg.Lx = to_double(origin, path, val);
            else fail(origin, path, "unknown key");
        } else if (section == "time") {
            if (key == "tau") cfg.tau = to_double(origin, path, val);
            else if (key == "T_final") cfg.T_final = to_double(origin, path, val);
            else fail(origin, path, "unknown key");
        } else if (section == "remap") {
            if (key == "policy") {
                if (val == "fixed") cfg.policy.kind = RemapPolicy::Kind::fixed;
                else if (val == "adaptive") cfg.policy.kind = RemapPolicy::Kind::adaptive;
                else if (val == "never") cfg.policy.kind = RemapPolicy::Kind::never;
                else fail(origin, path, "unknown remap policy '" + val + "'");
            } else if (key == "N_remap") cfg.policy.N_remap = to_int(origin, path, val);
            else if (key == "delta_eps") cfg.policy.delta_eps = to_double(origin, path, val);
            else fail(origin, path, "unknown key");
        } else if (section == "interp") {
            try {
                if (key == "field") cfg.field_scheme = parse_scheme(val);
                else if (key == "map") cfg.map_scheme = parse_scheme(val);
                else if (key == "field_degree") cfg.field_degree = to_int(origin, path, val);
                else if (key == "map_degree") cfg.map_degree = to_int(origin, path, val);
                else fail(origin, path, "unknown key");
            } catch (const std::runtime_error& e) {
                fail(origin, path, e.what());
            }
        } else { // run
            if (key == "backend") {
                if (val == "nufi") cfg.backend = Backend::nufi;
                else if (val == "hybrid") cfg.backend = Backend::hybrid;
                else if (val == "sl_cubic") cfg.backend = Backend::sl_cubic;
                else if (val == "sl_linear") cfg.backend = Backend::sl_linear;
                else fail(origin, path, "unknown backend '" + val + "'");
            } else if (key == "output_dir") cfg.output_dir = val;
            else if (key == "snapshot_every") cfg.snapshot_every = to_int(origin, path, val);
            else fail(origin, path, "unknown key");
        }
    }

    // Invariants.
    if (cfg.tau <= 0.0) fail(origin, "time.tau", "must be positive");
    if (cfg.T_final < 0.0) fail(origin, "time.T_final", "must be non-negative");
    if (cfg.N_f < 4) fail(origin, "grid.N_f", "must be at least 4");
    if (cfg.N_chi < 4) fail(origin, "grid.N_chi", "must be at least 4");
    if (cfg.N_f % cfg.N_chi != 0)
        fail(origin, "grid.N_chi", "N_f must be divisible by N_chi");
    if (cfg.Lv <= 0.0) fail(origin, "grid.Lv", "must be positive");
    if (cfg.k <= 0.0) fail(origin, "scenario.k", "must be positive");
    if (cfg.eps < 0.0) fail(origin, "scenario.eps", "must be non-negative");
    if (cfg.policy.kind == RemapPolicy::Kind::fixed && cfg.policy.N_remap < 1)
        fail(origin, "remap.N_remap", "must be at least 1");
    if (cfg.policy.kind == RemapPolicy::Kind::adaptive && cfg.policy.delta_eps <= 0.0)
        fail(origin, "remap.delta_eps", "must be positive");
    if (cfg.snapshot_every < 0) fail(origin, "run.snapshot_every", "must be non-negative");
    if (cfg.field_degree < 1 || cfg.field_degree > 9)
        fail(origin, "interp.field_degree", "must be in [1, 9]");
    if (cfg.map_degree < 1 || cfg.map_degree > 9)
        fail(origin, "interp.map_degree", "must be in [1, 9]");
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream o;
    o.precision(17);
    o << "[scenario]\n";
    o << "kind = "
      << (cfg.scenario == Scenario::landau
              ? "landau"
              : cfg.scenario == Scenario::two_stream ? "two_stream" : "custom")
      << "\n";
    o << "eps = " << cfg.eps << "\nk = " << cfg.k << "\nv0 = " << cfg.v0 << "\n";
    o << "[grid]\nN_f = " << cfg.N_f << "\nN_chi = " << cfg.N_chi << "\nLv = " << cfg.Lv
      << "\nLx = " << cfg.Lx << "\n";
    o << "[time]\ntau = " << cfg.tau << "\nT_final = " << cfg.T_final << "\n";
    o << "[remap]\npolicy = "
      << (cfg.policy.kind == RemapPolicy::Kind::fixed
              ? "fixed"
              : cfg.policy.kind == RemapPolicy::Kind::adaptive ? "adaptive" : "never")
      << "\n";
    o << "N_remap = " << cfg.policy.N_remap << "\ndelta_eps = " << cfg.policy.delta_eps
      << "\n";
    o << "[interp]\nfield = " << scheme_name(cfg.field_scheme)
      << "\nfield_degree = " << cfg.field_degree << "\nmap = " << scheme_name(cfg.map_scheme)
      << "\nmap_degree = " << cfg.map_degree << "\n";
    o << "[run]\nbackend = " << backend_name(cfg.backend)
      << "\noutput_dir = " << cfg.output_dir << "\nsnapshot_every = " << cfg.snapshot_every
      << "\n";
    return o.str();
}

} // namespace vp
