#pragma once

#include <string>

#include "vp/flowmap.hpp"
#include "vp/grid.hpp"
#include "vp/stepper.hpp"

namespace vp {

enum class Backend { nufi, hybrid, sl_cubic, sl_linear };

/// Fully-validated run description parsed from a key=value config file.
struct RunConfig {
    Scenario scenario = Scenario::landau;
    double eps = 0.01;
    double k = 0.5;
    double v0 = 0.0;

    Backend backend = Backend::hybrid;
    int N_f = 256;
    int N_chi = 128;
    double Lv = 12.0;
    double Lx = 0.0; // 0 = derive 2*pi/k from the perturbation

    double tau = 0.1;
    double T_final = 40.0;

    RemapPolicy policy;

    Scheme field_scheme = Scheme::cubic_spline;
    int field_degree = 3;
    Scheme map_scheme = Scheme::lagrange;
    int map_degree = 3;

    std::string output_dir = ".";
    int snapshot_every = 0; // 0 = final snapshot only

    int n_steps() const;
    InitialCondition ic() const;
    double box_length() const; // Lx override or 2*pi/k
    StepperConfig stepper() const;
};

/// Parse an INI-style config file. Unknown sections or keys, type
/// mismatches and violated invariants are hard errors carrying the
/// section.key path.
RunConfig parse_config(const std::string& path);

/// Same, from in-memory text (used by tests and embedded state archives).
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");

std::string backend_name(Backend b);
std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name); // throws on unknown name

/// Re-serialize a config in the same file format (round-trips through
/// parse_config_text).
std::string serialize_config(const RunConfig& cfg);

} // namespace vp
