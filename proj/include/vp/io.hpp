#pragma once

#include <string>
#include <vector>

#include "vp/config.hpp"
#include "vp/diagnostics.hpp"
#include "vp/flowmap.hpp"
#include "vp/stepper.hpp"

namespace vp {

/// Comma-separated diagnostics table; one row per record, stable column
/// order: t, mass, momentum, ekin, epot, etot, l1, l2, linf, entropy,
/// min_f, max_f, incomp_max, cpu_seconds, model_mem_bytes.
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path);

/// Snapshot file: little-endian header (i64 step, f64 time, i64 Nx, i64 Nv,
/// f64 Lx, f64 Lv) followed by the row-major f64 sample array.
struct Snapshot {
    long long step = 0;
    double time = 0.0;
    PhaseGrid grid{1.0, 1.0, 4, 4};
    std::vector<double> f;
};
void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

/// Submap file: little-endian header (i64 Nx, i64 Nv, f64 Lx, f64 Lv,
/// i64 creation_step, f64 tau, f64 drift_dt) + the two row-major residual
/// arrays delta_x, delta_v.
void write_submap(const std::string& path, const SubMap& map, long long creation_step,
                  double tau);
SubMap read_submap(const std::string& path, Scheme scheme, int degree,
                   long long* creation_step = nullptr, double* tau = nullptr);

/// Run-state archive: a text manifest (embedded config, counters, section
/// sizes) followed by the field history and the map stack, enough to resume
/// a run or zoom offline.
void write_run_state(const std::string& path, const RunConfig& cfg, const SimState& state);

struct LoadedState {
    RunConfig cfg;
    SimState state;
};
LoadedState read_run_state(const std::string& path);

} // namespace vp
