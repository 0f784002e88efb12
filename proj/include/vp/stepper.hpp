#pragma once

#include <memory>
#include <vector>

#include "vp/diagnostics.hpp"
#include "vp/field.hpp"
#include "vp/flowmap.hpp"
#include "vp/grid.hpp"
#include "vp/nufi.hpp"

namespace vp {

struct StepperConfig {
    InitialCondition ic;
    PhaseGrid grid_f;   // sample grid G_f
    PhaseGrid grid_chi; // coarse map grid G_chi
    double tau = 0.1;
    RemapPolicy policy;
    Scheme field_scheme = Scheme::cubic_spline;
    int field_degree = 3;
    Scheme map_scheme = Scheme::lagrange;
    int map_degree = 3;
    bool zero_field = false; // diagnostic mode: suppress the field solve (free streaming)
};

struct StepOutput {
    std::vector<double> rho;
    std::vector<double> E;
    DiagnosticsRecord diag;
    bool remapped = false;
};

/// Full state of a flow-map run. The hybrid driver with a `never` remap
/// policy degenerates to pure NuFI (empty stack forever).
class SimState {
  public:
    explicit SimState(StepperConfig cfg);

    SimState(const SimState&) = delete;
    SimState& operator=(const SimState&) = delete;
    SimState(SimState&&) = default;
    SimState& operator=(SimState&&) = default;

    const StepperConfig& config() const { return cfg_; }
    const PhaseGrid& grid_f() const { return cfg_.grid_f; }
    const PhaseGrid& grid_chi() const { return cfg_.grid_chi; }
    double tau() const { return cfg_.tau; }

    int t_index() const { return t_index_; }
    double time() const { return t_index_ * cfg_.tau; }
    int N() const { return N_; }
    const MapStack& stack() const { return stack_; }
    const FieldHistory& history() const { return history_; }

    /// Current f samples on G_f and field on the spatial grid.
    const std::vector<double>& f() const { return f_; }
    const std::vector<double>& E() const { return E_; }
    const std::vector<double>& rho() const { return rho_; }

    /// Max |det grad Psi - 1| of the active NuFI segment on G_chi,
    /// refreshed by the last hybrid_step.
    double segment_incomp() const { return segment_incomp_; }

    friend SimState init_run(StepperConfig cfg);
    friend StepOutput hybrid_step(SimState& state);
    friend std::vector<double> evaluate_window(const SimState& state, double xa, double xb,
                                               double va, double vb, int Nz);
    friend SimState restore_run_state(StepperConfig cfg, int t_index, int N, MapStack stack,
                                      int history_base,
                                      std::vector<std::vector<double>> fields);

  private:
    StepperConfig cfg_;
    int t_index_ = 0;
    int N_ = 0;
    MapStack stack_;
    FieldHistory history_;
    std::unique_ptr<PoissonSolver> poisson_;
    std::vector<double> f_;
    std::vector<double> E_;
    std::vector<double> rho_;
    double segment_incomp_ = 0.0;
};

/// f0 on G_f -> rho^0 -> E^0; history seeded at base 0 with E^0; N = 0.
SimState init_run(StepperConfig cfg);

/// One hybrid CMM-NuFI step: advance N, backtrace the active segment,
/// compose through the stored stack, sample f0 at the footpoints, solve
/// Poisson and append the new field; on a remap event the segment is
/// downsampled onto G_chi, pushed, and the history restarted (base slot
/// re-seeded with the field at the remap instant).
StepOutput hybrid_step(SimState& state);

/// Render f on an Nz x Nz window [xa,xb) x [va,vb) at the current time by
/// tracing the window nodes through segment + stack. Does not mutate state.
std::vector<double> evaluate_window(const SimState& state, double xa, double xb,
                                    double va, double vb, int Nz);

struct RunResult {
    std::vector<DiagnosticsRecord> records; // n_steps + 1 rows, row 0 = t=0
    std::vector<int> remap_steps;           // global step indices of remap events
    PerfSeries perf;                        // per-step wall times
};

/// Drive hybrid_step for n_steps, measuring diagnostics every step.
RunResult run(SimState& state, int n_steps);

/// Modeled memory footprint of the current state (stored coefficients plus
/// retained fields), in bytes.
double state_memory_bytes(const SimState& state);

/// Rebuild a SimState from persisted components (counters, map stack and
/// field history); f, rho and E are re-derived by tracing the sample grid.
SimState restore_run_state(StepperConfig cfg, int t_index, int N, MapStack stack,
                           int history_base, std::vector<std::vector<double>> fields);

} // namespace vp
