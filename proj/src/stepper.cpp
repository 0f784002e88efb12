#include "vp/stepper.hpp"

#include <cmath>
#include <ctime>
#include <optional>
#include <stdexcept>

#include "vp/util.hpp"

namespace vp {

namespace {

void validate_config(const StepperConfig& cfg) {
    if (cfg.tau <= 0.0) throw std::invalid_argument("stepper: tau must be positive");
    const PhaseGrid& gf = cfg.grid_f;
    const PhaseGrid& gc = cfg.grid_chi;
    if (gf.Nx % gc.Nx != 0 || gf.Nv % gc.Nv != 0)
        throw std::invalid_argument("stepper: sample grid must be divisible by the map grid");
    if (gf.Lx != gc.Lx || gf.Lv != gc.Lv)
        throw std::invalid_argument("stepper: sample and map grids must share the domain");
}

void fill_grid_batch(const PhaseGrid& g, QueryBatch& batch) {
    batch.x.resize(g.size());
    batch.v.resize(g.size());
    for (int i = 0; i < g.Nx; ++i) {
        const double xi = g.x(i);
        for (int j = 0; j < g.Nv; ++j) {
            const std::size_t q = std::size_t(i) * g.Nv + j;
            batch.x[q] = xi;
            batch.v[q] = g.v(j);
        }
    }
}

/// Residuals of the segment footpoints relative to the drift map, on the
/// coarse-node subset of the fine batch.
void coarse_residuals(const QueryBatch& fine_feet, const PhaseGrid& fine,
                      const PhaseGrid& coarse, double drift_dt,
                      std::vector<double>& rx, std::vector<double>& rv) {
    const int sx = fine.Nx / coarse.Nx;
    const int sv = fine.Nv / coarse.Nv;
    rx.resize(coarse.size());
    rv.resize(coarse.size());
    for (int i = 0; i < coarse.Nx; ++i)
        for (int j = 0; j < coarse.Nv; ++j) {
            const std::size_t fq = std::size_t(i) * sx * fine.Nv + std::size_t(j) * sv;
            const std::size_t cq = std::size_t(i) * coarse.Nv + j;
            const double xn = coarse.x(i);
            const double vn = coarse.v(j);
            rx[cq] = wrap_centered(fine_feet.x[fq] - (xn - drift_dt * vn), coarse.Lx);
            rv[cq] = wrap_centered(fine_feet.v[fq] - vn, coarse.Lv);
        }
}

} // namespace

SimState::SimState(StepperConfig cfg)
    : cfg_(std::move(cfg)),
      history_(cfg_.tau, Axis(cfg_.grid_f.Lx, cfg_.grid_f.Nx), cfg_.field_scheme,
               cfg_.field_degree) {
    validate_config(cfg_);
    poisson_ = std::make_unique<PoissonSolver>(cfg_.grid_f.Nx, cfg_.grid_f.Lx);

    const PhaseGrid& g = cfg_.grid_f;
    f_.resize(g.size());
    for (int i = 0; i < g.Nx; ++i)
        for (int j = 0; j < g.Nv; ++j)
            f_[std::size_t(i) * g.Nv + j] = cfg_.ic.eval_f0(g.x(i), g.v(j));

    rho_ = charge_density(f_, g).rho;
    E_ = cfg_.zero_field ? std::vector<double>(g.Nx, 0.0) : poisson_->solve(rho_);
    history_.append(E_);
}

SimState init_run(StepperConfig cfg) { return SimState(std::move(cfg)); }

StepOutput hybrid_step(SimState& state) {
    // Process-CPU time, not wall clock: per-step cost is a diagnostic here
    // (the remap sawtooth), and scheduler preemption would pollute it.
    const std::clock_t t0 = std::clock();
    const StepperConfig& cfg = state.cfg_;
    const PhaseGrid& gf = cfg.grid_f;

    state.N_ += 1;
    const int N = state.N_;
    const bool maps_present = !state.stack_.empty();

    QueryBatch batch;
    fill_grid_batch(gf, batch);
    backtrace_adj(batch, state.history_, N, maps_present);

    // Segment footpoints relative to the analytic drift, on the map grid:
    // feeds both the incompressibility diagnostic and (on remap) the stored
    // submap. Must happen before the stack composition mutates the batch.
    const double drift_dt = (maps_present ? N - 1 : N) * cfg.tau;
    std::vector<double> seg_rx, seg_rv;
    coarse_residuals(batch, gf, cfg.grid_chi, drift_dt, seg_rx, seg_rv);
    state.segment_incomp_ =
        incompressibility_error(cfg.grid_chi, seg_rx, seg_rv, drift_dt).max;

    const bool do_remap = remap_needed(cfg.policy, N, state.segment_incomp_);
    std::optional<SubMap> submap;
    if (do_remap)
        submap = downsample(batch, gf, cfg.grid_chi, drift_dt, cfg.map_scheme,
                            cfg.map_degree);

    state.stack_.compose(batch);

    for (std::size_t q = 0; q < gf.size(); ++q)
        state.f_[q] = cfg.ic.eval_f0(batch.x[q], batch.v[q]);

    state.rho_ = charge_density(state.f_, gf).rho;

    StepOutput out;
    if (do_remap) {
        state.stack_.push(std::move(*submap));
        state.N_ = 1;
        // Restart the history for the new segment. The E^0 slot is never
        // consumed once maps are present (the trailing half kick lives in
        // the stored submap); re-seed it with the stored field so the
        // history-length bookkeeping (length == N + 1) stays uniform.
        std::vector<double> seed = state.history_.field(state.history_.last_index());
        state.history_.reset(0);
        state.history_.append(std::move(seed));
        out.remapped = true;
    }

    state.E_ = cfg.zero_field ? std::vector<double>(gf.Nx, 0.0)
                              : state.poisson_->solve(state.rho_);
    state.history_.append(state.E_);
    state.t_index_ += 1;

    out.rho = state.rho_;
    out.E = state.E_;
    out.diag = measure(state.f_, state.E_, gf);
    out.diag.t = state.time();
    out.diag.incomp_max = state.segment_incomp_;
    out.diag.model_mem_bytes = state_memory_bytes(state);
    out.diag.cpu_seconds = double(std::clock() - t0) / CLOCKS_PER_SEC;
    return out;
}

std::vector<double> evaluate_window(const SimState& state, double xa, double xb,
                                    double va, double vb, int Nz) {
    if (!(xb > xa) || !(vb > va))
        throw std::invalid_argument("evaluate_window: degenerate window");
    if (Nz < 1) throw std::invalid_argument("evaluate_window: resolution must be positive");

    const double hx = (xb - xa) / Nz;
    const double hv = (vb - va) / Nz;
    QueryBatch batch;
    batch.x.resize(std::size_t(Nz) * Nz);
    batch.v.resize(std::size_t(Nz) * Nz);
    for (int i = 0; i < Nz; ++i)
        for (int j = 0; j < Nz; ++j) {
            const std::size_t q = std::size_t(i) * Nz + j;
            batch.x[q] = xa + i * hx;
            batch.v[q] = va + j * hv;
        }

    backtrace_adj(batch, state.history_, state.N_, !state.stack_.empty());
    state.stack_.compose(batch);

    std::vector<double> f(batch.size());
    for (std::size_t q = 0; q < batch.size(); ++q)
        f[q] = state.cfg_.ic.eval_f0(batch.x[q], batch.v[q]);
    return f;
}

RunResult run(SimState& state, int n_steps) {
    if (n_steps < 0) throw std::invalid_argument("run: negative step count");
    RunResult res;
    res.records.reserve(n_steps + 1);

    DiagnosticsRecord r0 = measure(state.f(), state.E(), state.grid_f());
    r0.t = state.time();
    r0.model_mem_bytes = state_memory_bytes(state);
    res.records.push_back(r0);

    for (int s = 0; s < n_steps; ++s) {
        StepOutput out = hybrid_step(state);
        if (out.remapped) res.remap_steps.push_back(state.t_index());
        res.perf.record(out.diag.cpu_seconds);
        res.records.push_back(out.diag);
    }
    return res;
}

SimState restore_run_state(StepperConfig cfg, int t_index, int N, MapStack stack,
                           int history_base, std::vector<std::vector<double>> fields) {
    if (t_index < 0 || N < 0 || history_base < 0)
        throw std::invalid_argument("restore_run_state: negative counter");
    if (int(fields.size()) != N + 1)
        throw std::invalid_argument("restore_run_state: history length must be N + 1");

    SimState state(std::move(cfg));
    state.t_index_ = t_index;
    state.N_ = N;
    state.stack_ = std::move(stack);
    state.history_.reset(history_base);
    for (auto& f : fields) state.history_.append(std::move(f));

    // Re-derive the sample snapshot at the restored time.
    QueryBatch batch;
    fill_grid_batch(state.cfg_.grid_f, batch);
    backtrace_adj(batch, state.history_, state.N_, !state.stack_.empty());
    state.stack_.compose(batch);
    for (std::size_t q = 0; q < batch.size(); ++q)
        state.f_[q] = state.cfg_.ic.eval_f0(batch.x[q], batch.v[q]);
    state.rho_ = charge_density(state.f_, state.cfg_.grid_f).rho;
    state.E_ = state.history_.field(state.history_.last_index());
    return state;
}

double state_memory_bytes(const SimState& state) {
    // Stored submap coefficients plus retained field-history values; with a
    // fixed remap cadence this reproduces the closed-form hybrid model.
    const double map_doubles = double(state.stack().coefficient_count());
    const double field_doubles = double(state.history().size()) * state.grid_f().Nx;
    return 8.0 * (map_doubles + field_doubles);
}

} // namespace vp
