#pragma once

#include <vector>

#include "vp/diagnostics.hpp"
#include "vp/field.hpp"
#include "vp/grid.hpp"
#include "vp/interp.hpp"

namespace vp {

/// Stored-sample representation of f used by the backward semi-Lagrangian
/// comparison scheme. Unlike the flow-map backends, the full Nx x Nv array
/// is rewritten every step.
struct GridDistribution {
    PhaseGrid grid;
    std::vector<double> f;          // row-major, x major
    Scheme scheme = Scheme::cubic_spline;
    int degree = 3;

    GridDistribution(PhaseGrid g, std::vector<double> samples, Scheme s, int deg = 3);
};

/// One predictor-corrector step.
///
/// Predictor: feet x* = x - tau v, v* = v + tau E(x*); interpolate f at the
/// feet and form the provisional field E~ at the new time. Corrector:
/// re-trace with the time-averaged kick field (E + E~)/2 and rebuild f, rho
/// and E from the corrected feet. Updates dist in place and returns the new
/// field.
std::vector<double> sl_step(GridDistribution& dist, const std::vector<double>& E,
                            double tau);

struct SlRunResult {
    std::vector<DiagnosticsRecord> records;
    PerfSeries perf;
};

/// Drive sl_step for n_steps from the analytic initial condition, with the
/// same diagnostics cadence as the flow-map driver. dist and E_out return
/// the final state.
SlRunResult sl_run(GridDistribution& dist, std::vector<double>& E, int n_steps,
                   double tau);

/// Build the t=0 state: f0 samples, rho^0 and E^0.
GridDistribution sl_init(const InitialCondition& ic, const PhaseGrid& grid,
                         Scheme scheme, int degree, std::vector<double>& E0);

} // namespace vp
