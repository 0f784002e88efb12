#pragma once

#include <span>
#include <vector>

#include "vp/grid.hpp"

namespace vp {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double momentum = 0.0;
    double ekin = 0.0;
    double epot = 0.0;
    double etot = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double entropy = 0.0;
    double min_f = 0.0;
    double max_f = 0.0;
    double incomp_max = 0.0;     // active-segment incompressibility
    double cpu_seconds = 0.0;    // process-CPU time of the step
    double model_mem_bytes = 0.0;
};

/// Moments, energies, norms and entropy of an (f, E) snapshot.
/// Etot is assembled as Ekin + Epot; entropy uses the 0*ln(0) = 0 convention.
DiagnosticsRecord measure(std::span<const double> f_samples, std::span<const double> E,
                          const PhaseGrid& grid);

enum class RateMode { decay, growth };

struct RateFit {
    double rate = 0.0;      // field-amplitude rate (signed; negative = decay)
    double frequency = 0.0; // oscillation frequency from peak spacing
    int peaks_used = 0;
};

/// Fit the exponential rate and oscillation frequency of an Epot(t) series
/// from its local maxima inside [t_a, t_b]. Epot peaks occur twice per field
/// oscillation period, and the energy rate is twice the amplitude rate.
/// Requires at least 4 peaks in the window.
RateFit fit_rate(std::span<const double> t, std::span<const double> epot,
                 double t_a, double t_b, RateMode mode);

/// Closed-form memory and operation-count models of the three schemes.
struct CostModel {
    int d = 1;
    double N_f = 0;
    double N_chi = 0;
    int N_remap = 1;
    int alpha = 3; // interpolant order
    double N = 0;  // iteration index
    double M = 0;  // map count
};

struct MemoryModel {
    double nufi_bytes = 0.0;
    double cmm_bytes = 0.0;
    double hybrid_bytes = 0.0;
};

struct OpCountModel {
    double nufi = 0.0;
    double composition = 0.0;
    double hybrid = 0.0;
};

MemoryModel model_memory(const CostModel& cm);
OpCountModel model_cost(const CostModel& cm);

/// Per-iteration CPU times and their cumulative prefix sums.
class PerfSeries {
  public:
    void record(double seconds) { per_step_.push_back(seconds); }
    const std::vector<double>& per_step() const { return per_step_; }
    std::vector<double> cumulative() const;

  private:
    std::vector<double> per_step_;
};

} // namespace vp
