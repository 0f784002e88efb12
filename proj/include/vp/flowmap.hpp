#pragma once

#include <optional>
#include <vector>

#include "vp/grid.hpp"
#include "vp/interp.hpp"
#include "vp/nufi.hpp"

namespace vp {

/// One stored backward submap chi on the coarse map grid.
///
/// The footpoint is decomposed as
///   chi(x, v) = (x - drift_dt * v + Rx(x, v),  v + Rv(x, v)),
/// where the residual fields (Rx, Rv) are stored on the grid and
/// interpolated periodically. The analytic drift term carries the large,
/// non-periodic part of the x-displacement, so the stored fields stay
/// smooth across the periodic seams. drift_dt == 0 recovers a plain
/// displacement-from-identity map (identity map: zero residuals).
class SubMap {
  public:
    SubMap(PhaseGrid grid, double drift_dt, std::vector<double> delta_x,
           std::vector<double> delta_v, Scheme scheme = Scheme::lagrange, int degree = 3);

    static SubMap identity(const PhaseGrid& grid, Scheme scheme = Scheme::lagrange,
                           int degree = 3);

    /// Apply the map to a batch in place (one composition step).
    void apply(QueryBatch& batch) const;

    const PhaseGrid& grid() const { return grid_; }
    double drift_dt() const { return drift_dt_; }
    const std::vector<double>& delta_x() const { return delta_x_; }
    const std::vector<double>& delta_v() const { return delta_v_; }
    Scheme scheme() const { return scheme_; }
    int degree() const { return degree_; }

    /// Stored coefficient count (both residual components).
    std::size_t coefficient_count() const { return 2 * grid_.size(); }

  private:
    PhaseGrid grid_;
    double drift_dt_;
    std::vector<double> delta_x_;
    std::vector<double> delta_v_;
    Scheme scheme_;
    int degree_;
    Interpolant2D itp_; // ncomp = 2 (Rx, Rv)
};

/// Ordered submap sequence chi^(1)..chi^(M), oldest first. Evaluation
/// applies map M first, then M-1, ..., then 1.
class MapStack {
  public:
    void push(SubMap map);

    /// Numerical composition: for i = M..1 interpolate the residuals of map
    /// i at the current points and advance them. Empty stack is identity.
    void compose(QueryBatch& batch) const;

    std::size_t size() const { return maps_.size(); }
    bool empty() const { return maps_.empty(); }
    const SubMap& map(std::size_t i) const { return maps_[i]; }

    /// Total stored coefficient count across all maps.
    std::size_t coefficient_count() const;

  private:
    std::vector<SubMap> maps_;
};

/// Build a coarse submap from fine-grid footpoints. The fine footpoints must
/// be the backtrace of the fine grid nodes (row-major); coarse nodes are a
/// subset of fine nodes (N_f divisible by N_chi), so values are copied, not
/// interpolated. Residuals are wrapped into the minimal image.
SubMap downsample(const QueryBatch& fine_footpoints, const PhaseGrid& fine,
                  const PhaseGrid& coarse, double drift_dt,
                  Scheme scheme = Scheme::lagrange, int degree = 3);

struct IncompressibilityError {
    std::vector<double> field; // |det grad chi - 1| on the grid
    double max = 0.0;
};

/// |det grad chi - 1| on the map grid, Jacobian by 4th-order central
/// differences of the residual fields plus the analytic identity+drift part.
IncompressibilityError incompressibility_error(const SubMap& map);

/// Same, for an arbitrary map given by its residual fields on a grid
/// (footpoint = (x - drift_dt*v + rx, v + rv) at the nodes).
IncompressibilityError incompressibility_error(const PhaseGrid& grid,
                                               std::span<const double> resid_x,
                                               std::span<const double> resid_v,
                                               double drift_dt);

/// Composed-stack error: evaluate the composition on the nodes of eval_grid
/// and difference the deviation from identity.
IncompressibilityError incompressibility_error(const MapStack& stack,
                                               const PhaseGrid& eval_grid);

struct RemapPolicy {
    enum class Kind { fixed, adaptive, never };
    Kind kind = Kind::fixed;
    int N_remap = 20;
    double delta_eps = 1e-2;
};

/// Fixed policy: true iff N mod N_remap == 0. Adaptive policy: true iff the
/// max incompressibility error of the current NuFI segment (supplied by the
/// caller, measured on the map grid) exceeds delta_eps.
bool remap_needed(const RemapPolicy& policy, int N, double segment_incomp_max);

} // namespace vp
