#include "vp/flowmap.hpp"

#include <cmath>
#include <stdexcept>

#include "vp/util.hpp"

namespace vp {

namespace {

Interpolant2D build_map_interp(const PhaseGrid& grid, const std::vector<double>& dx,
                               const std::vector<double>& dv, Scheme scheme, int degree) {
    std::vector<double> both;
    both.reserve(2 * grid.size());
    both.insert(both.end(), dx.begin(), dx.end());
    both.insert(both.end(), dv.begin(), dv.end());
    return Interpolant2D::build(both, 2, Axis(grid.Lx, grid.Nx),
                                Axis(grid.Lv, grid.Nv, -0.5 * grid.Lv), scheme, degree);
}

} // namespace

SubMap::SubMap(PhaseGrid grid, double drift_dt, std::vector<double> delta_x,
               std::vector<double> delta_v, Scheme scheme, int degree)
    : grid_(grid),
      drift_dt_(drift_dt),
      delta_x_(std::move(delta_x)),
      delta_v_(std::move(delta_v)),
      scheme_(scheme),
      degree_(degree),
      itp_(build_map_interp(grid_, delta_x_, delta_v_, scheme, degree)) {
    if (delta_x_.size() != grid_.size() || delta_v_.size() != grid_.size())
        throw std::invalid_argument("SubMap: residual field size must equal Nx*Nv");
}

SubMap SubMap::identity(const PhaseGrid& grid, Scheme scheme, int degree) {
    std::vector<double> zero(grid.size(), 0.0);
    return SubMap(grid, 0.0, zero, zero, scheme, degree);
}

void SubMap::apply(QueryBatch& batch) const {
    const std::size_t n = batch.size();
    double* X = batch.x.data();
    double* V = batch.v.data();
    const double dt = drift_dt_;
    double d[2];
    for (std::size_t p = 0; p < n; ++p) {
        itp_.eval(X[p], V[p], d);
        X[p] += -dt * V[p] + d[0];
        V[p] += d[1];
    }
}

void MapStack::push(SubMap map) {
    if (!maps_.empty()) {
        const PhaseGrid& g0 = maps_.front().grid();
        const PhaseGrid& g = map.grid();
        if (g.Nx != g0.Nx || g.Nv != g0.Nv || g.Lx != g0.Lx || g.Lv != g0.Lv)
            throw std::invalid_argument("MapStack: all submaps must share one map grid");
    }
    maps_.push_back(std::move(map));
}

void MapStack::compose(QueryBatch& batch) const {
    for (auto it = maps_.rbegin(); it != maps_.rend(); ++it) it->apply(batch);
}

std::size_t MapStack::coefficient_count() const {
    std::size_t n = 0;
    for (const auto& m : maps_) n += m.coefficient_count();
    return n;
}

SubMap downsample(const QueryBatch& fine_footpoints, const PhaseGrid& fine,
                  const PhaseGrid& coarse, double drift_dt, Scheme scheme, int degree) {
    if (fine_footpoints.size() != fine.size())
        throw std::invalid_argument("downsample: footpoint batch must cover the fine grid");
    if (fine.Nx % coarse.Nx != 0 || fine.Nv % coarse.Nv != 0)
        throw std::invalid_argument("downsample: fine resolution must be divisible by coarse");
    if (fine.Lx != coarse.Lx || fine.Lv != coarse.Lv)
        throw std::invalid_argument("downsample: fine and coarse grids must share the domain");

    const int rx = fine.Nx / coarse.Nx;
    const int rv = fine.Nv / coarse.Nv;
    std::vector<double> dx(coarse.size()), dv(coarse.size());
    for (int i = 0; i < coarse.Nx; ++i) {
        for (int j = 0; j < coarse.Nv; ++j) {
            const std::size_t fidx = std::size_t(i) * rx * fine.Nv + std::size_t(j) * rv;
            const double xn = coarse.x(i);
            const double vn = coarse.v(j);
            const std::size_t cidx = std::size_t(i) * coarse.Nv + j;
            dx[cidx] = wrap_centered(fine_footpoints.x[fidx] - (xn - drift_dt * vn), coarse.Lx);
            dv[cidx] = wrap_centered(fine_footpoints.v[fidx] - vn, coarse.Lv);
        }
    }
    return SubMap(coarse, drift_dt, std::move(dx), std::move(dv), scheme, degree);
}

IncompressibilityError incompressibility_error(const PhaseGrid& grid,
                                               std::span<const double> resid_x,
                                               std::span<const double> resid_v,
                                               double drift_dt) {
    if (resid_x.size() != grid.size() || resid_v.size() != grid.size())
        throw std::invalid_argument("incompressibility_error: field size mismatch");

    const int Nx = grid.Nx, Nv = grid.Nv;
    auto idx = [Nv](int i, int j) { return std::size_t(i) * Nv + j; };
    auto wrapi = [](int i, int n) { return ((i % n) + n) % n; };

    // 4th-order central difference, periodic.
    auto d_dx = [&](std::span<const double> f, int i, int j) {
        const int im2 = wrapi(i - 2, Nx), im1 = wrapi(i - 1, Nx);
        const int ip1 = wrapi(i + 1, Nx), ip2 = wrapi(i + 2, Nx);
        return (f[idx(im2, j)] - 8.0 * f[idx(im1, j)] + 8.0 * f[idx(ip1, j)] - f[idx(ip2, j)]) /
               (12.0 * grid.dx);
    };
    // The map is periodic in x but not in v (the drift-kick chain shifts x
    // by multiples of tau*v, which is no period of the field), so the
    // v-derivative switches to one-sided 4th-order stencils at the edges.
    auto d_dv = [&](std::span<const double> f, int i, int j) {
        const double inv = 1.0 / (12.0 * grid.dv);
        if (j >= 2 && j <= Nv - 3)
            return (f[idx(i, j - 2)] - 8.0 * f[idx(i, j - 1)] + 8.0 * f[idx(i, j + 1)] -
                    f[idx(i, j + 2)]) * inv;
        if (j == 0)
            return (-25.0 * f[idx(i, 0)] + 48.0 * f[idx(i, 1)] - 36.0 * f[idx(i, 2)] +
                    16.0 * f[idx(i, 3)] - 3.0 * f[idx(i, 4)]) * inv;
        if (j == 1)
            return (-3.0 * f[idx(i, 0)] - 10.0 * f[idx(i, 1)] + 18.0 * f[idx(i, 2)] -
                    6.0 * f[idx(i, 3)] + f[idx(i, 4)]) * inv;
        if (j == Nv - 2)
            return (-f[idx(i, Nv - 5)] + 6.0 * f[idx(i, Nv - 4)] - 18.0 * f[idx(i, Nv - 3)] +
                    10.0 * f[idx(i, Nv - 2)] + 3.0 * f[idx(i, Nv - 1)]) * inv;
        return (3.0 * f[idx(i, Nv - 5)] - 16.0 * f[idx(i, Nv - 4)] + 36.0 * f[idx(i, Nv - 3)] -
                48.0 * f[idx(i, Nv - 2)] + 25.0 * f[idx(i, Nv - 1)]) * inv;
    };

    IncompressibilityError out;
    out.field.resize(grid.size());
    for (int i = 0; i < Nx; ++i) {
        for (int j = 0; j < Nv; ++j) {
            const double j00 = 1.0 + d_dx(resid_x, i, j);
            const double j01 = -drift_dt + d_dv(resid_x, i, j);
            const double j10 = d_dx(resid_v, i, j);
            const double j11 = 1.0 + d_dv(resid_v, i, j);
            const double err = std::abs(j00 * j11 - j01 * j10 - 1.0);
            out.field[idx(i, j)] = err;
            if (err > out.max) out.max = err;
        }
    }
    return out;
}

IncompressibilityError incompressibility_error(const SubMap& map) {
    return incompressibility_error(map.grid(), map.delta_x(), map.delta_v(), map.drift_dt());
}

IncompressibilityError incompressibility_error(const MapStack& stack,
                                               const PhaseGrid& eval_grid) {
    QueryBatch batch;
    batch.x.resize(eval_grid.size());
    batch.v.resize(eval_grid.size());
    for (int i = 0; i < eval_grid.Nx; ++i)
        for (int j = 0; j < eval_grid.Nv; ++j) {
            batch.x[std::size_t(i) * eval_grid.Nv + j] = eval_grid.x(i);
            batch.v[std::size_t(i) * eval_grid.Nv + j] = eval_grid.v(j);
        }
    stack.compose(batch);
    double total_drift = 0.0;
    for (std::size_t m = 0; m < stack.size(); ++m) total_drift += stack.map(m).drift_dt();
    // Deviation from the accumulated drift map; for drift-free stacks this is
    // the plain deviation from identity.
    std::vector<double> rx(eval_grid.size()), rv(eval_grid.size());
    for (int i = 0; i < eval_grid.Nx; ++i)
        for (int j = 0; j < eval_grid.Nv; ++j) {
            const std::size_t q = std::size_t(i) * eval_grid.Nv + j;
            rx[q] = batch.x[q] - (eval_grid.x(i) - total_drift * eval_grid.v(j));
            rv[q] = batch.v[q] - eval_grid.v(j);
        }
    return incompressibility_error(eval_grid, rx, rv, total_drift);
}

bool remap_needed(const RemapPolicy& policy, int N, double segment_incomp_max) {
    switch (policy.kind) {
        case RemapPolicy::Kind::fixed:
            return policy.N_remap > 0 && N % policy.N_remap == 0;
        case RemapPolicy::Kind::adaptive:
            return segment_incomp_max > policy.delta_eps || policy.delta_eps <= 0.0;
        case RemapPolicy::Kind::never:
            return false;
    }
    return false;
}

} // namespace vp
