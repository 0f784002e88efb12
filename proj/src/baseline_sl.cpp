#include "vp/baseline_sl.hpp"

#include <ctime>
#include <cmath>
#include <stdexcept>

namespace vp {

GridDistribution::GridDistribution(PhaseGrid g, std::vector<double> samples, Scheme s,
                                   int deg)
    : grid(g), f(std::move(samples)), scheme(s), degree(deg) {
    if (f.size() != grid.size())
        throw std::invalid_argument("GridDistribution: sample count must equal Nx*Nv");
}

namespace {

/// Trace all nodes with the given kick field and resample f at the feet.
std::vector<double> resample(const GridDistribution& dist, const Interpolant1D& kick,
                             double tau) {
    const PhaseGrid& g = dist.grid;
    Interpolant2D F = Interpolant2D::build(dist.f, 1, Axis(g.Lx, g.Nx),
                                           Axis(g.Lv, g.Nv, -0.5 * g.Lv), dist.scheme,
                                           dist.degree);
    std::vector<double> out(g.size());
    for (int i = 0; i < g.Nx; ++i) {
        const double xi = g.x(i);
        for (int j = 0; j < g.Nv; ++j) {
            const double vj = g.v(j);
            const double xs = xi - tau * vj;
            const double vs = vj + tau * kick.eval(xs);
            out[std::size_t(i) * g.Nv + j] = F.eval1(xs, vs);
        }
    }
    return out;
}

} // namespace

std::vector<double> sl_step(GridDistribution& dist, const std::vector<double>& E,
                            double tau) {
    const PhaseGrid& g = dist.grid;
    if (E.size() != std::size_t(g.Nx))
        throw std::invalid_argument("sl_step: field length must equal Nx");
    const Axis ax(g.Lx, g.Nx);

    // Predictor: current field in the kick.
    Interpolant1D Ei = Interpolant1D::build(E, ax, dist.scheme, dist.degree);
    std::vector<double> f_pred = resample(dist, Ei, tau);
    std::vector<double> E_pred = poisson_solve(charge_density(f_pred, g).rho, g.Lx);

    // Corrector: time-averaged field in the kick.
    std::vector<double> E_mid(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) E_mid[i] = 0.5 * (E[i] + E_pred[i]);
    Interpolant1D Emi = Interpolant1D::build(E_mid, ax, dist.scheme, dist.degree);
    dist.f = resample(dist, Emi, tau);

    std::vector<double> E_new = poisson_solve(charge_density(dist.f, g).rho, g.Lx);
    for (double e : E_new)
        if (!std::isfinite(e)) throw std::runtime_error("sl_step: non-finite field");
    return E_new;
}

GridDistribution sl_init(const InitialCondition& ic, const PhaseGrid& grid,
                         Scheme scheme, int degree, std::vector<double>& E0) {
    std::vector<double> f(grid.size());
    for (int i = 0; i < grid.Nx; ++i)
        for (int j = 0; j < grid.Nv; ++j)
            f[std::size_t(i) * grid.Nv + j] = ic.eval_f0(grid.x(i), grid.v(j));
    GridDistribution dist(grid, std::move(f), scheme, degree);
    E0 = poisson_solve(charge_density(dist.f, grid).rho, grid.Lx);
    return dist;
}

SlRunResult sl_run(GridDistribution& dist, std::vector<double>& E, int n_steps,
                   double tau) {
    if (n_steps < 0) throw std::invalid_argument("sl_run: negative step count");
    if (tau <= 0.0) throw std::invalid_argument("sl_run: tau must be positive");

    SlRunResult res;
    res.records.reserve(n_steps + 1);
    DiagnosticsRecord r0 = measure(dist.f, E, dist.grid);
    r0.t = 0.0;
    res.records.push_back(r0);

    for (int s = 1; s <= n_steps; ++s) {
        const std::clock_t t0 = std::clock();
        try {
            E = sl_step(dist, E, tau);
        } catch (const std::exception& e) {
            throw std::runtime_error("sl_run: step " + std::to_string(s) + ": " + e.what());
        }
        const double secs = double(std::clock() - t0) / CLOCKS_PER_SEC;
        res.perf.record(secs);
        DiagnosticsRecord r = measure(dist.f, E, dist.grid);
        r.t = s * tau;
        r.cpu_seconds = secs;
        res.records.push_back(r);
    }
    return res;
}

} // namespace vp
