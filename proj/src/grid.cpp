#include "vp/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vp/util.hpp"

namespace vp {

PhaseGrid::PhaseGrid(double Lx_, double Lv_, int Nx_, int Nv_)
    : Lx(Lx_), Lv(Lv_), Nx(Nx_), Nv(Nv_), dx(Lx_ / Nx_), dv(Lv_ / Nv_) {
    if (!(Lx > 0.0) || !(Lv > 0.0))
        throw std::invalid_argument("PhaseGrid: domain lengths must be positive");
    if (Nx < 4 || Nv < 4)
        throw std::invalid_argument("PhaseGrid: need at least 4 points per direction");
}

InitialCondition InitialCondition::landau(double eps, double k) {
    return InitialCondition{Scenario::landau, eps, k, 0.0};
}

InitialCondition InitialCondition::two_stream(double eps, double k, double v0) {
    return InitialCondition{Scenario::two_stream, eps, k, v0};
}

double InitialCondition::box_length() const {
    return 2.0 * std::numbers::pi / k;
}

double InitialCondition::eval_f0(double x, double v) const {
    constexpr double inv_sqrt_2pi = 0.3989422804014326779;
    const double pert = 1.0 + eps * std::cos(k * x);
    if (kind == Scenario::landau)
        return pert * inv_sqrt_2pi * std::exp(-0.5 * v * v);
    const double a = v - v0;
    const double b = v + v0;
    return pert * 0.5 * inv_sqrt_2pi * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
}

double InitialCondition::max_f0() const {
    constexpr double inv_sqrt_2pi = 0.3989422804014326779;
    if (kind == Scenario::landau || v0 == 0.0)
        return (1.0 + eps) * inv_sqrt_2pi;
    // Locate the maximum of g(v) = exp(-(v-v0)^2/2) + exp(-(v+v0)^2/2).
    // g is even; scan [0, v0+1] coarsely, then refine by Newton on g'.
    auto g = [&](double v) {
        double a = v - v0, b = v + v0;
        return std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b);
    };
    auto gp = [&](double v) {
        double a = v - v0, b = v + v0;
        return -a * std::exp(-0.5 * a * a) - b * std::exp(-0.5 * b * b);
    };
    auto gpp = [&](double v) {
        double a = v - v0, b = v + v0;
        return (a * a - 1.0) * std::exp(-0.5 * a * a) + (b * b - 1.0) * std::exp(-0.5 * b * b);
    };
    double best = 0.0, best_g = g(0.0);
    for (int i = 1; i <= 4000; ++i) {
        double v = (v0 + 1.0) * i / 4000.0;
        double gv = g(v);
        if (gv > best_g) { best_g = gv; best = v; }
    }
    double v = best;
    for (int it = 0; it < 60; ++it) {
        double d2 = gpp(v);
        if (d2 == 0.0) break;
        double step = gp(v) / d2;
        v -= step;
        if (std::abs(step) < 1e-16) break;
    }
    double gv = std::max(g(v), best_g);
    return (1.0 + eps) * 0.5 * inv_sqrt_2pi * gv;
}

double quad_v(std::span<const double> samples, const PhaseGrid& grid) {
    if (samples.size() != std::size_t(grid.Nv))
        throw std::invalid_argument("quad_v: sample count must equal Nv");
    return grid.dv * pairwise_sum(samples);
}

double quad_xv(std::span<const double> samples, const PhaseGrid& grid) {
    if (samples.size() != grid.size())
        throw std::invalid_argument("quad_xv: sample count must equal Nx*Nv");
    return grid.dx * grid.dv * pairwise_sum(samples);
}

} // namespace vp
