#pragma once

#include <span>
#include <vector>

namespace vp {

/// Uniform periodic phase-space grid over (x, v).
///
/// Nodes are x_i = i*dx for i in [0, Nx) and v_j = j*dv - Lv/2 for j in
/// [0, Nv); the right endpoint is excluded (periodic convention). The same
/// type serves both the sample grid and the coarse map grid.
struct PhaseGrid {
    double Lx;
    double Lv;
    int Nx;
    int Nv;
    double dx;
    double dv;

    PhaseGrid(double Lx_, double Lv_, int Nx_, int Nv_);

    double x(int i) const { return i * dx; }
    double v(int j) const { return j * dv - 0.5 * Lv; }

    std::size_t size() const { return std::size_t(Nx) * Nv; }
};

enum class Scenario { landau, two_stream, custom };

/// Analytic initial condition for the benchmark scenarios.
///
/// landau:     (1 + eps cos(kx)) exp(-v^2/2) / sqrt(2 pi)
/// two_stream: (1 + eps cos(kx)) (exp(-(v-v0)^2/2) + exp(-(v+v0)^2/2)) / (2 sqrt(2 pi))
/// custom:     the two_stream form with user-chosen (eps, k, v0); v0 = 0
///             degenerates to the landau form.
struct InitialCondition {
    Scenario kind = Scenario::landau;
    double eps = 0.01;
    double k = 0.5;
    double v0 = 0.0;

    static InitialCondition landau(double eps = 0.01, double k = 0.5);
    static InitialCondition two_stream(double eps = 0.05, double k = 0.2, double v0 = 3.0);

    double eval_f0(double x, double v) const;

    /// Spatial period implied by the perturbation wavenumber.
    double box_length() const;

    /// Supremum of f0 over phase space (analytic for landau, Newton-refined
    /// for the double-beam profile).
    double max_f0() const;
};

/// Rectangle-rule integral over v at fixed x: dv * sum(samples).
double quad_v(std::span<const double> samples, const PhaseGrid& grid);

/// Rectangle-rule integral over the full phase space: dx*dv * sum(samples).
/// samples is Nx x Nv row-major (x index major).
double quad_xv(std::span<const double> samples, const PhaseGrid& grid);

} // namespace vp
