#pragma once

#include <memory>
#include <span>
#include <vector>

#include "vp/grid.hpp"
#include "vp/interp.hpp"

namespace vp {

/// Charge density with the convention rho = 1 - int f dv, mean-subtracted
/// so the periodic Poisson problem is solvable.
struct DensityField {
    std::vector<double> rho;
};

/// rho_i = 1 - quad_v(f[i,:]), then the spatial mean is removed.
DensityField charge_density(std::span<const double> f_samples, const PhaseGrid& grid);

/// Spectral solver for -phi'' = rho, E = -phi' on the periodic spatial grid.
/// Holds FFTW plans for a fixed transform size.
class PoissonSolver {
  public:
    PoissonSolver(int N, double Lx);
    ~PoissonSolver();
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    std::vector<double> solve(std::span<const double> rho) const;

    /// Spectral derivative dE/dx, used by the diagnostics that verify
    /// d_x E = rho.
    std::vector<double> derivative(std::span<const double> E) const;

    int N() const { return N_; }
    double Lx() const { return Lx_; }

  private:
    struct Impl;
    int N_;
    double Lx_;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around PoissonSolver.
std::vector<double> poisson_solve(std::span<const double> rho, double Lx);

/// Append-only time series of electric fields E^base .. E^last, each paired
/// with a ready 1D interpolant. Index n corresponds to time n*tau relative
/// to the segment origin; entries are immutable once appended.
class FieldHistory {
  public:
    FieldHistory(double tau, Axis axis, Scheme scheme = Scheme::cubic_spline, int degree = 3);

    void append(std::vector<double> E);

    /// Drop all entries and restart indexing at new_base (used at remap).
    void reset(int new_base);

    /// Interpolated E^n(x). Out-of-range n is a hard error.
    double eval(int n, double x) const;

    const Interpolant1D& interp(int n) const;
    const std::vector<double>& field(int n) const;

    double tau() const { return tau_; }
    int base() const { return base_; }
    int size() const { return int(entries_.size()); }
    int last_index() const { return base_ + size() - 1; }
    const Axis& axis() const { return axis_; }

  private:
    struct Entry {
        std::vector<double> values;
        Interpolant1D itp;
    };

    const Entry& at(int n) const;

    double tau_;
    Axis axis_;
    Scheme scheme_;
    int degree_;
    int base_ = 0;
    std::vector<Entry> entries_;
};

} // namespace vp
