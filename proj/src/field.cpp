#include "vp/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vp/util.hpp"

namespace vp {

DensityField charge_density(std::span<const double> f_samples, const PhaseGrid& grid) {
    if (f_samples.size() != grid.size())
        throw std::invalid_argument("charge_density: sample count must equal Nx*Nv");
    for (double v : f_samples)
        if (!std::isfinite(v)) throw std::invalid_argument("charge_density: non-finite f sample");

    DensityField out;
    out.rho.resize(grid.Nx);
    for (int i = 0; i < grid.Nx; ++i)
        out.rho[i] = 1.0 - quad_v(f_samples.subspan(std::size_t(i) * grid.Nv, grid.Nv), grid);
    const double mean = pairwise_sum(out.rho) / grid.Nx;
    for (double& r : out.rho) r -= mean;
    return out;
}

struct PoissonSolver::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* real = nullptr;
    fftw_complex* spec = nullptr;

    explicit Impl(int N) {
        real = fftw_alloc_real(N);
        spec = fftw_alloc_complex(N / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(N, real, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(N, spec, real, FFTW_ESTIMATE);
    }
    ~Impl() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(spec);
    }
};

PoissonSolver::PoissonSolver(int N, double Lx) : N_(N), Lx_(Lx) {
    if (N < 4) throw std::invalid_argument("PoissonSolver: N >= 4 required");
    impl_ = std::make_unique<Impl>(N);
}

PoissonSolver::~PoissonSolver() = default;

std::vector<double> PoissonSolver::solve(std::span<const double> rho) const {
    if (rho.size() != std::size_t(N_))
        throw std::invalid_argument("PoissonSolver: rho length mismatch");
    for (double v : rho)
        if (!std::isfinite(v)) throw std::invalid_argument("PoissonSolver: non-finite rho");

    for (int i = 0; i < N_; ++i) impl_->real[i] = rho[i];
    fftw_execute(impl_->fwd);
    // E_hat(kappa) = -i rho_hat(kappa) / kappa, kappa = 2 pi c / Lx; k=0 removed.
    impl_->spec[0][0] = 0.0;
    impl_->spec[0][1] = 0.0;
    const double k0 = 2.0 * std::numbers::pi / Lx_;
    for (int c = 1; c <= N_ / 2; ++c) {
        const double kappa = k0 * c;
        const double re = impl_->spec[c][0];
        const double im = impl_->spec[c][1];
        impl_->spec[c][0] = im / kappa;  // -i*(re+i*im)/kappa = (im - i*re)/kappa
        impl_->spec[c][1] = -re / kappa;
    }
    if (N_ % 2 == 0) {
        // The odd derivative of the unpaired Nyquist cosine mode is not
        // representable on the grid; drop it.
        impl_->spec[N_ / 2][0] = 0.0;
        impl_->spec[N_ / 2][1] = 0.0;
    }
    fftw_execute(impl_->bwd);
    std::vector<double> E(N_);
    for (int i = 0; i < N_; ++i) E[i] = impl_->real[i] / N_;
    return E;
}

std::vector<double> PoissonSolver::derivative(std::span<const double> E) const {
    if (E.size() != std::size_t(N_))
        throw std::invalid_argument("PoissonSolver: field length mismatch");
    for (int i = 0; i < N_; ++i) impl_->real[i] = E[i];
    fftw_execute(impl_->fwd);
    const double k0 = 2.0 * std::numbers::pi / Lx_;
    for (int c = 0; c <= N_ / 2; ++c) {
        const double kappa = k0 * c;
        const double re = impl_->spec[c][0];
        const double im = impl_->spec[c][1];
        impl_->spec[c][0] = -kappa * im;
        impl_->spec[c][1] = kappa * re;
    }
    if (N_ % 2 == 0) impl_->spec[N_ / 2][1] = 0.0;
    fftw_execute(impl_->bwd);
    std::vector<double> d(N_);
    for (int i = 0; i < N_; ++i) d[i] = impl_->real[i] / N_;
    return d;
}

std::vector<double> poisson_solve(std::span<const double> rho, double Lx) {
    PoissonSolver solver(int(rho.size()), Lx);
    return solver.solve(rho);
}

FieldHistory::FieldHistory(double tau, Axis axis, Scheme scheme, int degree)
    : tau_(tau), axis_(axis), scheme_(scheme), degree_(degree) {
    if (!(tau > 0.0)) throw std::invalid_argument("FieldHistory: tau must be positive");
}

void FieldHistory::append(std::vector<double> E) {
    if (E.size() != std::size_t(axis_.N))
        throw std::invalid_argument("FieldHistory: field length mismatch");
    const double mean = pairwise_sum(E) / axis_.N;
    if (std::abs(mean) > 1e-12)
        throw std::invalid_argument("FieldHistory: stored fields must have zero spatial mean");
    Interpolant1D itp = Interpolant1D::build(E, axis_, scheme_, degree_);
    entries_.push_back(Entry{std::move(E), std::move(itp)});
}

void FieldHistory::reset(int new_base) {
    entries_.clear();
    base_ = new_base;
}

const FieldHistory::Entry& FieldHistory::at(int n) const {
    const int idx = n - base_;
    if (idx < 0 || idx >= int(entries_.size()))
        throw std::out_of_range("FieldHistory: field index out of stored range");
    return entries_[idx];
}

double FieldHistory::eval(int n, double x) const { return at(n).itp.eval(x); }

const Interpolant1D& FieldHistory::interp(int n) const { return at(n).itp; }

const std::vector<double>& FieldHistory::field(int n) const { return at(n).values; }

} // namespace vp
