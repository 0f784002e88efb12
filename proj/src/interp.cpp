#include "vp/interp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "vp/util.hpp"

namespace vp {
namespace detail {

int stencil_weights(Scheme scheme, int degree, double t, double* w) {
    switch (scheme) {
        case Scheme::linear:
            w[0] = 1.0 - t;
            w[1] = t;
            return 0;
        case Scheme::cubic_spline: {
            const double t2 = t * t, t3 = t2 * t;
            w[0] = (1.0 - 3.0 * t + 3.0 * t2 - t3) / 6.0;
            w[1] = (4.0 - 6.0 * t2 + 3.0 * t3) / 6.0;
            w[2] = (1.0 + 3.0 * t + 3.0 * t2 - 3.0 * t3) / 6.0;
            w[3] = t3 / 6.0;
            return -1;
        }
        case Scheme::lagrange:
            if (degree == 3) {
                const double a = t + 1.0, b = t - 1.0, c = t - 2.0;
                w[0] = -t * b * c / 6.0;
                w[1] = a * b * c / 2.0;
                w[2] = -a * t * c / 2.0;
                w[3] = a * t * b / 6.0;
                return -1;
            } else {
                const int m = degree;
                int off = (m % 2 == 1) ? -((m - 1) / 2) : -(m / 2) + (t > 0.5 ? 1 : 0);
                for (int j = 0; j <= m; ++j) {
                    const double tj = off + j;
                    double prod = 1.0;
                    for (int l = 0; l <= m; ++l) {
                        if (l == j) continue;
                        const double tl = off + l;
                        prod *= (t - tl) / (tj - tl);
                    }
                    w[j] = prod;
                }
                return off;
            }
    }
    return 0;
}

SplineSolver::SplineSolver(int n) : n_(n), cp_(n), z_(n) {
    if (n < 4) throw std::invalid_argument("SplineSolver: need n >= 4");
    const double a = 1.0 / 6.0, b = 4.0 / 6.0, c = 1.0 / 6.0;
    const double gamma = -b;
    // Modified (acyclic) matrix A1: diag b except b-gamma at 0 and
    // b - a*c/gamma at n-1. Store the forward-elimination coefficients.
    std::vector<double> im(n);
    double d0 = b - gamma;
    im[0] = 1.0 / d0;
    cp_[0] = c * im[0];
    for (int i = 1; i < n_; ++i) {
        double di = (i == n_ - 1) ? b - a * c / gamma : b;
        double m = di - a * cp_[i - 1];
        im[i] = 1.0 / m;
        cp_[i] = c * im[i];
    }
    im_ = std::move(im);
    // z = A1^{-1} u with u = (gamma, 0, ..., 0, a)^T
    std::vector<double> u(n_, 0.0);
    u[0] = gamma;
    u[n_ - 1] = a;
    thomas(u, z_);
    const double vfrac = c / gamma; // v = (1, 0, ..., 0, c/gamma)
    denom_ = 1.0 + z_[0] + vfrac * z_[n_ - 1];
}

void SplineSolver::thomas(std::span<const double> rhs, std::span<double> out) const {
    const double a = 1.0 / 6.0;
    out[0] = rhs[0] * im_[0];
    for (int i = 1; i < n_; ++i) out[i] = (rhs[i] - a * out[i - 1]) * im_[i];
    for (int i = n_ - 2; i >= 0; --i) out[i] -= cp_[i] * out[i + 1];
}

void SplineSolver::solve(std::span<const double> rhs, std::span<double> out) const {
    thomas(rhs, out);
    const double vfrac = (1.0 / 6.0) / (-4.0 / 6.0);
    const double fact = (out[0] + vfrac * out[n_ - 1]) / denom_;
    for (int i = 0; i < n_; ++i) out[i] -= fact * z_[i];
}

} // namespace detail

namespace {

void check_finite(std::span<const double> values, const char* who) {
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite input value");
}

} // namespace

Interpolant1D Interpolant1D::build(std::span<const double> values, const Axis& axis,
                                   Scheme scheme, int degree) {
    if (values.size() != std::size_t(axis.N))
        throw std::invalid_argument("Interpolant1D: value count must equal N");
    const int ns = detail::stencil_size(scheme, degree);
    if (axis.N < ns)
        throw std::invalid_argument("Interpolant1D: N < stencil size");
    check_finite(values, "Interpolant1D");

    Interpolant1D itp(axis, scheme, degree);
    const int N = axis.N;
    const int pad = ns + 1;
    itp.pad_ = pad;

    std::vector<double> coeff(values.begin(), values.end());
    if (scheme == Scheme::cubic_spline) {
        detail::SplineSolver solver(N);
        std::vector<double> c(N);
        solver.solve(coeff, c);
        coeff = std::move(c);
    }
    itp.coeff_.resize(N + 2 * pad);
    for (int i = -pad; i < N + pad; ++i) {
        int src = ((i % N) + N) % N;
        itp.coeff_[i + pad] = coeff[src];
    }
    return itp;
}

double Interpolant1D::eval(double x) const {
    const int N = axis_.N;
    double u = wrap(x - axis_.x0, axis_.L) / axis_.h;
    int i = int(u);
    if (i >= N) { i = N - 1; }
    double t = u - i;
    double w[12];
    const int off = detail::stencil_weights(scheme_, degree_, t, w);
    const int ns = detail::stencil_size(scheme_, degree_);
    const double* p = coeff_.data() + pad_ + i + off;
    double acc = 0.0;
    for (int j = 0; j < ns; ++j) acc += w[j] * p[j];
    return acc;
}

Interpolant2D Interpolant2D::build(std::span<const double> values, int ncomp,
                                   const Axis& ax, const Axis& av, Scheme scheme,
                                   int degree) {
    const std::size_t plane = std::size_t(ax.N) * av.N;
    if (values.size() != plane * ncomp)
        throw std::invalid_argument("Interpolant2D: value count must equal ncomp*Nx*Nv");
    const int ns = detail::stencil_size(scheme, degree);
    if (ax.N < ns || av.N < ns)
        throw std::invalid_argument("Interpolant2D: grid smaller than stencil");
    check_finite(values, "Interpolant2D");

    Interpolant2D itp(ax, av, scheme, degree, ncomp);
    const int pad = ns + 1;
    itp.pad_ = pad;
    itp.stride_ = av.N + 2 * pad;

    detail::SplineSolver* sx = nullptr;
    detail::SplineSolver* sv = nullptr;
    std::unique_ptr<detail::SplineSolver> sx_own, sv_own;
    if (scheme == Scheme::cubic_spline) {
        sx_own = std::make_unique<detail::SplineSolver>(ax.N);
        sv_own = std::make_unique<detail::SplineSolver>(av.N);
        sx = sx_own.get();
        sv = sv_own.get();
    }

    itp.planes_.resize(ncomp);
    std::vector<double> coeff(plane);
    std::vector<double> line_in(std::max(ax.N, av.N)), line_out(std::max(ax.N, av.N));
    for (int c = 0; c < ncomp; ++c) {
        std::copy_n(values.data() + c * plane, plane, coeff.begin());
        if (scheme == Scheme::cubic_spline) {
            // Row solves along v, then column solves along x.
            for (int i = 0; i < ax.N; ++i)
                sv->solve({coeff.data() + std::size_t(i) * av.N, std::size_t(av.N)},
                          {coeff.data() + std::size_t(i) * av.N, std::size_t(av.N)});
            for (int j = 0; j < av.N; ++j) {
                for (int i = 0; i < ax.N; ++i) line_in[i] = coeff[std::size_t(i) * av.N + j];
                sx->solve({line_in.data(), std::size_t(ax.N)}, {line_out.data(), std::size_t(ax.N)});
                for (int i = 0; i < ax.N; ++i) coeff[std::size_t(i) * av.N + j] = line_out[i];
            }
        }
        auto& padded = itp.planes_[c];
        padded.resize(std::size_t(ax.N + 2 * pad) * itp.stride_);
        for (int i = -pad; i < ax.N + pad; ++i) {
            const int si = ((i % ax.N) + ax.N) % ax.N;
            for (int j = -pad; j < av.N + pad; ++j) {
                const int sj = ((j % av.N) + av.N) % av.N;
                padded[std::size_t(i + pad) * itp.stride_ + (j + pad)] =
                    coeff[std::size_t(si) * av.N + sj];
            }
        }
    }
    return itp;
}

void Interpolant2D::eval(double x, double v, double* out) const {
    double ux = wrap(x - ax_.x0, ax_.L) / ax_.h;
    double uv = wrap(v - av_.x0, av_.L) / av_.h;
    int ix = int(ux);
    int iv = int(uv);
    if (ix >= ax_.N) ix = ax_.N - 1;
    if (iv >= av_.N) iv = av_.N - 1;
    const double tx = ux - ix;
    const double tv = uv - iv;
    double wx[12], wv[12];
    const int offx = detail::stencil_weights(scheme_, degree_, tx, wx);
    const int offv = detail::stencil_weights(scheme_, degree_, tv, wv);
    const int ns = detail::stencil_size(scheme_, degree_);
    const std::size_t base = std::size_t(ix + offx + pad_) * stride_ + (iv + offv + pad_);
    for (int c = 0; c < ncomp_; ++c) {
        const double* plane = planes_[c].data() + base;
        double acc = 0.0;
        for (int a = 0; a < ns; ++a) {
            const double* row = plane + std::size_t(a) * stride_;
            double racc = 0.0;
            for (int b = 0; b < ns; ++b) racc += wv[b] * row[b];
            acc += wx[a] * racc;
        }
        out[c] = acc;
    }
}

double Interpolant2D::eval1(double x, double v) const {
    double out;
    eval(x, v, &out);
    return out;
}

void Interpolant2D::eval_batch(std::span<const double> xs, std::span<const double> vs,
                               std::span<double* const> out) const {
    if (xs.size() != vs.size())
        throw std::invalid_argument("Interpolant2D: query arrays must have equal length");
    double tmp[8];
    for (std::size_t q = 0; q < xs.size(); ++q) {
        eval(xs[q], vs[q], tmp);
        for (int c = 0; c < ncomp_; ++c) out[c][q] = tmp[c];
    }
}

} // namespace vp
